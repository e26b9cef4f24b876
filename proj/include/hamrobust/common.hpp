#pragma once

#include <cstdint>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hamrobust {

// Caller passed something malformed (bad vertex id, unreadable file, ...).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition of an operation does not hold.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A deterministic construction could not be realized (infeasible sizes etc).
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Structured failure of a constructive step.  Lemma-level orchestrations
// return these instead of throwing: at desk scale the asymptotic hypotheses
// do not guarantee success and a named failing step is a first-class result.
struct Failure {
  std::string step;    // e.g. "lemma_rounding", "search_budget"
  std::string reason;
};

template <class T>
class Expected {
 public:
  Expected(T value) : data_(std::move(value)) {}
  Expected(Failure f) : data_(std::move(f)) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  const T& value() const { return std::get<T>(data_); }
  T& value() { return std::get<T>(data_); }
  const Failure& failure() const { return std::get<Failure>(data_); }

 private:
  std::variant<T, Failure> data_;
};

inline Failure fail(std::string step, std::string reason) {
  return Failure{std::move(step), std::move(reason)};
}

// ---------------------------------------------------------------------------
// Rounding helpers.  Thresholds in the checkers are rational numbers computed
// from floating point parameters; we snap to the nearest integer when within
// 1e-9 so that values like 0.2 * 20 == 4.0 do not round up spuriously.

inline long long snapped_ceil(double x) {
  double r = std::nearbyint(x);
  if (std::fabs(x - r) < 1e-9) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(x));
}

inline long long snapped_floor(double x) {
  double r = std::nearbyint(x);
  if (std::fabs(x - r) < 1e-9) return static_cast<long long>(r);
  return static_cast<long long>(std::floor(x));
}

// ceil_eps(x) = ceil(x - eps).
inline long long ceil_eps(double x, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("ceil_eps: eps must lie in (0,1)");
  return snapped_ceil(x - eps);
}

// Exact ceil(p/q) for q > 0, any sign of p.
inline long long ceil_div(long long p, long long q) {
  if (q <= 0) throw InputError("ceil_div: q must be positive");
  long long d = p / q;
  if (p % q != 0 && p > 0) ++d;
  return d;
}

inline long long floor_div(long long p, long long q) {
  if (q <= 0) throw InputError("floor_div: q must be positive");
  long long d = p / q;
  if (p % q != 0 && p < 0) --d;
  return d;
}

// ---------------------------------------------------------------------------
// Small exact rational type.  The balancing lemmas manipulate quantities of
// the form e(X)/Delta with Delta = D/2; doubles would make the case tables
// flaky, so those code paths use Rat end to end.

struct Rat {
  long long num = 0;
  long long den = 1;  // > 0

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  static long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long long t = a % b; a = b; b = t; }
    return a;
  }

  void normalize() {
    if (den == 0) throw InputError("Rat: zero denominator");
    if (den < 0) { den = -den; num = -num; }
    long long g = gcd_ll(num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
  Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
  Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) throw InputError("Rat: division by zero");
    return Rat(num * o.den, den * o.num);
  }
  Rat operator-() const { return Rat(-num, den); }

  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rat& o) const { return num * o.den <= o.num * den; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  bool is_integer() const { return den == 1; }
  long long floor() const { return floor_div(num, den); }
  long long ceil() const { return ceil_div(num, den); }
  Rat abs() const { return num < 0 ? Rat(-num, den) : *this; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// ceil_eps on exact rationals: ceil(x - eps).
inline long long ceil_eps(const Rat& x, const Rat& eps) {
  if (!(eps > Rat(0) && eps < Rat(1))) throw InputError("ceil_eps: eps must lie in (0,1)");
  return (x - eps).ceil();
}

// Largest even integer <= k, clamped at 0 (used for the even part of a
// character; the inputs there are nonnegative counts).
inline long long largest_even_at_most(long long k) {
  if (k < 0) return 0;
  return (k % 2 == 0) ? k : k - 1;
}

// ---------------------------------------------------------------------------
// Deterministic RNG utilities.  std::uniform_int_distribution is not
// portable across standard libraries, so tests and generators draw through
// these helpers only.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // xorshift* variant; fixed algorithm keeps byte-identical outputs.
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  // Uniform-ish value in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InputError("Rng::below(0)");
    return next() % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace hamrobust
