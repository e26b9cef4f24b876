#pragma once
namespace hamrobust::cli { inline int run_main(int, char**) { return 2; } }
