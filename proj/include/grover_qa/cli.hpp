#pragma once

#include <ostream>

namespace grover_qa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point behind the grover-qa executable. Reports go to `out` unless
/// redirected with --out / --json; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grover_qa::cli
