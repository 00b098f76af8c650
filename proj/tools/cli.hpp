#pragma once

#include <iosfwd>

namespace macroflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point behind the `macroflow` binary. Returns 0 on success, 1 on
/// invalid configuration or arguments, 2 on runtime failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace macroflow::cli
