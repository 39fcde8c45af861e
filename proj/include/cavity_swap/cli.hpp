#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cavity_swap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitIoFailure = 3;

/// Entry point behind the `cavity_swap` executable. `args` excludes the
/// program name. Subcommands: run, sweep, verify, timing.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cavity_swap::cli
