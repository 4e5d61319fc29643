#pragma once

#include <string>
#include <vector>

namespace driveqa::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Entry point behind the driveqa binary. Exit codes: 0 success, 1 usage
/// error, 2 runtime failure.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace driveqa::cli
