#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace symkit::cli {

/// Runs one command line (program name excluded). Output is written only on
/// success. Exit codes: 0 success, 1 computational failure (JSON diagnostic
/// on err), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Name of the environment variable that holds the default output directory.
inline constexpr const char* kOutputDirEnv = "SYMKIT_OUTPUT_DIR";

}  // namespace symkit::cli
