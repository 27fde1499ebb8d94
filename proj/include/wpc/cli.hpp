#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wpc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

/// Runs the command line `args` (args[0] is the program name).
/// Returns 0 on success, 2 on validation/domain errors, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wpc::cli
