#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ruenergy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitIoError = 2;

/// Runs one `ru-energy` command. `args` excludes the program name. Returns the process
/// exit code: 0 success, 1 domain or validation error, 2 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ruenergy::cli
