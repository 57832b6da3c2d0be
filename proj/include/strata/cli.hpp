#ifndef STRATA_CLI_HPP
#define STRATA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace strata {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on a domain error, 2 on a
/// usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strata

#endif  // STRATA_CLI_HPP
