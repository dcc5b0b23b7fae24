#ifndef GAUSSENT_CLI_HPP
#define GAUSSENT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gaussent::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_io = 2;

/// Parses and dispatches one command line (args excludes the program name).
/// Results go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussent::cli

#endif  // GAUSSENT_CLI_HPP
