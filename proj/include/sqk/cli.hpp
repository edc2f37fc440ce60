#ifndef SQK_CLI_HPP
#define SQK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sqk {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // not provable, not a tautology, countermodel found
inline constexpr int kExitUsage = 2;     // bad flags or unparsable input

// Runs one command line. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqk

#endif  // SQK_CLI_HPP
