// Command-line front end. Verdicts go to `out`, diagnostics to `err`.
//
// Exit codes: 0/1 for a positive/negative verdict (true/false, found/none,
// bisimilar/not), 2 for usage or input errors, 3 when sat runs out of time.

#ifndef MEMLOG_CLI_HPP
#define MEMLOG_CLI_HPP

#include <iosfwd>

namespace memlog::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitBudget = 3;

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace memlog::cli

#endif  // MEMLOG_CLI_HPP
