#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace firmml::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNoCommunity = 1;
inline constexpr int kInputError = 2;
inline constexpr int kIndexError = 3;

// Runs one subcommand. args excludes the program name. Results go to out,
// diagnostics to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace firmml::cli
