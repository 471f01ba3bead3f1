#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace draper::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "4..7,10" -> {4, 5, 6, 7, 10}.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace draper::cli
