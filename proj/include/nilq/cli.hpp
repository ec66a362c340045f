#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nilq::cli {

/// Exit codes: 0 verified/valid, 1 refuted/invalid/not found, 2 usage or parse error.
inline constexpr int kOk = 0;
inline constexpr int kRefuted = 1;
inline constexpr int kUsage = 2;

/// Default work cap for oracle searches.
inline constexpr unsigned long long kDefaultBudget = 2'000'000'000ULL;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilq::cli
