#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mp2s/model.hpp"

namespace mp2s::cli {

// Exit codes.
inline constexpr int kOk = 0;           // accepted / verified / no witness
inline constexpr int kNegative = 1;     // rejected / witness found / mismatch
inline constexpr int kUsage = 2;        // bad arguments or input files
inline constexpr int kRuntime = 3;      // Stall and other runtime failures

// builtin:trivial:<n>, builtin:sqrt:<n>, builtin:crippled:<n>:<mask>, file:<path>
Automaton load_automaton(std::string_view spec);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mp2s::cli
