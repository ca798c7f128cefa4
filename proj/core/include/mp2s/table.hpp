#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mp2s/model.hpp"

namespace mp2s {

// Explicit transition table for toy machines over D_n. Row layout:
// row = state * base^k + sum_h code(sym_h) * base^h with base = 2n+1 and
// code(end) = 0, code(a_i) = 2i-1, code(b_i) = 2i.
struct TransitionTable {
  std::uint32_t n = 1;
  AutomatonParams params;
  std::vector<std::string> states;
  std::uint64_t start = 0;
  std::vector<bool> accepting;
  std::vector<std::optional<Transition>> rows;

  std::uint64_t symbol_base() const noexcept { return 2ull * n + 1; }
  std::uint64_t views_per_state() const;
  std::uint64_t row_count() const { return states.size() * views_per_state(); }
};

constexpr std::uint64_t kMaxTableRows = std::uint64_t{1} << 26;

// Allocates an empty table (all rows undefined). Throws InvalidParams when
// the table would exceed kMaxTableRows.
TransitionTable make_empty_table(std::uint32_t n, std::uint64_t m, int kf,
                                 int kb, std::vector<std::string> states);

std::uint64_t symbol_code(const Symbol& sym, std::uint32_t n);
Symbol symbol_from_code(std::uint64_t code);

// Throws TransitionUndefined when an item lies outside D_n.
std::uint64_t row_index(const TransitionTable& table, State state,
                        const SymbolView& view);

// Decodes the symbol view of a row; inverse of row_index.
SymbolView row_view(const TransitionTable& table, std::uint64_t row);

// Throws TransitionUndefined when any row is missing.
Automaton make_table_automaton(TransitionTable table);

// Line-oriented text format:
//   mp2s n=<n> m=<m> kf=<kf> kb=<kb>
//   state <id> [start] [accept]
//   trans <state> <sym0>,...,<symk-1> -> <state> <A|S>{k}
// Blank lines and '#' comments are ignored.
TransitionTable read_table(std::istream& in);
TransitionTable read_table_file(const std::string& path);
void write_table(std::ostream& out, const TransitionTable& table);

}  // namespace mp2s
