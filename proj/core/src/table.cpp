#include "mp2s/table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "mp2s/errors.hpp"

namespace mp2s {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::uint64_t parse_u64(std::string_view text, const std::string& what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("bad " + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_key(const std::string& token, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw ParseError("expected '" + prefix + "...' but got '" + token + "'");
  }
  return parse_u64(std::string_view(token).substr(prefix.size()),
                   std::string(key));
}

class TableDelta {
 public:
  explicit TableDelta(std::shared_ptr<const TransitionTable> table)
      : table_(std::move(table)) {}

  Transition operator()(State s, const SymbolView& view) const {
    const std::uint64_t row = row_index(*table_, s, view);
    const auto& entry = table_->rows[row];
    if (!entry) {
      throw TransitionUndefined("no transition for state '" +
                                table_->states[s.code] + "'");
    }
    return *entry;
  }

 private:
  std::shared_ptr<const TransitionTable> table_;
};

}  // namespace

std::uint64_t TransitionTable::views_per_state() const {
  std::uint64_t count = 1;
  for (int h = 0; h < params.k(); ++h) count *= symbol_base();
  return count;
}

TransitionTable make_empty_table(std::uint32_t n, std::uint64_t m, int kf,
                                 int kb, std::vector<std::string> states) {
  if (n < 1) throw InvalidSize("table domain needs n >= 1");
  TransitionTable table;
  table.n = n;
  table.params = AutomatonParams{2ull * n, m, kf, kb};
  validate(table.params);
  table.states = std::move(states);
  table.accepting.assign(table.states.size(), false);
  // Overflow-safe size check before allocating.
  std::uint64_t rows = table.states.size();
  for (int h = 0; h < table.params.k(); ++h) {
    rows *= table.symbol_base();
    if (rows > kMaxTableRows) break;
  }
  if (rows > kMaxTableRows) {
    throw InvalidParams("transition table too large: more than " +
                        std::to_string(kMaxTableRows) + " rows");
  }
  table.rows.assign(rows, std::nullopt);
  return table;
}

std::uint64_t symbol_code(const Symbol& sym, std::uint32_t n) {
  if (!sym) return 0;
  if (sym->index < 1 || sym->index > n) {
    throw TransitionUndefined("item " + to_string(*sym) +
                              " is outside the table domain D_" +
                              std::to_string(n));
  }
  return 2ull * sym->index - (sym->kind == ItemKind::a ? 1 : 0);
}

Symbol symbol_from_code(std::uint64_t code) {
  if (code == 0) return std::nullopt;
  const auto index = static_cast<std::uint32_t>((code + 1) / 2);
  return code % 2 == 1 ? item_a(index) : item_b(index);
}

std::uint64_t row_index(const TransitionTable& table, State state,
                        const SymbolView& view) {
  if (state.code >= table.states.size()) {
    throw TransitionUndefined("state code outside the table");
  }
  std::uint64_t offset = 0;
  std::uint64_t weight = 1;
  for (const Symbol& sym : view) {
    offset += symbol_code(sym, table.n) * weight;
    weight *= table.symbol_base();
  }
  return state.code * table.views_per_state() + offset;
}

SymbolView row_view(const TransitionTable& table, std::uint64_t row) {
  std::uint64_t offset = row % table.views_per_state();
  SymbolView view;
  view.reserve(static_cast<std::size_t>(table.params.k()));
  for (int h = 0; h < table.params.k(); ++h) {
    view.push_back(symbol_from_code(offset % table.symbol_base()));
    offset /= table.symbol_base();
  }
  return view;
}

Automaton make_table_automaton(TransitionTable table) {
  for (std::uint64_t row = 0; row < table.rows.size(); ++row) {
    if (!table.rows[row]) {
      const std::uint64_t state = row / table.views_per_state();
      std::string syms;
      for (const Symbol& sym : row_view(table, row)) {
        if (!syms.empty()) syms += ',';
        syms += symbol_token(sym);
      }
      throw TransitionUndefined("missing transition: state '" +
                                table.states[state] + "' on (" + syms + ")");
    }
    const Transition& tr = *table.rows[row];
    if (tr.next.code >= table.states.size() ||
        tr.mask.size() != static_cast<std::size_t>(table.params.k())) {
      throw TransitionUndefined("malformed transition row " +
                                std::to_string(row));
    }
  }
  auto shared = std::make_shared<const TransitionTable>(std::move(table));
  auto space = std::make_shared<const IndexedStateSpace>(shared->states);
  std::vector<bool> accepting = shared->accepting;
  std::ostringstream desc;
  desc << "table(n=" << shared->n << ",|Q|=" << shared->states.size()
       << ",kf=" << shared->params.kf << ",kb=" << shared->params.kb << ")";
  return make_automaton(
      shared->params, space, State{shared->start},
      [accepting](State s) {
        return s.code < accepting.size() && accepting[s.code];
      },
      TableDelta(shared), desc.str());
}

TransitionTable read_table(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<TransitionTable> table;
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  int kf = 0;
  int kb = 0;
  std::vector<std::string> names;
  std::optional<std::uint64_t> start;
  std::vector<bool> accept;
  std::unordered_map<std::string, std::uint64_t> by_name;
  bool header_seen = false;

  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + msg);
  };

  auto ensure_table = [&]() -> TransitionTable& {
    if (!table) {
      if (!start) throw fail("no start state declared");
      table = make_empty_table(n, m, kf, kb, names);
      table->start = *start;
      table->accepting = accept;
    }
    return *table;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (!header_seen) {
      if (tokens.size() != 5 || tokens[0] != "mp2s") {
        throw fail("expected header 'mp2s n=<n> m=<m> kf=<kf> kb=<kb>'");
      }
      n = static_cast<std::uint32_t>(parse_key(tokens[1], "n"));
      m = parse_key(tokens[2], "m");
      kf = static_cast<int>(parse_key(tokens[3], "kf"));
      kb = static_cast<int>(parse_key(tokens[4], "kb"));
      if (n < 1) throw fail("n must be at least 1");
      header_seen = true;
      continue;
    }

    if (tokens[0] == "state") {
      if (table) throw fail("state declared after the first transition");
      if (tokens.size() < 2) throw fail("state needs an id");
      const std::string& id = tokens[1];
      if (by_name.count(id)) throw fail("duplicate state '" + id + "'");
      bool is_accept = false;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        if (tokens[i] == "start") {
          if (start) throw fail("second start state '" + id + "'");
          start = names.size();
        } else if (tokens[i] == "accept") {
          is_accept = true;
        } else {
          throw fail("unknown state flag '" + tokens[i] + "'");
        }
      }
      by_name.emplace(id, names.size());
      names.push_back(id);
      accept.push_back(is_accept);
      continue;
    }

    if (tokens[0] == "trans") {
      TransitionTable& t = ensure_table();
      const int k = t.params.k();
      auto arrow = std::find(tokens.begin(), tokens.end(), "->");
      if (arrow == tokens.end()) throw fail("transition without '->'");
      std::vector<std::string> lhs(tokens.begin() + 1, arrow);
      std::vector<std::string> rhs(arrow + 1, tokens.end());
      const std::size_t want_lhs = k == 0 ? 1 : 2;
      const std::size_t want_rhs = k == 0 ? 1 : 2;
      if (lhs.size() != want_lhs || rhs.size() != want_rhs) {
        throw fail("expected 'trans <state> <syms> -> <state> <mask>'");
      }
      auto lookup = [&](const std::string& id) {
        auto it = by_name.find(id);
        if (it == by_name.end()) throw fail("unknown state '" + id + "'");
        return it->second;
      };
      const State from{lookup(lhs[0])};
      SymbolView view;
      if (k > 0) {
        std::istringstream syms(lhs[1]);
        std::string sym;
        while (std::getline(syms, sym, ',')) {
          view.push_back(sym == "end" ? Symbol{} : Symbol{parse_item(sym)});
        }
      }
      if (static_cast<int>(view.size()) != k) {
        throw fail("expected " + std::to_string(k) + " symbols");
      }
      Transition tr;
      tr.next = State{lookup(rhs[0])};
      if (k > 0) {
        const std::string& mask = rhs[1];
        if (static_cast<int>(mask.size()) != k) {
          throw fail("mask must have " + std::to_string(k) + " letters");
        }
        for (char c : mask) {
          if (c == 'A') {
            tr.mask.push_back(Move::advance);
          } else if (c == 'S') {
            tr.mask.push_back(Move::stay);
          } else {
            throw fail("mask letters must be A or S");
          }
        }
      }
      std::uint64_t row = 0;
      try {
        row = row_index(t, from, view);
      } catch (const TransitionUndefined& e) {
        throw fail(e.what());
      }
      if (t.rows[row]) throw fail("duplicate transition");
      t.rows[row] = std::move(tr);
      continue;
    }

    throw fail("unknown directive '" + tokens[0] + "'");
  }
  if (!header_seen) throw ParseError("empty automaton file");
  TransitionTable& t = ensure_table();
  return std::move(t);
}

TransitionTable read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open automaton file '" + path + "'");
  return read_table(in);
}

void write_table(std::ostream& out, const TransitionTable& table) {
  out << "mp2s n=" << table.n << " m=" << table.params.m
      << " kf=" << table.params.kf << " kb=" << table.params.kb << '\n';
  for (std::size_t q = 0; q < table.states.size(); ++q) {
    out << "state " << table.states[q];
    if (q == table.start) out << " start";
    if (table.accepting[q]) out << " accept";
    out << '\n';
  }
  for (std::uint64_t row = 0; row < table.rows.size(); ++row) {
    if (!table.rows[row]) continue;
    const Transition& tr = *table.rows[row];
    out << "trans " << table.states[row / table.views_per_state()];
    std::string syms;
    for (const Symbol& sym : row_view(table, row)) {
      if (!syms.empty()) syms += ',';
      syms += symbol_token(sym);
    }
    if (!syms.empty()) out << ' ' << syms;
    out << " -> " << table.states[tr.next.code];
    if (!tr.mask.empty()) {
      out << ' ';
      for (Move mv : tr.mask) out << (mv == Move::advance ? 'A' : 'S');
    }
    out << '\n';
  }
}

}  // namespace mp2s
