#include "mp2s/model.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mp2s/errors.hpp"

namespace mp2s {

DataItem item_a(std::uint32_t index) { return {ItemKind::a, index}; }
DataItem item_b(std::uint32_t index) { return {ItemKind::b, index}; }

std::string to_string(const DataItem& item) {
  return (item.kind == ItemKind::a ? "a" : "b") + std::to_string(item.index);
}

DataItem parse_item(std::string_view token) {
  if (token.size() < 2 || (token[0] != 'a' && token[0] != 'b')) {
    throw ParseError("bad data item '" + std::string(token) + "'");
  }
  std::uint32_t index = 0;
  const char* first = token.data() + 1;
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec != std::errc{} || ptr != last || index == 0) {
    throw ParseError("bad data item '" + std::string(token) + "'");
  }
  return {token[0] == 'a' ? ItemKind::a : ItemKind::b, index};
}

Stream read_stream(std::istream& in) {
  std::vector<DataItem> items;
  std::string token;
  while (in >> token) items.push_back(parse_item(token));
  return Stream(std::move(items));
}

Stream read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open stream file '" + path + "'");
  return read_stream(in);
}

void write_stream(std::ostream& out, const Stream& s) {
  out << format_stream(s) << '\n';
}

std::string format_stream(const Stream& s) {
  std::string text;
  for (const DataItem& item : s.items()) {
    if (!text.empty()) text += ' ';
    text += to_string(item);
  }
  return text;
}

void validate(const AutomatonParams& params) {
  if (params.m < 1) throw InvalidParams("m must be at least 1");
  if (params.kf < 0 || params.kb < 0) {
    throw InvalidParams("head counts must be non-negative");
  }
}

int head_index(const AutomatonParams& params, const HeadId& head) {
  const int group = head.direction == Direction::forward ? params.kf : params.kb;
  if (head.ordinal < 0 || head.ordinal >= group) {
    throw InvalidParams("head ordinal out of range: " + to_string(head));
  }
  int index = head.stream == StreamId::S ? 0 : params.kf + params.kb;
  if (head.direction == Direction::backward) index += params.kf;
  return index + head.ordinal;
}

HeadId head_at(const AutomatonParams& params, int index) {
  const int per_stream = params.kf + params.kb;
  if (index < 0 || index >= 2 * per_stream) {
    throw InvalidParams("head index out of range: " + std::to_string(index));
  }
  HeadId head;
  head.stream = index < per_stream ? StreamId::S : StreamId::T;
  int local = index % per_stream;
  if (local < params.kf) {
    head.direction = Direction::forward;
    head.ordinal = local;
  } else {
    head.direction = Direction::backward;
    head.ordinal = local - params.kf;
  }
  return head;
}

std::vector<HeadId> all_heads(const AutomatonParams& params) {
  std::vector<HeadId> heads;
  heads.reserve(static_cast<std::size_t>(params.k()));
  for (int h = 0; h < params.k(); ++h) heads.push_back(head_at(params, h));
  return heads;
}

std::string to_string(const HeadId& head) {
  std::string text = head.stream == StreamId::S ? "S." : "T.";
  text += head.direction == Direction::forward ? 'f' : 'b';
  return text + std::to_string(head.ordinal);
}

std::string symbol_token(const Symbol& sym) {
  return sym ? to_string(*sym) : std::string("end");
}

AdvanceMask uniform_mask(int k, Move move) {
  return AdvanceMask(static_cast<std::size_t>(k), move);
}

IndexedStateSpace::IndexedStateSpace(std::vector<std::string> names)
    : names_(std::move(names)) {}

std::string IndexedStateSpace::name(State s) const {
  if (!contains(s)) return "<invalid:" + std::to_string(s.code) + ">";
  return names_[s.code];
}

void IndexedStateSpace::for_each(
    const std::function<void(State)>& visit) const {
  for (std::uint64_t i = 0; i < names_.size(); ++i) visit(State{i});
}

std::optional<State> IndexedStateSpace::find(std::string_view name) const {
  for (std::uint64_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return State{i};
  }
  return std::nullopt;
}

Automaton make_automaton(AutomatonParams params,
                         std::shared_ptr<const StateSpace> states, State start,
                         AcceptFn accepting, TransitionFn delta,
                         std::string description) {
  validate(params);
  if (!states) throw InvalidParams("automaton needs a state space");
  if (!accepting || !delta) {
    throw InvalidParams("automaton needs an acceptance predicate and delta");
  }
  if (states->size() > params.m) {
    throw StateBudgetExceeded("declared " + std::to_string(states->size()) +
                              " states but the budget is m=" +
                              std::to_string(params.m));
  }
  if (!states->contains(start)) {
    throw InvalidStart("start state is not in the declared state set");
  }
  Automaton a;
  a.params_ = params;
  a.states_ = std::move(states);
  a.start_ = start;
  a.accepting_ = std::move(accepting);
  a.delta_ = std::move(delta);
  a.description_ = std::move(description);
  return a;
}

}  // namespace mp2s
