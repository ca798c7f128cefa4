#include "mp2s/engine.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mp2s/errors.hpp"

namespace mp2s {

namespace {

const Stream& stream_of(const HeadId& head, const Stream& s, const Stream& t) {
  return head.stream == StreamId::S ? s : t;
}

// Heads are looked up per step; caching them keeps head_at off the hot path.
struct HeadTable {
  std::vector<HeadId> heads;
  explicit HeadTable(const AutomatonParams& params)
      : heads(all_heads(params)) {}
};

SymbolView read_with(const std::vector<HeadId>& heads, const Stream& s,
                     const Stream& t, const Configuration& c) {
  SymbolView view;
  view.reserve(heads.size());
  for (std::size_t h = 0; h < heads.size(); ++h) {
    const Stream& stream = stream_of(heads[h], s, t);
    const HeadPosition pos = c.positions[h];
    if (stream.valid_position(pos)) {
      view.emplace_back(stream.at(pos));
    } else {
      view.emplace_back(std::nullopt);
    }
  }
  return view;
}

bool done_with(const std::vector<HeadId>& heads, const Stream& s,
               const Stream& t, const Configuration& c) {
  for (std::size_t h = 0; h < heads.size(); ++h) {
    if (!at_end(heads[h], c.positions[h], stream_of(heads[h], s, t))) {
      return false;
    }
  }
  return true;
}

// Applies delta; returns the new configuration and fills `record` fields.
Configuration apply(const Automaton& a, const std::vector<HeadId>& heads,
                    const Stream& s, const Stream& t, const Configuration& c,
                    SymbolView& view, AdvanceMask& mask) {
  view = read_with(heads, s, t, c);
  Transition tr = a.delta(c.state, view);
  if (tr.mask.size() != heads.size()) {
    throw InvalidTransition("delta returned a mask of width " +
                            std::to_string(tr.mask.size()) + ", expected " +
                            std::to_string(heads.size()));
  }
  if (!a.states().contains(tr.next)) {
    throw InvalidTransition("delta left the declared state set (code " +
                            std::to_string(tr.next.code) + ")");
  }
  Configuration next{tr.next, c.positions};
  for (std::size_t h = 0; h < heads.size(); ++h) {
    if (tr.mask[h] != Move::advance) continue;
    const Stream& stream = stream_of(heads[h], s, t);
    HeadPosition& pos = next.positions[h];
    if (at_end(heads[h], pos, stream)) continue;
    pos += heads[h].direction == Direction::forward ? 1 : -1;
  }
  mask = std::move(tr.mask);
  return next;
}

}  // namespace

HeadPosition end_position(Direction dir, const Stream& stream) {
  return dir == Direction::forward ? stream.size() + 1 : 0;
}

bool at_end(const HeadId& head, HeadPosition pos, const Stream& stream) {
  return head.direction == Direction::forward ? pos > stream.size() : pos < 1;
}

Configuration initial_configuration(const Automaton& a, const Stream& s,
                                    const Stream& t) {
  Configuration c;
  c.state = a.start();
  for (const HeadId& head : all_heads(a.params())) {
    const Stream& stream = stream_of(head, s, t);
    if (stream.empty()) {
      c.positions.push_back(end_position(head.direction, stream));
    } else {
      c.positions.push_back(head.direction == Direction::forward ? 1
                                                                 : stream.size());
    }
  }
  return c;
}

bool all_heads_done(const Automaton& a, const Stream& s, const Stream& t,
                    const Configuration& c) {
  return done_with(all_heads(a.params()), s, t, c);
}

SymbolView read_symbols(const Automaton& a, const Stream& s, const Stream& t,
                        const Configuration& c) {
  return read_with(all_heads(a.params()), s, t, c);
}

Configuration step(const Automaton& a, const Stream& s, const Stream& t,
                   const Configuration& c) {
  const HeadTable table(a.params());
  if (c.positions.size() != table.heads.size()) {
    throw InvalidParams("configuration has the wrong number of heads");
  }
  if (done_with(table.heads, s, t, c)) {
    throw InvalidParams("run is over: every head has passed its stream");
  }
  SymbolView view;
  AdvanceMask mask;
  return apply(a, table.heads, s, t, c, view, mask);
}

std::uint64_t step_bound(const Automaton& a, const Stream& s, const Stream& t) {
  const auto max_len =
      static_cast<std::uint64_t>(std::max(s.size(), t.size()));
  const auto k = static_cast<std::uint64_t>(a.k());
  const std::uint64_t advances = k * (max_len + 1) + 1;
  const std::uint64_t m = a.params().m;
  if (m >= std::numeric_limits<std::uint64_t>::max() / advances) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return advances * (m + 1);
}

RunResult run(const Automaton& a, const Stream& s, const Stream& t,
              bool capture_trace) {
  const HeadTable table(a.params());
  RunResult result;
  Configuration c = initial_configuration(a, s, t);
  if (capture_trace) result.trace.emplace();
  const std::uint64_t m = a.params().m;
  const std::uint64_t stall_after =
      m == std::numeric_limits<std::uint64_t>::max() ? m : m + 1;
  std::uint64_t idle = 0;
  std::uint64_t steps = 0;
  while (!done_with(table.heads, s, t, c)) {
    SymbolView view;
    AdvanceMask mask;
    Configuration next = apply(a, table.heads, s, t, c, view, mask);
    ++steps;
    if (next.positions == c.positions) {
      if (++idle >= stall_after) {
        throw Stall(steps, "stall: " + std::to_string(idle) +
                               " consecutive steps without head movement");
      }
    } else {
      idle = 0;
    }
    if (capture_trace) {
      result.trace->push_back(
          StepRecord{steps, std::move(c), std::move(view), std::move(mask), next});
    }
    c = std::move(next);
  }
  result.steps = steps;
  result.accepted = a.accepting(c.state);
  result.final_config = std::move(c);
  return result;
}

void write_trace_jsonl(std::ostream& out, const Automaton& a,
                       const Trace& trace) {
  for (const StepRecord& rec : trace) {
    nlohmann::ordered_json j;
    j["step"] = rec.step;
    j["state"] = a.states().name(rec.before.state);
    j["pos"] = rec.before.positions;
    auto syms = nlohmann::json::array();
    for (const Symbol& sym : rec.symbols) syms.push_back(symbol_token(sym));
    j["sym"] = syms;
    auto adv = nlohmann::json::array();
    for (Move mv : rec.mask) adv.push_back(mv == Move::advance);
    j["adv"] = adv;
    out << j.dump() << '\n';
  }
}

std::string trace_jsonl(const Automaton& a, const Trace& trace) {
  std::ostringstream out;
  write_trace_jsonl(out, a, trace);
  return out.str();
}

}  // namespace mp2s
