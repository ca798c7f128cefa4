#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mp2s/model.hpp"

namespace mp2s {

// Head positions are absolute 1-based stream positions. END is encoded as
// |stream|+1 for forward heads and 0 for backward heads.
using HeadPosition = std::int64_t;

struct Configuration {
  State state;
  std::vector<HeadPosition> positions;  // canonical head order

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct StepRecord {
  std::uint64_t step = 0;  // 1-based
  Configuration before;
  SymbolView symbols;
  AdvanceMask mask;
  Configuration after;
};

using Trace = std::vector<StepRecord>;

struct RunResult {
  bool accepted = false;
  std::uint64_t steps = 0;
  Configuration final_config;
  std::optional<Trace> trace;
};

HeadPosition end_position(Direction dir, const Stream& stream);
bool at_end(const HeadId& head, HeadPosition pos, const Stream& stream);

Configuration initial_configuration(const Automaton& a, const Stream& s,
                                    const Stream& t);

bool all_heads_done(const Automaton& a, const Stream& s, const Stream& t,
                    const Configuration& c);

SymbolView read_symbols(const Automaton& a, const Stream& s, const Stream& t,
                        const Configuration& c);

// One computation step. Throws InvalidParams when every head is already at
// END, InvalidTransition when delta leaves Q or returns a mask of the wrong
// width, and whatever delta itself throws (TransitionUndefined for tables).
Configuration step(const Automaton& a, const Stream& s, const Stream& t,
                   const Configuration& c);

// Runs to completion. Throws Stall after m+1 consecutive steps in which no
// head position changes.
RunResult run(const Automaton& a, const Stream& s, const Stream& t,
              bool capture_trace = false);

// Every run either stalls or finishes within this many steps.
std::uint64_t step_bound(const Automaton& a, const Stream& s, const Stream& t);

// JSON Lines, one record per step: step, state, pos, sym, adv. `state` and
// `pos` describe the configuration in which `sym` was read.
void write_trace_jsonl(std::ostream& out, const Automaton& a,
                       const Trace& trace);
std::string trace_jsonl(const Automaton& a, const Trace& trace);

}  // namespace mp2s
