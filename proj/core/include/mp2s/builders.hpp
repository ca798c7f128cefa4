#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mp2s/disjointness.hpp"
#include "mp2s/model.hpp"

namespace mp2s {

// Single forward head per stream. Phase 1 collects the items of S into the
// state, phase 2 looks every item of T up in the collected set.
// Parameters (D_n, 2^{2n}, 1, 0); n must be in 1..31.
Automaton build_trivial(int n);

// sqrt(n) forward heads per stream, n+2-sqrt(n) declared states.
//
// Phase 1 parks S-head i at position (i-1)*sqrt(n)+1; the state remembers
// the position of the heads still moving. The state reached when the last
// head is parked is the phase-2 scanning state.
//
// Phase 2 runs sqrt(n) sub-phases; sub-phase j is the one whose T-head j is
// the first T-head not yet at END. T-head j sweeps T and each item is
// compared with the items under all S-heads. Between sub-phases the S-heads
// step right once. That shift has to happen exactly once, which the END
// pattern alone cannot tell apart, so phase 2 alternates between two
// marker states: "Scanning" is the working state of odd sub-phases and
// "Phase1(1)" (never used by phase 1 once T-head 1 has reached END) is the
// working state of even ones. Entering a sub-phase in the other marker
// means the shift is still pending. After the last sub-phase the S-heads
// are flushed to END without comparisons. Accepts iff the final state is
// Scanning. Throws NotPerfectSquare / InvalidSize.
Automaton build_sqrt(int n);

// Like build_trivial, but phase 1 records only items whose index lies in
// `remembered`. Throws InvalidSpec when remembered = {1..n}.
Automaton build_crippled(int n, const IndexSet& remembered);

// Number of distinct states seen (including start) across all runs.
// Propagates Stall.
std::uint64_t count_reachable_states(
    const Automaton& a, const std::vector<std::pair<Stream, Stream>>& instances);

// Integer square root when n is a perfect square.
std::optional<int> exact_sqrt(int n);

}  // namespace mp2s
