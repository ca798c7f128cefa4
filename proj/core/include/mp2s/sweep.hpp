#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mp2s/disjointness.hpp"
#include "mp2s/model.hpp"

namespace mp2s {

// Oracle comparison sweeps over Disj_n inputs.
struct Disagreement {
  Stream s;
  Stream t;
  bool accepted = false;
  bool disjoint = false;
};

struct SweepReport {
  std::string family;
  int n = 0;
  std::uint64_t total = 0;
  std::uint64_t agree = 0;
  std::uint64_t false_accepts = 0;
  std::uint64_t false_rejects = 0;
  std::vector<Disagreement> disagreements;  // the first few, in sweep order
  std::uint64_t reachable_states = 0;       // distinct states seen, incl. start

  bool all_agree() const noexcept { return agree == total; }
};

inline constexpr std::size_t kMaxReportedDisagreements = 16;

// All (2n)^n x (2n)^n stream pairs of length n.
SweepReport sweep_all_pairs(const Automaton& a, int n);

// All 2^n x 2^n subset-family instances D(I1, I2).
SweepReport sweep_subset_family(const Automaton& a, int n, const Layout& layout);

// `count` uniform random pairs of length-n streams over D_n (mt19937_64).
SweepReport sweep_random_pairs(const Automaton& a, int n, std::uint64_t count,
                               std::uint64_t seed);

}  // namespace mp2s
