#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mp2s/foolbox.hpp"

namespace mp2s {

// k^2 v lg(n+1) + k v lg m + v (1 + lg v) <= n, evaluated in double
// precision. m is passed as lg m so that huge state budgets stay exact.
struct BoundsReport {
  ProofMode mode = ProofMode::forward;
  std::uint64_t n = 0;
  double log2m = 0;
  int kf = 0;
  int kb = 0;
  int k = 0;
  std::int64_t v = 0;
  std::int64_t v1 = 0;
  std::int64_t v2 = 1;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // rhs - lhs
  bool ruled_out = false;
};

// Throws InvalidParams for n < 1, lg m < 0, negative head counts, or
// forward mode with kb != 0.
BoundsReport lower_bound_inequality(std::uint64_t n, double log2m, int kf,
                                    int kb, ProofMode mode);

// Forward-mode premise 4 kf <= (n / lg n)^{1/4} with the largest admissible
// lg m = n / (4 kf (kf^2 + 1)).
struct RemarkEntry {
  std::uint64_t n = 0;
  int kf = 0;
  bool premise = false;
  BoundsReport bound;
  bool violation = false;  // premise holds but the bound does not rule out
};

struct RemarkSummary {
  int kf = 0;
  // Smallest n >= 2 where the premise holds and the bound rules out.
  std::optional<std::uint64_t> smallest_n;
};

struct RemarkReport {
  std::vector<RemarkEntry> entries;
  std::vector<RemarkSummary> summaries;  // one per distinct kf, ascending

  bool any_violation() const;
};

// Throws InvalidParams for kf < 1 or n < 2.
RemarkReport remark_consistency(
    const std::vector<std::pair<std::uint64_t, int>>& samples,
    std::uint64_t scan_limit = std::uint64_t{1} << 24);

// kf = ceil(n^{1/5}) forward heads against 2^{n^{1/3}} states.
BoundsReport fifth_root_remark(std::uint64_t n);

}  // namespace mp2s
