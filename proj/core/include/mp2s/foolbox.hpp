#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mp2s/disjointness.hpp"
#include "mp2s/engine.hpp"
#include "mp2s/model.hpp"

namespace mp2s {

// A block B_j (subblock == 0) or a subblock B_j^{j'} (subblock >= 1).
struct BlockId {
  int block = 1;
  int subblock = 0;

  friend auto operator<=>(const BlockId&, const BlockId&) = default;
};

// "B2" / "B2^1".
std::string to_string(const BlockId& id);

class BlockPartition {
 public:
  // Throws DivisibilityError unless v1 >= 1, v2 >= 1 and v1*v2 | n.
  BlockPartition(int n, int v1, int v2 = 1);

  int n() const noexcept { return n_; }
  int v1() const noexcept { return v1_; }
  int v2() const noexcept { return v2_; }
  int v() const noexcept { return v1_ * v2_; }
  int block_size() const noexcept { return n_ / v1_; }
  int subblock_size() const noexcept { return n_ / v(); }

  // 1-based; index i in {1..n}.
  int block_of(int i) const noexcept { return (i - 1) / block_size() + 1; }
  int subblock_of(int i) const noexcept {
    return ((i - 1) % block_size()) / subblock_size() + 1;
  }
  BlockId subblock_id(int i) const noexcept {
    return {block_of(i), subblock_of(i)};
  }

  bool contains(const BlockId& id, int i) const noexcept;
  std::vector<int> indices(const BlockId& id) const;
  IndexSet as_set(const BlockId& id) const;

 private:
  int n_;
  int v1_;
  int v2_;
};

BlockPartition partition_blocks(int n, int v1, int v2 = 1);

struct HeadPair {
  HeadId s;
  HeadId t;
  int s_index = 0;  // canonical head indices
  int t_index = 0;
  bool mixed = false;
};

// All (kf+kb)^2 pairs, S-head major.
std::vector<HeadPair> head_pairs(const AutomatonParams& params);

struct PairChecks {
  HeadPair pair;
  std::set<int> blocks;
  std::set<BlockId> subblocks;  // both indices in one subblock
};

struct CheckReport {
  std::vector<PairChecks> pairs;

  bool empty() const;
};

// A head on END is on no element. Throws LayoutMismatch when the trace does
// not fit the instance.
CheckReport analyze_checks(const AutomatonParams& params, const Trace& trace,
                           const SubsetFamilyInstance& instance,
                           const BlockPartition& partition);

enum class ProofMode : std::uint8_t { forward, general };

std::string to_string(ProofMode mode);
ProofMode parse_mode(std::string_view text);

// Forward mode: blocks no pair checks. General mode: subblocks B_j^{j'}
// such that no non-mixed pair checks B_j and no mixed pair checks B_j^{j'}.
std::vector<BlockId> unchecked_blocks(const CheckReport& report,
                                      const BlockPartition& partition,
                                      ProofMode mode);

// config^I: per head (canonical order), the configuration right after the
// head stepped off the last position of `bhat` it can reach. Throws
// IncompleteTrace.
std::vector<Configuration> exit_config_tuple(const AutomatonParams& params,
                                             const Trace& trace,
                                             const BlockId& bhat,
                                             const BlockPartition& partition,
                                             const SubsetFamilyInstance& instance);

struct Enumeration {
  enum class Kind : std::uint8_t { exhaustive, sample };
  Kind kind = Kind::exhaustive;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;

  static Enumeration exhaustive() { return {}; }
  static Enumeration sample(std::uint64_t count, std::uint64_t seed) {
    return {Kind::sample, count, seed};
  }
};

// "exhaustive" / "sample:<count>:<seed>".
std::string to_string(const Enumeration& e);
Enumeration parse_enumeration(std::string_view text);

// Index sets of {1..n}, ascending and distinct. Sampling draws `count`
// uniform sets from a mt19937_64 seeded with `seed` and drops repeats.
// Throws EnumerationTooLarge for exhaustive n > 20.
std::vector<IndexSet> enumerate_index_sets(int n, const Enumeration& e);

struct SpliceReport {
  bool differ_only_in_bhat = false;  // (a)
  bool bhat_unchecked = false;       // (b)
  bool same_exit_configs = false;    // (c)
  std::vector<std::string> failures;

  bool all_pass() const noexcept {
    return differ_only_in_bhat && bhat_unchecked && same_exit_configs;
  }
};

// Checks the three splice conditions for runs on D(I, ~I) and D(I', ~I').
SpliceReport splice_conditions(const AutomatonParams& params,
                               const Trace& run_i, const Trace& run_iprime,
                               const BlockId& bhat,
                               const BlockPartition& partition,
                               const SubsetFamilyInstance& inst_i,
                               const SubsetFamilyInstance& inst_iprime);

enum class FoolLayout : std::uint8_t { reversed, pi };

struct FoolingWitness {
  IndexSet i;
  IndexSet iprime;
  BlockId bhat;
  RunResult spliced_run;  // run on D(I, ~I')
  bool oracle_disjoint = true;
  SpliceReport splice;
};

struct BucketStats {
  std::uint64_t runs = 0;
  std::uint64_t rejected_runs = 0;
  std::uint64_t runs_with_unchecked = 0;
  std::uint64_t insertions = 0;
  std::uint64_t buckets = 0;
  std::uint64_t multi_member_buckets = 0;
  std::uint64_t largest_bucket = 0;
  std::uint64_t splices_simulated = 0;
  // Canonical averaging chain: X0 for the best bhat, X1 for the best I\bhat
  // within it, X2 for the best exit tuple within that.
  std::uint64_t x0 = 0;
  std::uint64_t x1 = 0;
  std::uint64_t x2 = 0;
  std::optional<BlockId> x0_block;
  double x0_floor = 0;  // runs / number of candidate blocks
  bool vacuous = false;
};

struct FoolingResult {
  ProofMode mode = ProofMode::forward;
  Layout layout;
  int v_nominal = 0;  // v from the head counts before truncation
  int v1_nominal = 0;
  int v2_nominal = 0;
  BlockPartition partition{1, 1, 1};
  Enumeration enumeration;
  BucketStats stats;
  std::optional<FoolingWitness> witness;
  std::string reason;
};

// Blocks for the search: forward v = kf^2+1, general v1 = kf^2+kb^2+1 and
// v2 = 2 kf kb + 1, each truncated to the largest divisor that fits.
BlockPartition search_partition(const AutomatonParams& params, int n,
                                FoolLayout layout);

// Throws InvalidParams (reversed layout with backward heads),
// EnumerationTooLarge and propagates Stall.
FoolingResult fooling_search(const Automaton& a, int n, FoolLayout layout,
                             const Enumeration& enumeration);

// Largest divisor of n that is <= cap (>= 1).
int largest_divisor_at_most(int n, int cap);

}  // namespace mp2s
