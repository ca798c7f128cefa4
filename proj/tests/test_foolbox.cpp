#include <doctest.h>

#include <map>

#include "mp2s/builders.hpp"
#include "mp2s/errors.hpp"
#include "mp2s/foolbox.hpp"
#include "support/fixtures.hpp"

using namespace mp2s;

namespace {

SubsetFamilyInstance complementary(const IndexSet& i, const Layout& layout) {
  return build_instance(i, i.complement(), i.n(), layout);
}

RunResult traced(const Automaton& a, const SubsetFamilyInstance& inst) {
  return run(a, inst.s, inst.t, true);
}

// Largest number of subblocks a mixed pair checks inside any single block.
std::size_t max_subblocks_per_block(const PairChecks& pc) {
  std::map<int, std::size_t> per_block;
  std::size_t best = 0;
  for (const BlockId& id : pc.subblocks) best = std::max(best, ++per_block[id.block]);
  return best;
}

}  // namespace

TEST_CASE("partitions") {
  const BlockPartition halves = partition_blocks(8, 2);
  CHECK(halves.indices({1, 0}) == std::vector<int>{1, 2, 3, 4});
  CHECK(halves.indices({2, 0}) == std::vector<int>{5, 6, 7, 8});
  const BlockPartition p = partition_blocks(12, 3, 2);
  CHECK(p.indices({1, 1}) == std::vector<int>{1, 2});
  CHECK(p.indices({1, 2}) == std::vector<int>{3, 4});
  CHECK(p.indices({2, 1}) == std::vector<int>{5, 6});
  CHECK(p.subblock_id(6) == BlockId{2, 1});
  CHECK(to_string(BlockId{2, 1}) == "B2^1");
  CHECK_THROWS_AS(partition_blocks(8, 3), DivisibilityError);
  CHECK(largest_divisor_at_most(18, 5) == 3);
}

TEST_CASE("head pairs") {
  const auto pairs = head_pairs({8, 2, 1, 1});
  REQUIRE(pairs.size() == 4);
  CHECK_FALSE(pairs[0].mixed);  // S.f0 x T.f0
  CHECK(pairs[1].mixed);        // S.f0 x T.b0
  CHECK(pairs[2].mixed);
  CHECK_FALSE(pairs[3].mixed);
}

TEST_CASE("forward pairs check at most one block") {
  for (int kf = 1; kf <= 3; ++kf) {
    for (int v : {2, 4}) {
      const BlockPartition part = partition_blocks(8, v);
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Automaton a = testing::make_hashed_automaton(kf, 0, 5, seed * 31 + kf, 16);
        for (const IndexSet& i : all_index_sets(8)) {
          const auto inst = complementary(i, Layout::reversed());
          const CheckReport rep = analyze_checks(a.params(), *traced(a, inst).trace, inst, part);
          std::size_t checked = 0;
          for (const PairChecks& pc : rep.pairs) {
            CHECK(pc.blocks.size() <= 1);
            checked += pc.blocks.size();
          }
          if (v > kf * kf) {
            CHECK(!unchecked_blocks(rep, part, ProofMode::forward).empty());
          }
          CHECK(checked <= static_cast<std::size_t>(kf * kf));
        }
      }
    }
  }
}

TEST_CASE("general pairs under the pi layout") {
  const BlockPartition part = partition_blocks(18, 3, 3);
  const auto sets = enumerate_index_sets(18, Enumeration::sample(300, 9));
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const Automaton a = testing::make_hashed_automaton(1, 1, 7, seed, 36);
    for (const IndexSet& i : sets) {
      const auto inst = complementary(i, Layout::pi(3));
      const CheckReport rep = analyze_checks(a.params(), *traced(a, inst).trace, inst, part);
      for (const PairChecks& pc : rep.pairs) {
        if (pc.pair.mixed) {
          CHECK(max_subblocks_per_block(pc) <= 1);
        } else {
          CHECK(pc.blocks.size() <= 1);
        }
      }
    }
  }
}

TEST_CASE("no joint occupancy gives an empty report") {
  const Automaton a = build_trivial(4);
  const auto inst = complementary(IndexSet(4, 0), Layout::reversed());
  // Keep only the phase-2 steps, where the S-head is already at END.
  Trace trace = *traced(a, inst).trace;
  trace.erase(trace.begin(), trace.begin() + 4);
  CHECK(analyze_checks(a.params(), trace, inst, partition_blocks(4, 2)).empty());
}

TEST_CASE("exit configurations of the trivial automaton") {
  const Automaton a = build_trivial(4);
  const BlockPartition part = partition_blocks(4, 2);
  const auto inst = complementary(IndexSet::from_list(4, {1}), Layout::reversed());
  const Trace trace = *traced(a, inst).trace;
  const auto tuple = exit_config_tuple(a.params(), trace, {1, 0}, part, inst);
  REQUIRE(tuple.size() == 2);
  CHECK(tuple[0].positions == std::vector<HeadPosition>{3, 1});
  CHECK(a.states().name(tuple[0].state) == "{a1,b2}");
  CHECK(tuple[1].positions == std::vector<HeadPosition>{5, 5});
  CHECK(exit_config_tuple(a.params(), *traced(a, inst).trace, {1, 0}, part, inst) == tuple);
  const Trace partial(trace.begin(), trace.begin() + 1);
  CHECK_THROWS_AS(exit_config_tuple(a.params(), partial, {1, 0}, part, inst), IncompleteTrace);
}

TEST_CASE("splice conditions on the trivial automaton") {
  const Automaton a = build_trivial(4);
  const BlockPartition part = partition_blocks(4, 2);
  const auto i = complementary(IndexSet::from_list(4, {1}), Layout::reversed());
  const auto ip = complementary(IndexSet::from_list(4, {2}), Layout::reversed());
  const Trace ti = *traced(a, i).trace;
  const Trace tip = *traced(a, ip).trace;

  const SpliceReport across = splice_conditions(a.params(), ti, tip, {2, 0}, part, i, ip);
  CHECK_FALSE(across.differ_only_in_bhat);
  CHECK_FALSE(across.failures.empty());

  const SpliceReport inside = splice_conditions(a.params(), ti, tip, {1, 0}, part, i, ip);
  CHECK(inside.differ_only_in_bhat);
  CHECK(inside.bhat_unchecked);
  CHECK_FALSE(inside.same_exit_configs);

  const SpliceReport same = splice_conditions(a.params(), ti, ti, {1, 0}, part, i, i);
  CHECK(same.all_pass());
}

TEST_CASE("correct automata are not fooled") {
  const FoolingResult trivial =
      fooling_search(build_trivial(4), 4, FoolLayout::reversed, Enumeration::exhaustive());
  CHECK_FALSE(trivial.witness.has_value());
  CHECK(trivial.stats.runs == 16);
  CHECK(trivial.stats.largest_bucket <= 1);

  const FoolingResult sqrt4 =
      fooling_search(build_sqrt(4), 4, FoolLayout::reversed, Enumeration::exhaustive());
  CHECK_FALSE(sqrt4.witness.has_value());
  CHECK(sqrt4.stats.vacuous);
  CHECK(sqrt4.stats.buckets == 0);
}

TEST_CASE("crippled automata") {
  // Remembering {1,2}: the only unchecked block is B1, which the automaton
  // does remember, so no bucket has two members.
  const FoolingResult low = fooling_search(build_crippled(4, IndexSet::from_mask("1100")), 4,
                                           FoolLayout::reversed, Enumeration::exhaustive());
  CHECK_FALSE(low.witness.has_value());
  CHECK(low.stats.largest_bucket <= 1);

  const FoolingResult high = fooling_search(build_crippled(4, IndexSet::from_mask("0011")), 4,
                                            FoolLayout::reversed, Enumeration::exhaustive());
  REQUIRE(high.witness.has_value());
  const FoolingWitness& w = *high.witness;
  CHECK(w.spliced_run.accepted);
  CHECK_FALSE(w.oracle_disjoint);
  CHECK(w.splice.all_pass());
  CHECK(w.i != w.iprime);
  CHECK(w.i.symmetric_difference(w.iprime).subset_of(high.partition.as_set(w.bhat)));
}

TEST_CASE("bucket statistics") {
  const FoolingResult r = fooling_search(build_crippled(8, IndexSet::from_mask("11110000")), 8,
                                         FoolLayout::reversed, Enumeration::exhaustive());
  CHECK(r.stats.x0 >= r.stats.x1);
  CHECK(r.stats.x1 >= r.stats.x2);
  if (r.stats.runs_with_unchecked == r.stats.runs) {
    CHECK(static_cast<double>(r.stats.x0) >= r.stats.x0_floor);
  }
  const FoolingResult again = fooling_search(build_crippled(8, IndexSet::from_mask("11110000")), 8,
                                             FoolLayout::reversed, Enumeration::exhaustive());
  CHECK(again.stats.x2 == r.stats.x2);
  CHECK(again.witness.has_value() == r.witness.has_value());
}

TEST_CASE("enumerations") {
  CHECK(enumerate_index_sets(4, Enumeration::exhaustive()).size() == 16);
  const auto s = enumerate_index_sets(20, Enumeration::sample(100, 1));
  CHECK(s == enumerate_index_sets(20, Enumeration::sample(100, 1)));
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK_THROWS_AS(enumerate_index_sets(21, Enumeration::exhaustive()), EnumerationTooLarge);
  CHECK(to_string(parse_enumeration("sample:5:7")) == "sample:5:7");
  CHECK_THROWS_AS(fooling_search(testing::make_hashed_automaton(1, 1, 2, 1, 8), 4,
                                 FoolLayout::reversed, Enumeration::exhaustive()),
                  InvalidParams);
}
