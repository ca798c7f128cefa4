// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mp2s/bounds.hpp"
#include "mp2s/builders.hpp"
#include "mp2s/disjointness.hpp"
#include "mp2s/engine.hpp"
#include "mp2s/errors.hpp"
#include "mp2s/foolbox.hpp"
#include "mp2s/sweep.hpp"
#include "mp2s/table.hpp"
#include "support/fixtures.hpp"

using namespace mp2s;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_s,
               const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // limit_s == 0: no time limit.
  if (limit_s > 0) v.require(secs < limit_s, "time limit exceeded");
  if (!v.ok) ++failures;
  char timing[64];
  if (limit_s > 0) {
    std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, limit_s);
  } else {
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
  }
  std::printf("%s %s  %s  (%s)%s%s\n", id, v.ok ? "PASS" : "FAIL", title, timing,
              v.detail.empty() ? "" : "  ", v.detail.c_str());
  std::fflush(stdout);
}

std::string count(std::uint64_t a, std::uint64_t b) {
  return std::to_string(a) + "/" + std::to_string(b);
}

bool rel_close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::abs(want);
}

void ac1(Verdict& v) {
  const SweepReport two = sweep_all_pairs(build_trivial(2), 2);
  v.require(two.total == 256 && two.all_agree(), "trivial(2) agree " + count(two.agree, two.total));
  const SweepReport three = sweep_all_pairs(build_trivial(3), 3);
  v.require(three.total == 46656 && three.all_agree(),
            "trivial(3) agree " + count(three.agree, three.total));
}

void ac2(Verdict& v) {
  const Automaton four = build_sqrt(4);
  const SweepReport fam = sweep_subset_family(four, 4, Layout::reversed());
  v.require(fam.total == 256 && fam.all_agree(), "sqrt(4) family " + count(fam.agree, fam.total));
  const SweepReport r4 = sweep_random_pairs(four, 4, 100000, 20240401);
  v.require(r4.total == 100000 && r4.all_agree(), "sqrt(4) random " + count(r4.agree, r4.total));
  const SweepReport r9 = sweep_random_pairs(build_sqrt(9), 9, 100000, 20240402);
  v.require(r9.total == 100000 && r9.all_agree(), "sqrt(9) random " + count(r9.agree, r9.total));
}

std::uint64_t declared_states(const Automaton& a) {
  std::uint64_t c = 0;
  a.states().for_each([&](State) { ++c; });
  return c;
}

void ac3(Verdict& v) {
  const SweepReport t2 = sweep_all_pairs(build_trivial(2), 2);
  v.require(t2.reachable_states <= 16,
            "trivial(2) reachable " + std::to_string(t2.reachable_states));
  const Automaton s4 = build_sqrt(4);
  v.require(declared_states(s4) == 4 && s4.params().m <= 6 && s4.params().kf == 2 &&
                s4.params().kb == 0,
            "sqrt(4) budget");
  const Automaton s9 = build_sqrt(9);
  v.require(declared_states(s9) == 8 && s9.params().kf == 3 && s9.params().kb == 0,
            "sqrt(9) budget");
}

void ac4(Verdict& v) {
  const FoolingResult r = fooling_search(build_crippled(4, IndexSet::from_list(4, {1, 2})), 4,
                                         FoolLayout::reversed, Enumeration::exhaustive());
  if (!r.witness) {
    v.require(false, "no witness (buckets=" + std::to_string(r.stats.buckets) +
                         ", largest=" + std::to_string(r.stats.largest_bucket) + ")");
    return;
  }
  v.require(r.witness->spliced_run.accepted, "spliced run rejected");
  v.require(!r.witness->oracle_disjoint, "oracle says disjoint");
  v.require(r.witness->splice.all_pass(), "splice conditions not all-pass");
}

void ac5(Verdict& v) {
  for (const auto& [name, a] :
       std::vector<std::pair<std::string, Automaton>>{{"trivial(4)", build_trivial(4)},
                                                       {"sqrt(4)", build_sqrt(4)}}) {
    const FoolingResult r = fooling_search(a, 4, FoolLayout::reversed, Enumeration::exhaustive());
    v.require(r.stats.runs == 16, name + " runs " + std::to_string(r.stats.runs));
    v.require(!r.witness, name + " witness found");
  }
}

void ac6(Verdict& v) {
  std::uint64_t violations = 0;
  std::uint64_t runs = 0;
  for (int kf = 1; kf <= 3; ++kf) {
    std::vector<Automaton> machines;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      machines.push_back(testing::make_hashed_automaton(kf, 0, 6, 1000 * kf + seed, 16));
    }
    if (kf == 1) machines.push_back(build_trivial(8));
    for (int bv : {2, 4}) {
      const BlockPartition part = partition_blocks(8, bv);
      for (const Automaton& a : machines) {
        for (const IndexSet& i : all_index_sets(8)) {
          const auto inst = build_instance(i, i.complement(), 8, Layout::reversed());
          const RunResult res = run(a, inst.s, inst.t, true);
          ++runs;
          for (const PairChecks& pc : analyze_checks(a.params(), *res.trace, inst, part).pairs) {
            if (pc.blocks.size() > 1) ++violations;
          }
        }
      }
    }
  }
  const BlockPartition part = partition_blocks(18, 3, 3);
  const auto sets = enumerate_index_sets(18, Enumeration::sample(1200, 77));
  v.require(sets.size() >= 1000, "only " + std::to_string(sets.size()) + " sampled sets");
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Automaton a = testing::make_hashed_automaton(1, 1, 8, 500 + seed, 36);
    for (const IndexSet& i : sets) {
      const auto inst = build_instance(i, i.complement(), 18, Layout::pi(3));
      const RunResult res = run(a, inst.s, inst.t, true);
      ++runs;
      for (const PairChecks& pc : analyze_checks(a.params(), *res.trace, inst, part).pairs) {
        if (pc.pair.mixed) {
          std::map<int, int> per_block;
          for (const BlockId& id : pc.subblocks) {
            if (++per_block[id.block] > 1) ++violations;
          }
        } else if (pc.blocks.size() > 1) {
          ++violations;
        }
      }
    }
  }
  v.require(violations == 0, std::to_string(violations) + " violations in " +
                                 std::to_string(runs) + " runs");
}

void ac7(Verdict& v) {
  std::uint64_t violations = 0;
  for (int n = 1; n <= 8; ++n) {
    const auto sets = all_index_sets(n);
    std::vector<Stream> streams;
    for (const IndexSet& s : sets) streams.emplace_back(subset_items(s));
    for (std::size_t a = 0; a < sets.size(); ++a) {
      for (std::size_t b = 0; b < sets.size(); ++b) {
        if (is_disjoint_oracle(streams[a], streams[b]) != (sets[b] == sets[a].complement())) {
          ++violations;
        }
      }
    }
  }
  v.require(violations == 0, std::to_string(violations) + " violations");
}

void ac8(Verdict& v) {
  const double tol = 1e-6;
  const BoundsReport f200 = lower_bound_inequality(1024, 200, 1, 0, ProofMode::forward);
  v.require(rel_close(f200.lhs, 884.0112655551425, tol) && f200.ruled_out, "forward m=2^200");
  const BoundsReport f300 = lower_bound_inequality(1024, 300, 1, 0, ProofMode::forward);
  v.require(rel_close(f300.lhs, 1284.0112655551425, tol) && !f300.ruled_out, "forward m=2^300");
  const BoundsReport g = lower_bound_inequality(4096, 10, 1, 1, ProofMode::general);
  v.require(rel_close(g.lhs, 2125.58003857014416, tol) && g.ruled_out, "general m=2^10");
  const std::uint64_t n = std::uint64_t{1} << 20;
  const RemarkReport r = remark_consistency({{n, 1}, {n, 2}});
  for (const RemarkEntry& e : r.entries) {
    v.require(e.premise && e.bound.ruled_out, "remark kf=" + std::to_string(e.kf));
  }
}

bool monotone(const Automaton& a, const Trace& trace) {
  for (const StepRecord& rec : trace) {
    for (int h = 0; h < a.k(); ++h) {
      const auto idx = static_cast<std::size_t>(h);
      HeadPosition d = rec.after.positions[idx] - rec.before.positions[idx];
      if (head_at(a.params(), h).direction == Direction::backward) d = -d;
      if (d != 0 && d != 1) return false;
    }
  }
  return true;
}

void ac9(Verdict& v) {
  std::mt19937_64 rng(9090);
  std::uint64_t finished = 0, stalled = 0, bad = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto n = static_cast<std::uint32_t>(1 + rng() % 3);
    const std::uint64_t m = 1 + rng() % 4;
    const int kf = static_cast<int>(rng() % 2);
    const int kb = static_cast<int>(rng() % 2);
    const Automaton a = make_table_automaton(testing::random_table(rng, n, m, kf, kb));
    const int len = static_cast<int>(rng() % (n + 1));
    const Stream s = testing::random_stream(rng, n, len);
    const Stream t = testing::random_stream(rng, n, len);
    const std::uint64_t bound =
        (static_cast<std::uint64_t>(a.k()) * (static_cast<std::uint64_t>(len) + 1) + 1) * (m + 1);
    std::string first;
    std::uint64_t stall_step = 0;
    try {
      const RunResult r = run(a, s, t, true);
      if (r.steps > bound || !monotone(a, *r.trace)) ++bad;
      first = trace_jsonl(a, *r.trace);
      ++finished;
    } catch (const Stall& e) {
      stall_step = e.step();
      if (e.step() > bound) ++bad;
      ++stalled;
    }
    try {
      const RunResult again = run(a, s, t, true);
      if (stall_step != 0 || trace_jsonl(a, *again.trace) != first) ++bad;
    } catch (const Stall& e) {
      if (e.step() != stall_step) ++bad;
    }
  }
  v.require(bad == 0, std::to_string(bad) + " violations (finished " + std::to_string(finished) +
                          ", stalled " + std::to_string(stalled) + ")");
}

void ac10(Verdict& v) {
  std::uint64_t violations = 0;
  for (int n = 1; n <= 60; ++n) {
    for (int v1 = 1; v1 <= n; ++v1) {
      if (n % v1 != 0) continue;
      const PermutationPi pi = permutation_pi(n, v1);
      const int b = n / v1;
      std::set<int> image;
      for (int x = 1; x <= n; ++x) {
        const int y = pi(x);
        image.insert(y);
        if (y < 1 || y > n || pi(y) != x) ++violations;
        const int j = (x - 1) / b + 1;
        const int off = (x - 1) % b;
        if ((y - 1) / b + 1 != v1 - j + 1 || (y - 1) % b != off) ++violations;
      }
      if (image.size() != static_cast<std::size_t>(n)) ++violations;
    }
  }
  v.require(violations == 0, std::to_string(violations) + " violations");
}

}  // namespace

int main() {
  criterion("AC1", "trivial automaton matches the oracle", 10, ac1);
  criterion("AC2", "sqrt automaton matches the oracle", 60, ac2);
  criterion("AC3", "state and head budgets", 0, ac3);
  criterion("AC4", "fooling search finds the planted flaw in crippled(4,{1,2})", 5, ac4);
  criterion("AC5", "no witness for trivial(4) and sqrt(4)", 5, ac5);
  criterion("AC6", "check-cardinality", 120, ac6);
  criterion("AC7", "disjoint iff complement, n <= 8", 30, ac7);
  criterion("AC8", "inequality calculator", 1, ac8);
  criterion("AC9", "engine safety on random tables", 60, ac9);
  criterion("AC10", "pi is a block-swapping involution", 1, ac10);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
