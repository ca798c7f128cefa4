#include "mp2s/sweep.hpp"

#include <random>
#include <unordered_set>

#include "mp2s/engine.hpp"
#include "mp2s/errors.hpp"

namespace mp2s {

namespace {

class Sweeper {
 public:
  Sweeper(const Automaton& a, std::string family, int n) : a_(a) {
    report_.family = std::move(family);
    report_.n = n;
    seen_.insert(a.start());
  }

  void check(const Stream& s, const Stream& t) {
    const RunResult result = run(a_, s, t, true);
    for (const StepRecord& rec : *result.trace) seen_.insert(rec.after.state);
    const bool disjoint = is_disjoint_oracle(s, t);
    ++report_.total;
    if (result.accepted == disjoint) {
      ++report_.agree;
      return;
    }
    ++(result.accepted ? report_.false_accepts : report_.false_rejects);
    if (report_.disagreements.size() < kMaxReportedDisagreements) {
      report_.disagreements.push_back({s, t, result.accepted, disjoint});
    }
  }

  SweepReport finish() {
    report_.reachable_states = seen_.size();
    return std::move(report_);
  }

 private:
  const Automaton& a_;
  SweepReport report_;
  std::unordered_set<State, StateHash> seen_;
};

}  // namespace

SweepReport sweep_all_pairs(const Automaton& a, int n) {
  if (n < 1 || n > 4) throw InvalidSize("all-pairs sweeps support 1 <= n <= 4");
  const std::vector<Stream> streams = enumerate_streams(n, n);
  Sweeper sweeper(a, "all-pairs", n);
  for (const Stream& s : streams) {
    for (const Stream& t : streams) sweeper.check(s, t);
  }
  return sweeper.finish();
}

SweepReport sweep_subset_family(const Automaton& a, int n, const Layout& layout) {
  if (n < 1 || n > 12) throw InvalidSize("subset-family sweeps support 1 <= n <= 12");
  const std::vector<IndexSet> sets = all_index_sets(n);
  Sweeper sweeper(a, "subset-family:" + to_string(layout), n);
  for (const IndexSet& i1 : sets) {
    for (const IndexSet& i2 : sets) {
      const SubsetFamilyInstance inst = build_instance(i1, i2, n, layout);
      sweeper.check(inst.s, inst.t);
    }
  }
  return sweeper.finish();
}

SweepReport sweep_random_pairs(const Automaton& a, int n, std::uint64_t count,
                               std::uint64_t seed) {
  const DisjDomain domain = make_domain(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, domain.items.size() - 1);
  auto draw = [&] {
    std::vector<DataItem> items;
    items.reserve(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) items.push_back(domain.items[pick(rng)]);
    return Stream(std::move(items));
  };
  Sweeper sweeper(a, "random:" + std::to_string(count) + ":" + std::to_string(seed), n);
  for (std::uint64_t c = 0; c < count; ++c) {
    Stream s = draw();
    Stream t = draw();
    sweeper.check(s, t);
  }
  return sweeper.finish();
}

}  // namespace mp2s
