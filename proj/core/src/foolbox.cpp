#include "mp2s/foolbox.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <tuple>

#include "mp2s/errors.hpp"

namespace mp2s {

namespace {

// Index of the item under head h, or 0 when the head is on END.
int index_under(const HeadId& head, HeadPosition pos,
                const SubsetFamilyInstance& inst) {
  if (pos < 1 || pos > inst.n) return 0;
  const int p = static_cast<int>(pos);
  return head.stream == StreamId::S ? inst.s_index_at(p) : inst.t_index_at(p);
}

void check_fits(const AutomatonParams& params, const Trace& trace,
                const SubsetFamilyInstance& inst) {
  if (inst.s.size() != inst.n || inst.t.size() != inst.n) {
    throw LayoutMismatch("instance streams do not have length n");
  }
  const auto k = static_cast<std::size_t>(params.k());
  for (const StepRecord& rec : trace) {
    if (rec.before.positions.size() != k || rec.after.positions.size() != k) {
      throw LayoutMismatch("trace head count differs from the automaton's");
    }
    for (HeadPosition p : rec.before.positions) {
      if (p < 0 || p > inst.n + 1) {
        throw LayoutMismatch("trace position " + std::to_string(p) +
                             " outside a stream of length " +
                             std::to_string(inst.n));
      }
    }
  }
}

// Visits every configuration of the run: each step's before, then the final.
template <typename Fn>
void for_each_configuration(const Trace& trace, Fn&& fn) {
  for (const StepRecord& rec : trace) fn(rec.before);
  if (!trace.empty()) fn(trace.back().after);
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("bad number '" + std::string(text) + "'");
  }
  return value;
}

// Position of head h's last reachable position inside bhat.
std::optional<HeadPosition> exit_position(const HeadId& head,
                                          const std::vector<int>& indices,
                                          const SubsetFamilyInstance& inst) {
  std::optional<HeadPosition> best;
  for (int i : indices) {
    const HeadPosition pos = head.stream == StreamId::S ? inst.s_position_of(i)
                                                        : inst.t_position_of(i);
    if (!best) {
      best = pos;
    } else if (head.direction == Direction::forward) {
      best = std::max(*best, pos);
    } else {
      best = std::min(*best, pos);
    }
  }
  return best;
}

using ConfigKey = std::vector<std::int64_t>;

ConfigKey flatten(const std::vector<Configuration>& tuple) {
  ConfigKey key;
  for (const Configuration& c : tuple) {
    key.push_back(static_cast<std::int64_t>(c.state.code));
    key.insert(key.end(), c.positions.begin(), c.positions.end());
  }
  return key;
}

struct BucketKey {
  BlockId bhat;
  std::uint64_t outside = 0;  // bits of I \ bhat
  ConfigKey configs;

  friend auto operator<=>(const BucketKey&, const BucketKey&) = default;
};

}  // namespace

std::string to_string(const BlockId& id) {
  std::string text = "B" + std::to_string(id.block);
  if (id.subblock > 0) text += "^" + std::to_string(id.subblock);
  return text;
}

BlockPartition::BlockPartition(int n, int v1, int v2) : n_(n), v1_(v1), v2_(v2) {
  if (n < 1) throw InvalidSize("partition needs n >= 1");
  if (v1 < 1 || v2 < 1 || n % (v1 * v2) != 0) {
    throw DivisibilityError("cannot split {1.." + std::to_string(n) +
                            "} into " + std::to_string(v1) + "x" +
                            std::to_string(v2) + " equal parts");
  }
}

bool BlockPartition::contains(const BlockId& id, int i) const noexcept {
  if (i < 1 || i > n_ || block_of(i) != id.block) return false;
  return id.subblock == 0 || subblock_of(i) == id.subblock;
}

std::vector<int> BlockPartition::indices(const BlockId& id) const {
  std::vector<int> out;
  int first = (id.block - 1) * block_size() + 1;
  int count = block_size();
  if (id.subblock > 0) {
    first += (id.subblock - 1) * subblock_size();
    count = subblock_size();
  }
  for (int i = first; i < first + count; ++i) out.push_back(i);
  return out;
}

IndexSet BlockPartition::as_set(const BlockId& id) const {
  return IndexSet::from_list(n_, indices(id));
}

BlockPartition partition_blocks(int n, int v1, int v2) {
  return BlockPartition(n, v1, v2);
}

std::vector<HeadPair> head_pairs(const AutomatonParams& params) {
  std::vector<HeadPair> pairs;
  const std::vector<HeadId> heads = all_heads(params);
  for (std::size_t hs = 0; hs < heads.size(); ++hs) {
    if (heads[hs].stream != StreamId::S) continue;
    for (std::size_t ht = 0; ht < heads.size(); ++ht) {
      if (heads[ht].stream != StreamId::T) continue;
      pairs.push_back(HeadPair{heads[hs], heads[ht], static_cast<int>(hs),
                               static_cast<int>(ht),
                               heads[hs].direction != heads[ht].direction});
    }
  }
  return pairs;
}

bool CheckReport::empty() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairChecks& p) {
    return p.blocks.empty() && p.subblocks.empty();
  });
}

CheckReport analyze_checks(const AutomatonParams& params, const Trace& trace,
                           const SubsetFamilyInstance& instance,
                           const BlockPartition& partition) {
  if (partition.n() != instance.n) {
    throw LayoutMismatch("partition and instance disagree on n");
  }
  check_fits(params, trace, instance);
  CheckReport report;
  for (const HeadPair& pair : head_pairs(params)) {
    report.pairs.push_back(PairChecks{pair, {}, {}});
  }
  for_each_configuration(trace, [&](const Configuration& c) {
    for (PairChecks& pc : report.pairs) {
      const int i = index_under(pc.pair.s, c.positions[static_cast<std::size_t>(pc.pair.s_index)], instance);
      const int j = index_under(pc.pair.t, c.positions[static_cast<std::size_t>(pc.pair.t_index)], instance);
      if (i == 0 || j == 0) continue;
      if (partition.block_of(i) != partition.block_of(j)) continue;
      pc.blocks.insert(partition.block_of(i));
      if (partition.subblock_of(i) == partition.subblock_of(j)) {
        pc.subblocks.insert(partition.subblock_id(i));
      }
    }
  });
  return report;
}

std::string to_string(ProofMode mode) {
  return mode == ProofMode::forward ? "forward" : "general";
}

ProofMode parse_mode(std::string_view text) {
  if (text == "forward") return ProofMode::forward;
  if (text == "general") return ProofMode::general;
  throw ParseError("bad mode '" + std::string(text) +
                   "': expected forward or general");
}

std::vector<BlockId> unchecked_blocks(const CheckReport& report,
                                      const BlockPartition& partition,
                                      ProofMode mode) {
  std::vector<BlockId> out;
  for (int j = 1; j <= partition.v1(); ++j) {
    if (mode == ProofMode::forward) {
      const bool checked = std::any_of(
          report.pairs.begin(), report.pairs.end(),
          [&](const PairChecks& pc) { return pc.blocks.count(j) > 0; });
      if (!checked) out.push_back(BlockId{j, 0});
      continue;
    }
    const bool non_mixed_checked = std::any_of(
        report.pairs.begin(), report.pairs.end(), [&](const PairChecks& pc) {
          return !pc.pair.mixed && pc.blocks.count(j) > 0;
        });
    if (non_mixed_checked) continue;
    for (int jj = 1; jj <= partition.v2(); ++jj) {
      const BlockId id{j, jj};
      const bool mixed_checked = std::any_of(
          report.pairs.begin(), report.pairs.end(), [&](const PairChecks& pc) {
            return pc.pair.mixed && pc.subblocks.count(id) > 0;
          });
      if (!mixed_checked) out.push_back(id);
    }
  }
  return out;
}

std::vector<Configuration> exit_config_tuple(
    const AutomatonParams& params, const Trace& trace, const BlockId& bhat,
    const BlockPartition& partition, const SubsetFamilyInstance& instance) {
  check_fits(params, trace, instance);
  const std::vector<int> indices = partition.indices(bhat);
  std::vector<Configuration> tuple;
  const std::vector<HeadId> heads = all_heads(params);
  for (std::size_t h = 0; h < heads.size(); ++h) {
    const auto target = exit_position(heads[h], indices, instance);
    if (!target) throw IncompleteTrace("block " + to_string(bhat) + " is empty");
    const auto it = std::find_if(trace.begin(), trace.end(), [&](const StepRecord& rec) {
      return rec.before.positions[h] == *target &&
             rec.after.positions[h] != *target;
    });
    if (it == trace.end()) {
      throw IncompleteTrace("head " + to_string(heads[h]) + " never left " +
                            to_string(bhat));
    }
    tuple.push_back(it->after);
  }
  return tuple;
}

std::string to_string(const Enumeration& e) {
  if (e.kind == Enumeration::Kind::exhaustive) return "exhaustive";
  return "sample:" + std::to_string(e.count) + ":" + std::to_string(e.seed);
}

Enumeration parse_enumeration(std::string_view text) {
  if (text == "exhaustive") return Enumeration::exhaustive();
  if (text.rfind("sample:", 0) == 0) {
    std::string_view rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon != std::string_view::npos) {
      return Enumeration::sample(parse_u64(rest.substr(0, colon)),
                                 parse_u64(rest.substr(colon + 1)));
    }
  }
  throw ParseError("bad enumeration '" + std::string(text) +
                   "': expected exhaustive or sample:<count>:<seed>");
}

std::vector<IndexSet> enumerate_index_sets(int n, const Enumeration& e) {
  if (n < 1 || n > IndexSet::kMaxN) {
    throw InvalidSize("index sets need 1 <= n <= 64");
  }
  if (e.kind == Enumeration::Kind::exhaustive) {
    if (n > 20) {
      throw EnumerationTooLarge("exhaustive enumeration is limited to n <= 20");
    }
    return all_index_sets(n);
  }
  std::mt19937_64 rng(e.seed);
  const std::uint64_t universe =
      n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::set<std::uint64_t> drawn;
  for (std::uint64_t c = 0; c < e.count; ++c) drawn.insert(rng() & universe);
  std::vector<IndexSet> out;
  out.reserve(drawn.size());
  for (std::uint64_t bits : drawn) out.emplace_back(n, bits);
  return out;
}

SpliceReport splice_conditions(const AutomatonParams& params,
                               const Trace& run_i, const Trace& run_iprime,
                               const BlockId& bhat,
                               const BlockPartition& partition,
                               const SubsetFamilyInstance& inst_i,
                               const SubsetFamilyInstance& inst_iprime) {
  SpliceReport report;
  const IndexSet block = partition.as_set(bhat);

  report.differ_only_in_bhat =
      inst_i.i1.symmetric_difference(inst_iprime.i1).subset_of(block);
  if (!report.differ_only_in_bhat) {
    report.failures.push_back("(a) I and I' differ outside " + to_string(bhat));
  }

  auto unchecked = [&](const Trace& trace, const SubsetFamilyInstance& inst) {
    const std::vector<HeadId> heads = all_heads(params);
    bool ok = true;
    for_each_configuration(trace, [&](const Configuration& c) {
      bool s_in = false;
      bool t_in = false;
      for (std::size_t h = 0; h < heads.size(); ++h) {
        const int i = index_under(heads[h], c.positions[h], inst);
        if (i == 0 || !partition.contains(bhat, i)) continue;
        (heads[h].stream == StreamId::S ? s_in : t_in) = true;
      }
      if (s_in && t_in) ok = false;
    });
    return ok;
  };
  check_fits(params, run_i, inst_i);
  check_fits(params, run_iprime, inst_iprime);
  const bool b_i = unchecked(run_i, inst_i);
  const bool b_iprime = unchecked(run_iprime, inst_iprime);
  report.bhat_unchecked = b_i && b_iprime;
  if (!b_i) report.failures.push_back("(b) " + to_string(bhat) + " is checked in the run on I");
  if (!b_iprime) report.failures.push_back("(b) " + to_string(bhat) + " is checked in the run on I'");

  try {
    report.same_exit_configs =
        exit_config_tuple(params, run_i, bhat, partition, inst_i) ==
        exit_config_tuple(params, run_iprime, bhat, partition, inst_iprime);
    if (!report.same_exit_configs) {
      report.failures.push_back("(c) exit configurations differ");
    }
  } catch (const IncompleteTrace& e) {
    report.same_exit_configs = false;
    report.failures.push_back(std::string("(c) ") + e.what());
  }
  return report;
}

int largest_divisor_at_most(int n, int cap) {
  for (int d = std::min(n, cap); d >= 1; --d) {
    if (n % d == 0) return d;
  }
  return 1;
}

BlockPartition search_partition(const AutomatonParams& params, int n,
                                FoolLayout layout) {
  const int kf = params.kf;
  const int kb = params.kb;
  if (layout == FoolLayout::reversed) {
    if (kb != 0) {
      throw InvalidParams("the reversed layout only applies to automata "
                          "without backward heads; use the pi layout");
    }
    return BlockPartition(n, largest_divisor_at_most(n, kf * kf + 1), 1);
  }
  const int v1 = largest_divisor_at_most(n, kf * kf + kb * kb + 1);
  const int v2 = largest_divisor_at_most(n / v1, 2 * kf * kb + 1);
  return BlockPartition(n, v1, v2);
}

FoolingResult fooling_search(const Automaton& a, int n, FoolLayout layout,
                             const Enumeration& enumeration) {
  const AutomatonParams& params = a.params();
  FoolingResult result;
  result.mode = layout == FoolLayout::reversed ? ProofMode::forward
                                               : ProofMode::general;
  result.v1_nominal = result.mode == ProofMode::forward
                          ? params.kf * params.kf + 1
                          : params.kf * params.kf + params.kb * params.kb + 1;
  result.v2_nominal =
      result.mode == ProofMode::forward ? 1 : 2 * params.kf * params.kb + 1;
  result.v_nominal = result.v1_nominal * result.v2_nominal;
  result.partition = search_partition(params, n, layout);
  result.layout = layout == FoolLayout::reversed
                      ? Layout::reversed()
                      : Layout::pi(result.partition.v1());
  result.enumeration = enumeration;

  const std::vector<IndexSet> family = enumerate_index_sets(n, enumeration);
  BucketStats& stats = result.stats;
  std::map<BucketKey, std::vector<IndexSet>> buckets;
  std::map<BlockId, std::uint64_t> per_block;

  for (const IndexSet& set : family) {
    const SubsetFamilyInstance inst =
        build_instance(set, set.complement(), n, result.layout);
    const RunResult run_result = run(a, inst.s, inst.t, true);
    ++stats.runs;
    if (!run_result.accepted) ++stats.rejected_runs;
    const Trace& trace = *run_result.trace;
    const CheckReport checks =
        analyze_checks(params, trace, inst, result.partition);
    const std::vector<BlockId> free_blocks =
        unchecked_blocks(checks, result.partition, result.mode);
    if (!free_blocks.empty()) ++stats.runs_with_unchecked;
    for (const BlockId& bhat : free_blocks) {
      const IndexSet outside = set.minus(result.partition.as_set(bhat));
      BucketKey key{bhat, outside.bits(),
                    flatten(exit_config_tuple(params, trace, bhat,
                                              result.partition, inst))};
      buckets[std::move(key)].push_back(set);
      ++per_block[bhat];
      ++stats.insertions;
    }
  }

  const int candidates = result.mode == ProofMode::forward
                             ? result.partition.v1()
                             : result.partition.v();
  stats.x0_floor = static_cast<double>(stats.runs) / candidates;
  stats.buckets = buckets.size();
  for (const auto& [key, members] : buckets) {
    stats.largest_bucket = std::max<std::uint64_t>(stats.largest_bucket, members.size());
    if (members.size() >= 2) ++stats.multi_member_buckets;
  }

  // Canonical averaging chain, ties broken towards the smallest key.
  for (const auto& [bhat, count] : per_block) {
    if (count > stats.x0) {
      stats.x0 = count;
      stats.x0_block = bhat;
    }
  }
  if (stats.x0_block) {
    std::map<std::uint64_t, std::uint64_t> per_outside;
    for (const auto& [key, members] : buckets) {
      if (key.bhat == *stats.x0_block) per_outside[key.outside] += members.size();
    }
    std::uint64_t best_outside = 0;
    for (const auto& [outside, count] : per_outside) {
      if (count > stats.x1) {
        stats.x1 = count;
        best_outside = outside;
      }
    }
    for (const auto& [key, members] : buckets) {
      if (key.bhat == *stats.x0_block && key.outside == best_outside) {
        stats.x2 = std::max<std::uint64_t>(stats.x2, members.size());
      }
    }
  }

  if (buckets.empty()) {
    stats.vacuous = true;
    result.reason = "vacuous: no run has an unchecked block, so no buckets form";
    return result;
  }
  if (stats.multi_member_buckets == 0) {
    result.reason = "every bucket has at most one member";
    return result;
  }

  for (const auto& [key, members] : buckets) {
    if (members.size() < 2) continue;
    for (const IndexSet& first : members) {
      for (const IndexSet& second : members) {
        if (first == second) continue;
        const SubsetFamilyInstance spliced =
            build_instance(first, second.complement(), n, result.layout);
        ++stats.splices_simulated;
        RunResult spliced_run = run(a, spliced.s, spliced.t, true);
        const bool disjoint = is_disjoint_oracle(spliced.s, spliced.t);
        if (!spliced_run.accepted || disjoint) continue;

        const SubsetFamilyInstance inst_i =
            build_instance(first, first.complement(), n, result.layout);
        const SubsetFamilyInstance inst_ip =
            build_instance(second, second.complement(), n, result.layout);
        const RunResult run_i = run(a, inst_i.s, inst_i.t, true);
        const RunResult run_ip = run(a, inst_ip.s, inst_ip.t, true);
        FoolingWitness witness;
        witness.i = first;
        witness.iprime = second;
        witness.bhat = key.bhat;
        witness.spliced_run = std::move(spliced_run);
        witness.oracle_disjoint = disjoint;
        witness.splice =
            splice_conditions(params, *run_i.trace, *run_ip.trace, key.bhat,
                              result.partition, inst_i, inst_ip);
        result.witness = std::move(witness);
        result.reason = "false accept on D(I, complement of I')";
        return result;
      }
    }
  }
  result.reason = "every splice simulation rejected";
  return result;
}

}  // namespace mp2s
