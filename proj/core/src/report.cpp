#include "mp2s/report.hpp"

#include <json.hpp>

namespace mp2s {

namespace {

using nlohmann::ordered_json;

ordered_json params_json(const Automaton& a) {
  const AutomatonParams& p = a.params();
  ordered_json j;
  j["automaton"] = a.description();
  j["domainSize"] = p.domainSize;
  j["m"] = p.m;
  j["kf"] = p.kf;
  j["kb"] = p.kb;
  j["k"] = p.k();
  j["declaredStates"] = a.states().size();
  return j;
}

ordered_json bounds_json(const BoundsReport& r) {
  ordered_json j;
  j["mode"] = to_string(r.mode);
  j["n"] = r.n;
  j["m_log2"] = r.log2m;
  j["kf"] = r.kf;
  j["kb"] = r.kb;
  j["k"] = r.k;
  j["v"] = r.v;
  if (r.mode == ProofMode::general) {
    j["v1"] = r.v1;
    j["v2"] = r.v2;
  }
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ruledOut"] = r.ruled_out;
  j["margin"] = r.margin;
  return j;
}

ordered_json splice_json(const SpliceReport& s) {
  ordered_json j;
  j["a_differOnlyInBhat"] = s.differ_only_in_bhat;
  j["b_bhatUnchecked"] = s.bhat_unchecked;
  j["c_sameExitConfigs"] = s.same_exit_configs;
  j["allPass"] = s.all_pass();
  j["failures"] = s.failures;
  return j;
}

}  // namespace

std::string fooling_report_json(const Automaton& a, int n,
                                const FoolingResult& result) {
  ordered_json j;
  ordered_json params = params_json(a);
  params["n"] = n;
  params["mode"] = to_string(result.mode);
  params["vNominal"] = result.v_nominal;
  params["v1"] = result.partition.v1();
  params["v2"] = result.partition.v2();
  params["v"] = result.partition.v();
  j["params"] = params;
  j["layout"] = to_string(result.layout);
  j["enumeration"] = to_string(result.enumeration);

  const BucketStats& s = result.stats;
  ordered_json stats;
  stats["runs"] = s.runs;
  stats["rejectedRuns"] = s.rejected_runs;
  stats["runsWithUncheckedBlock"] = s.runs_with_unchecked;
  stats["insertions"] = s.insertions;
  stats["buckets"] = s.buckets;
  stats["multiMemberBuckets"] = s.multi_member_buckets;
  stats["largestBucket"] = s.largest_bucket;
  stats["splicesSimulated"] = s.splices_simulated;
  stats["X0"] = s.x0;
  stats["X1"] = s.x1;
  stats["X2"] = s.x2;
  stats["X0Block"] = s.x0_block ? ordered_json(to_string(*s.x0_block)) : ordered_json(nullptr);
  stats["X0Floor"] = s.x0_floor;
  stats["vacuous"] = s.vacuous;
  stats["reason"] = result.reason;
  j["bucketStats"] = stats;

  if (result.witness) {
    const FoolingWitness& w = *result.witness;
    ordered_json wj;
    wj["I"] = w.i.mask();
    wj["Iprime"] = w.iprime.mask();
    wj["bhat"] = to_string(w.bhat);
    wj["accepted"] = w.spliced_run.accepted;
    wj["oracle"] = w.oracle_disjoint;
    wj["steps"] = w.spliced_run.steps;
    wj["spliceReport"] = splice_json(w.splice);
    j["witness"] = wj;
  } else {
    j["witness"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string bounds_report_json(const BoundsReport& report) {
  return bounds_json(report).dump(2) + "\n";
}

std::string remark_report_json(const RemarkReport& report) {
  ordered_json j;
  auto entries = ordered_json::array();
  for (const RemarkEntry& e : report.entries) {
    ordered_json ej;
    ej["n"] = e.n;
    ej["kf"] = e.kf;
    ej["premise"] = e.premise;
    ej["bound"] = bounds_json(e.bound);
    ej["violation"] = e.violation;
    entries.push_back(ej);
  }
  j["entries"] = entries;
  auto summaries = ordered_json::array();
  for (const RemarkSummary& s : report.summaries) {
    ordered_json sj;
    sj["kf"] = s.kf;
    sj["smallestN"] = s.smallest_n ? ordered_json(*s.smallest_n) : ordered_json(nullptr);
    summaries.push_back(sj);
  }
  j["summaries"] = summaries;
  j["anyViolation"] = report.any_violation();
  return j.dump(2) + "\n";
}

std::string sweep_report_json(const Automaton& a, const SweepReport& report) {
  ordered_json j;
  j["params"] = params_json(a);
  j["family"] = report.family;
  j["n"] = report.n;
  j["total"] = report.total;
  j["agree"] = report.agree;
  j["falseAccepts"] = report.false_accepts;
  j["falseRejects"] = report.false_rejects;
  j["reachableStates"] = report.reachable_states;
  auto dis = ordered_json::array();
  for (const Disagreement& d : report.disagreements) {
    ordered_json dj;
    dj["s"] = format_stream(d.s);
    dj["t"] = format_stream(d.t);
    dj["accepted"] = d.accepted;
    dj["oracle"] = d.disjoint;
    dis.push_back(dj);
  }
  j["disagreements"] = dis;
  return j.dump(2) + "\n";
}

}  // namespace mp2s
