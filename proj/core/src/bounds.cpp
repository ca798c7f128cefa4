#include "mp2s/bounds.hpp"

#include <cmath>
#include <map>

#include "mp2s/errors.hpp"

namespace mp2s {

BoundsReport lower_bound_inequality(std::uint64_t n, double log2m, int kf,
                                    int kb, ProofMode mode) {
  if (n < 1) throw InvalidParams("n must be at least 1");
  if (!(log2m >= 0)) throw InvalidParams("m must be at least 1 (lg m >= 0)");
  if (kf < 0 || kb < 0) throw InvalidParams("head counts must be non-negative");
  if (mode == ProofMode::forward && kb != 0) {
    throw InvalidParams("forward mode requires kb = 0");
  }
  BoundsReport r;
  r.mode = mode;
  r.n = n;
  r.log2m = log2m;
  r.kf = kf;
  r.kb = kb;
  r.k = 2 * kf + 2 * kb;
  const std::int64_t f = kf;
  const std::int64_t b = kb;
  if (mode == ProofMode::forward) {
    r.v1 = f * f + 1;
    r.v2 = 1;
  } else {
    r.v1 = f * f + b * b + 1;
    r.v2 = 2 * f * b + 1;
  }
  r.v = r.v1 * r.v2;
  const double k = r.k;
  const auto v = static_cast<double>(r.v);
  const auto nn = static_cast<double>(n);
  r.lhs = k * k * v * std::log2(nn + 1) + k * v * log2m + v * (1 + std::log2(v));
  r.rhs = nn;
  r.margin = r.rhs - r.lhs;
  r.ruled_out = r.lhs <= r.rhs;
  return r;
}

namespace {

bool remark_premise(std::uint64_t n, int kf) {
  const auto nn = static_cast<double>(n);
  return 4.0 * kf <= std::pow(nn / std::log2(nn), 0.25);
}

double remark_log2m(std::uint64_t n, int kf) {
  const double f = kf;
  return static_cast<double>(n) / (4.0 * f * (f * f + 1));
}

}  // namespace

bool RemarkReport::any_violation() const {
  for (const RemarkEntry& e : entries) {
    if (e.violation) return true;
  }
  return false;
}

RemarkReport remark_consistency(
    const std::vector<std::pair<std::uint64_t, int>>& samples,
    std::uint64_t scan_limit) {
  RemarkReport report;
  std::map<int, std::optional<std::uint64_t>> smallest;
  for (const auto& [n, kf] : samples) {
    if (kf < 1) throw InvalidParams("remark samples need kf >= 1");
    if (n < 2) throw InvalidParams("remark samples need n >= 2");
    RemarkEntry e;
    e.n = n;
    e.kf = kf;
    e.premise = remark_premise(n, kf);
    e.bound = lower_bound_inequality(n, remark_log2m(n, kf), kf, 0,
                                     ProofMode::forward);
    e.violation = e.premise && !e.bound.ruled_out;
    report.entries.push_back(e);
    smallest.emplace(kf, std::nullopt);
  }
  for (auto& [kf, first] : smallest) {
    for (std::uint64_t n = 2; n <= scan_limit; ++n) {
      if (remark_premise(n, kf) &&
          lower_bound_inequality(n, remark_log2m(n, kf), kf, 0,
                                 ProofMode::forward)
              .ruled_out) {
        first = n;
        break;
      }
    }
    report.summaries.push_back(RemarkSummary{kf, first});
  }
  return report;
}

BoundsReport fifth_root_remark(std::uint64_t n) {
  const auto nn = static_cast<double>(n);
  const int kf = static_cast<int>(std::ceil(std::pow(nn, 0.2) - 1e-9));
  return lower_bound_inequality(n, std::cbrt(nn), kf, 0, ProofMode::forward);
}

}  // namespace mp2s
