#pragma once

#include <string>

#include "mp2s/bounds.hpp"
#include "mp2s/foolbox.hpp"
#include "mp2s/sweep.hpp"

namespace mp2s {

// Machine-readable reports, pretty-printed JSON with stable key order.

// Keys: params, layout, enumeration, bucketStats, witness.
std::string fooling_report_json(const Automaton& a, int n,
                                const FoolingResult& result);

// Keys: mode, n, m_log2, kf, kb, k, v, lhs, rhs, ruledOut, margin.
std::string bounds_report_json(const BoundsReport& report);

std::string remark_report_json(const RemarkReport& report);

std::string sweep_report_json(const Automaton& a, const SweepReport& report);

}  // namespace mp2s
