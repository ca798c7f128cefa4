#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mp2s/bounds.hpp"
#include "mp2s/builders.hpp"
#include "mp2s/disjointness.hpp"
#include "mp2s/engine.hpp"
#include "mp2s/errors.hpp"
#include "mp2s/foolbox.hpp"
#include "mp2s/report.hpp"
#include "mp2s/sweep.hpp"
#include "mp2s/table.hpp"

namespace mp2s::cli {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

// JSON goes to --out, or to stdout when no path was given; in the latter case
// the one-line summary moves to stderr so stdout stays parseable.
struct Output {
  std::string path;
  std::ostream& out;
  std::ostream& err;

  std::ostream& summary() const { return path.empty() || path == "-" ? err : out; }

  void write(const std::string& json) const {
    if (path.empty() || path == "-") {
      out << json;
      return;
    }
    std::ofstream file(path);
    if (!file) throw InputError("cannot write '" + path + "'");
    file << json;
  }
};

FoolLayout parse_fool_layout(std::string_view text) {
  if (text == "reversed") return FoolLayout::reversed;
  if (text == "pi") return FoolLayout::pi;
  throw ParseError("bad layout '" + std::string(text) + "': expected reversed or pi");
}

std::string format_margin(double margin) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", margin);
  return buf;
}

}  // namespace

Automaton load_automaton(std::string_view spec) {
  const auto parts = split(spec, ':');
  if (parts.size() >= 2 && parts[0] == "file") {
    const std::string path(spec.substr(5));
    return make_table_automaton(read_table_file(path));
  }
  if (parts.size() >= 3 && parts[0] == "builtin") {
    const int n = parse_int(parts[2], "n");
    if (parts[1] == "trivial" && parts.size() == 3) return build_trivial(n);
    if (parts[1] == "sqrt" && parts.size() == 3) return build_sqrt(n);
    if (parts[1] == "crippled" && parts.size() == 4) {
      const IndexSet remembered = IndexSet::from_mask(parts[3]);
      if (remembered.n() != n) {
        throw ParseError("crippled mask must have length n=" + std::to_string(n));
      }
      return build_crippled(n, remembered);
    }
  }
  throw ParseError("bad automaton '" + std::string(spec) +
                   "': expected builtin:trivial:<n>, builtin:sqrt:<n>, "
                   "builtin:crippled:<n>:<mask> or file:<path>");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and lower-bound toolkit for two-stream multi-head automata"};
  app.require_subcommand(1);

  std::string automaton_spec;
  std::string s_path;
  std::string t_path;
  std::string trace_path;
  std::string out_path;
  std::string layout_text = "reversed";
  std::string enum_text = "exhaustive";
  std::string family = "all-pairs";
  std::string i1_text;
  std::string i2_text;
  std::string s_out;
  std::string t_out;
  std::string mode_text = "forward";
  std::vector<std::string> samples;
  int n = 0;
  int kf = 0;
  int kb = 0;
  std::uint64_t bounds_n = 0;
  double log2m = 0;

  auto* simulate = app.add_subcommand("simulate", "Run an automaton on two stream files");
  simulate->add_option("--automaton", automaton_spec, "Automaton spec")->required();
  simulate->add_option("--s", s_path, "Stream file for S")->required();
  simulate->add_option("--t", t_path, "Stream file for T")->required();
  simulate->add_option("--trace", trace_path, "Write a JSON Lines trace here");

  auto* oracle = app.add_subcommand("oracle", "Decide disjointness of two stream files");
  oracle->add_option("--s", s_path, "Stream file for S")->required();
  oracle->add_option("--t", t_path, "Stream file for T")->required();

  auto* gen = app.add_subcommand("gen-instance", "Write the subset-family instance D(I1, I2)");
  gen->add_option("--n", n, "Instance size")->required();
  gen->add_option("--i1", i1_text, "I1 as mask (1010) or list (1,3)")->required();
  gen->add_option("--i2", i2_text, "I2 as mask or list; defaults to the complement of I1");
  gen->add_option("--layout", layout_text, "reversed or pi:<v1>");
  gen->add_option("--s-out", s_out, "Stream file for S (default: stdout)");
  gen->add_option("--t-out", t_out, "Stream file for T (default: stdout)");

  auto* exhaustive = app.add_subcommand("exhaustive", "Compare an automaton with the oracle");
  exhaustive->add_option("--automaton", automaton_spec, "Automaton spec")->required();
  exhaustive->add_option("--n", n, "Instance size")->required();
  exhaustive->add_option("--family", family, "all-pairs, subset-family or random");
  exhaustive->add_option("--layout", layout_text, "Layout for subset-family");
  exhaustive->add_option("--enum", enum_text, "sample:<count>:<seed> for random");
  exhaustive->add_option("--out", out_path, "JSON report path (default: stdout)");

  auto* fool = app.add_subcommand("fool", "Search for a fooling pair");
  fool->add_option("--automaton", automaton_spec, "Automaton spec")->required();
  fool->add_option("--n", n, "Instance size")->required();
  fool->add_option("--layout", layout_text, "reversed or pi");
  fool->add_option("--enum", enum_text, "exhaustive or sample:<count>:<seed>");
  fool->add_option("--out", out_path, "JSON report path (default: stdout)");

  auto* bounds = app.add_subcommand("bounds", "Evaluate the lower-bound inequality");
  bounds->add_option("--mode", mode_text, "forward or general");
  bounds->add_option("--n", bounds_n, "n")->required();
  bounds->add_option("--kf", kf, "Forward heads per stream")->required();
  bounds->add_option("--kb", kb, "Backward heads per stream");
  bounds->add_option("--log2m", log2m, "lg of the state count")->required();
  bounds->add_option("--out", out_path, "JSON report path (default: stdout)");

  auto* remarks = app.add_subcommand("remarks", "Check the forward-bound remark on samples");
  remarks->add_option("--sample", samples, "<n>:<kf>, repeatable (default 1048576:1 1048576:2)");
  remarks->add_option("--out", out_path, "JSON report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Output output{out_path, out, err};
  try {
    if (*simulate) {
      const Automaton a = load_automaton(automaton_spec);
      const Stream s = read_stream_file(s_path);
      const Stream t = read_stream_file(t_path);
      const RunResult result = run(a, s, t, !trace_path.empty());
      if (!trace_path.empty()) {
        std::ofstream file(trace_path);
        if (!file) throw InputError("cannot write '" + trace_path + "'");
        write_trace_jsonl(file, a, *result.trace);
      }
      out << (result.accepted ? "accepted" : "rejected") << '\n';
      return result.accepted ? kOk : kNegative;
    }

    if (*oracle) {
      const bool disjoint =
          is_disjoint_oracle(read_stream_file(s_path), read_stream_file(t_path));
      out << (disjoint ? "disjoint" : "intersecting") << '\n';
      return disjoint ? kOk : kNegative;
    }

    if (*gen) {
      const IndexSet i1 = IndexSet::parse(i1_text, n);
      const IndexSet i2 = i2_text.empty() ? i1.complement() : IndexSet::parse(i2_text, n);
      const SubsetFamilyInstance inst = build_instance(i1, i2, n, parse_layout(layout_text));
      auto emit = [&](const std::string& path, const Stream& stream) {
        if (path.empty() || path == "-") {
          write_stream(out, stream);
          return;
        }
        std::ofstream file(path);
        if (!file) throw InputError("cannot write '" + path + "'");
        write_stream(file, stream);
      };
      emit(s_out, inst.s);
      emit(t_out, inst.t);
      return kOk;
    }

    if (*exhaustive) {
      const Automaton a = load_automaton(automaton_spec);
      SweepReport report;
      if (family == "all-pairs") {
        report = sweep_all_pairs(a, n);
      } else if (family == "subset-family") {
        report = sweep_subset_family(a, n, parse_layout(layout_text));
      } else if (family == "random") {
        const Enumeration e = parse_enumeration(enum_text);
        if (e.kind != Enumeration::Kind::sample) {
          throw ParseError("--family random needs --enum sample:<count>:<seed>");
        }
        report = sweep_random_pairs(a, n, e.count, e.seed);
      } else {
        throw ParseError("bad family '" + family + "'");
      }
      output.write(sweep_report_json(a, report));
      output.summary() << "agree=" << report.agree << "/" << report.total
                       << " falseAccepts=" << report.false_accepts
                       << " falseRejects=" << report.false_rejects
                       << " reachableStates=" << report.reachable_states << '\n';
      return report.all_agree() ? kOk : kNegative;
    }

    if (*fool) {
      const Automaton a = load_automaton(automaton_spec);
      const FoolingResult result = fooling_search(a, n, parse_fool_layout(layout_text),
                                                  parse_enumeration(enum_text));
      output.write(fooling_report_json(a, n, result));
      if (result.witness) {
        const FoolingWitness& w = *result.witness;
        output.summary() << "witness I=" << w.i.mask() << " I'=" << w.iprime.mask()
                         << " bhat=" << to_string(w.bhat)
                         << " accepted=" << (w.spliced_run.accepted ? "true" : "false")
                         << " oracle=" << (w.oracle_disjoint ? "disjoint" : "intersecting")
                         << " splice=" << (w.splice.all_pass() ? "all-pass" : "fail")
                         << '\n';
        return kNegative;
      }
      output.summary() << "no witness: " << result.reason << '\n';
      return kOk;
    }

    if (*bounds) {
      const BoundsReport report =
          lower_bound_inequality(bounds_n, log2m, kf, kb, parse_mode(mode_text));
      output.write(bounds_report_json(report));
      output.summary() << "ruledOut=" << (report.ruled_out ? "true" : "false")
                       << " margin≈" << format_margin(report.margin) << '\n';
      return kOk;
    }

    if (*remarks) {
      std::vector<std::pair<std::uint64_t, int>> parsed;
      if (samples.empty()) samples = {"1048576:1", "1048576:2"};
      for (const std::string& sample : samples) {
        const auto parts = split(sample, ':');
        if (parts.size() != 2) throw ParseError("bad sample '" + sample + "'");
        parsed.emplace_back(static_cast<std::uint64_t>(parse_int(parts[0], "n")),
                            parse_int(parts[1], "kf"));
      }
      const RemarkReport report = remark_consistency(parsed);
      output.write(remark_report_json(report));
      for (const RemarkEntry& e : report.entries) {
        output.summary() << "n=" << e.n << " kf=" << e.kf
                         << " premise=" << (e.premise ? "true" : "false")
                         << " ruledOut=" << (e.bound.ruled_out ? "true" : "false")
                         << " margin≈" << format_margin(e.bound.margin) << '\n';
      }
      return report.any_violation() ? kNegative : kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mp2s");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mp2s::cli
