#include "mp2s/builders.hpp"

#include <bit>
#include <memory>
#include <unordered_set>

#include "mp2s/engine.hpp"
#include "mp2s/errors.hpp"

namespace mp2s {

namespace {

constexpr std::uint64_t kRejecting = ~std::uint64_t{0};

std::uint64_t item_bit(const DataItem& item, int n) {
  if (item.index < 1 || item.index > static_cast<std::uint32_t>(n)) {
    throw InvalidTransition("item " + to_string(item) + " is outside D_" +
                            std::to_string(n));
  }
  const unsigned shift = 2 * (item.index - 1) + (item.kind == ItemKind::b ? 1 : 0);
  return std::uint64_t{1} << shift;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// SeenSubset(X) for X a subset of `allowed` with |X| <= n, plus Rejecting.
class SeenSubsetSpace final : public StateSpace {
 public:
  SeenSubsetSpace(int n, std::uint64_t allowed) : n_(n), allowed_(allowed) {}

  std::uint64_t size() const override {
    const auto width = static_cast<unsigned>(std::popcount(allowed_));
    std::uint64_t total = 1;
    for (unsigned j = 0; j <= width && j <= static_cast<unsigned>(n_); ++j) {
      total += binomial(width, j);
    }
    return total;
  }

  bool contains(State s) const override {
    if (s.code == kRejecting) return true;
    return (s.code & ~allowed_) == 0 && std::popcount(s.code) <= n_;
  }

  std::string name(State s) const override {
    if (s.code == kRejecting) return "Rejecting";
    std::string text = "{";
    for (int i = 1; i <= n_; ++i) {
      for (ItemKind kind : {ItemKind::a, ItemKind::b}) {
        const DataItem item{kind, static_cast<std::uint32_t>(i)};
        if (s.code & item_bit(item, n_)) {
          if (text.size() > 1) text += ',';
          text += to_string(item);
        }
      }
    }
    return text + "}";
  }

  void for_each(const std::function<void(State)>& visit) const override {
    // Submasks of `allowed`, ascending.
    std::uint64_t sub = 0;
    while (true) {
      if (std::popcount(sub) <= n_) visit(State{sub});
      if (sub == allowed_) break;
      sub = (sub - allowed_) & allowed_;
    }
    visit(State{kRejecting});
  }

 private:
  int n_;
  std::uint64_t allowed_;
};

Automaton build_collecting(int n, std::uint64_t allowed, std::string desc) {
  auto space = std::make_shared<const SeenSubsetSpace>(n, allowed);
  const AutomatonParams params{2ull * static_cast<std::uint64_t>(n),
                               std::uint64_t{1} << (2 * n), 1, 0};
  // Heads: 0 = S forward, 1 = T forward.
  auto delta = [n, allowed](State s, const SymbolView& view) -> Transition {
    Transition tr{s, AdvanceMask{Move::stay, Move::stay}};
    if (view[0]) {
      if (s.code != kRejecting) {
        tr.next.code |= item_bit(*view[0], n) & allowed;
      }
      tr.mask[0] = Move::advance;
    } else if (view[1]) {
      if (s.code != kRejecting && (s.code & item_bit(*view[1], n))) {
        tr.next.code = kRejecting;
      }
      tr.mask[1] = Move::advance;
    }
    return tr;
  };
  return make_automaton(
      params, space, State{0}, [](State s) { return s.code != kRejecting; },
      delta, std::move(desc));
}

std::uint64_t index_bits(const IndexSet& set) {
  std::uint64_t bits = 0;
  for (int i : set.members()) bits |= std::uint64_t{3} << (2 * (i - 1));
  return bits;
}

// build_sqrt state codes.
constexpr std::uint64_t kScanning = 0;
// Phase1(p) has code p for 1 <= p <= n - r; Found is n - r + 1.

class SqrtSpace final : public StateSpace {
 public:
  SqrtSpace(int n, int r) : phase1_(static_cast<std::uint64_t>(n - r)) {}

  std::uint64_t size() const override { return phase1_ + 2; }
  bool contains(State s) const override { return s.code <= phase1_ + 1; }
  std::string name(State s) const override {
    if (s.code == kScanning) return "Scanning";
    if (s.code == phase1_ + 1) return "Found";
    if (s.code <= phase1_) return "Phase1(" + std::to_string(s.code) + ")";
    return "<invalid:" + std::to_string(s.code) + ">";
  }
  void for_each(const std::function<void(State)>& visit) const override {
    for (std::uint64_t c = 0; c <= phase1_ + 1; ++c) visit(State{c});
  }

 private:
  std::uint64_t phase1_;
};

}  // namespace

std::optional<int> exact_sqrt(int n) {
  if (n < 0) return std::nullopt;
  int r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return std::nullopt;
  return r;
}

Automaton build_trivial(int n) {
  if (n < 1 || n > 31) {
    throw InvalidSize("build_trivial supports 1 <= n <= 31, got " +
                      std::to_string(n));
  }
  const std::uint64_t all = (std::uint64_t{1} << (2 * n)) - 1;
  return build_collecting(n, all, "trivial(n=" + std::to_string(n) + ")");
}

Automaton build_crippled(int n, const IndexSet& remembered) {
  if (n < 1 || n > 31) {
    throw InvalidSize("build_crippled supports 1 <= n <= 31, got " +
                      std::to_string(n));
  }
  if (remembered.n() != n) {
    throw InvalidSpec("remembered set must range over {1.." +
                      std::to_string(n) + "}");
  }
  if (remembered.size() == static_cast<std::size_t>(n)) {
    throw InvalidSpec("remembering every index gives the trivial automaton");
  }
  return build_collecting(n, index_bits(remembered),
                          "crippled(n=" + std::to_string(n) +
                              ",remembered=" + remembered.mask() + ")");
}

Automaton build_sqrt(int n) {
  if (n < 1) throw InvalidSize("build_sqrt needs n >= 1");
  const auto root = exact_sqrt(n);
  if (!root) {
    throw NotPerfectSquare("build_sqrt needs a perfect square, got " +
                           std::to_string(n));
  }
  const int r = *root;
  const auto last_phase1 = static_cast<std::uint64_t>(n - r);
  const State found{last_phase1 + 1};
  // Working state of sub-phase q (1-based).
  const State marker_odd{kScanning};
  const State marker_even{1};

  auto space = std::make_shared<const SqrtSpace>(n, r);
  const AutomatonParams params{2ull * static_cast<std::uint64_t>(n),
                               static_cast<std::uint64_t>(n + 2), r, 0};
  const int k = params.k();

  auto delta = [=](State s, const SymbolView& view) -> Transition {
    Transition tr{s, uniform_mask(k, Move::stay)};
    auto flush = [&] {
      for (int h = 0; h < k; ++h) {
        if (view[static_cast<std::size_t>(h)]) tr.mask[static_cast<std::size_t>(h)] = Move::advance;
      }
    };
    if (s == found) {
      flush();
      return tr;
    }
    int t_done = 0;
    for (int h = r; h < 2 * r; ++h) {
      if (!view[static_cast<std::size_t>(h)]) ++t_done;
    }

    if (t_done == 0 && s.code >= 1 && s.code <= last_phase1) {
      // Phase 1: heads whose target lies beyond the current position move.
      const auto pos = static_cast<int>(s.code);
      for (int i = 0; i < r; ++i) {
        if (i * r + 1 > pos) tr.mask[static_cast<std::size_t>(i)] = Move::advance;
      }
      tr.next.code = pos + 1 == n - r + 1 ? kScanning : s.code + 1;
      return tr;
    }

    if (t_done == r) {
      flush();
      tr.next = marker_odd;
      return tr;
    }

    const int sub_phase = t_done + 1;
    const State working = sub_phase % 2 == 1 ? marker_odd : marker_even;
    if (s != working) {
      // Shift the S-heads once before sub-phase `sub_phase` starts.
      for (int i = 0; i < r; ++i) {
        if (view[static_cast<std::size_t>(i)]) tr.mask[static_cast<std::size_t>(i)] = Move::advance;
      }
      tr.next = working;
      return tr;
    }

    const auto active = static_cast<std::size_t>(r + t_done);
    const DataItem& probe = *view[active];
    for (int i = 0; i < r; ++i) {
      const Symbol& under = view[static_cast<std::size_t>(i)];
      if (under && *under == probe) tr.next = found;
    }
    tr.mask[active] = Move::advance;
    return tr;
  };

  return make_automaton(
      params, space, r == 1 ? State{kScanning} : State{1},
      [](State s) { return s.code == kScanning; }, delta,
      "sqrt(n=" + std::to_string(n) + ")");
}

std::uint64_t count_reachable_states(
    const Automaton& a,
    const std::vector<std::pair<Stream, Stream>>& instances) {
  std::unordered_set<State, StateHash> seen;
  for (const auto& [s, t] : instances) {
    const RunResult result = run(a, s, t, true);
    seen.insert(a.start());
    for (const StepRecord& rec : *result.trace) seen.insert(rec.after.state);
  }
  return seen.size();
}

}  // namespace mp2s
