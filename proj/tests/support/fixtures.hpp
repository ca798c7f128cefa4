#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "mp2s/model.hpp"
#include "mp2s/table.hpp"

namespace mp2s::testing {

inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// A pure, pseudo-random head scheduler: next state and mask are a hash of
// (seed, state, view). At least one head that is not on END advances each
// step, so runs always terminate. Used to exercise properties that must hold
// for every automaton.
inline Automaton make_hashed_automaton(int kf, int kb, std::uint64_t m,
                                       std::uint64_t seed, std::uint64_t domain = 64) {
  std::vector<std::string> names;
  for (std::uint64_t q = 0; q < m; ++q) names.push_back("q" + std::to_string(q));
  auto space = std::make_shared<const IndexedStateSpace>(names);
  const AutomatonParams params{domain, m, kf, kb};
  const int k = params.k();
  auto delta = [=](State s, const SymbolView& view) -> Transition {
    std::uint64_t h = mix(seed ^ (s.code * 0x100000001b3ull));
    for (const Symbol& sym : view) {
      const std::uint64_t code =
          sym ? (2ull * sym->index + (sym->kind == ItemKind::b ? 1 : 0)) : 0;
      h = mix(h ^ code);
    }
    Transition tr{State{h % m}, uniform_mask(k, Move::stay)};
    std::uint64_t bits = mix(h);
    bool moved = false;
    for (int i = 0; i < k; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if ((bits >> i) & 1u) {
        tr.mask[idx] = Move::advance;
        if (view[idx]) moved = true;
      }
    }
    if (!moved) {
      std::vector<int> live;
      for (int i = 0; i < k; ++i) {
        if (view[static_cast<std::size_t>(i)]) live.push_back(i);
      }
      if (!live.empty()) {
        tr.mask[static_cast<std::size_t>(live[(bits >> 32) % live.size()])] = Move::advance;
      }
    }
    return tr;
  };
  return make_automaton(params, space, State{0},
                        [](State s) { return s.code % 2 == 0; }, delta,
                        "hashed(seed=" + std::to_string(seed) + ")");
}

// Uniformly random complete transition table. `advance_bias` is the
// probability that a mask letter is A.
inline TransitionTable random_table(std::mt19937_64& rng, std::uint32_t n,
                                    std::uint64_t m, int kf, int kb,
                                    double advance_bias = 0.5) {
  std::vector<std::string> names;
  for (std::uint64_t q = 0; q < m; ++q) names.push_back("q" + std::to_string(q));
  TransitionTable table = make_empty_table(n, m, kf, kb, names);
  std::uniform_int_distribution<std::uint64_t> pick_state(0, m - 1);
  std::bernoulli_distribution adv(advance_bias);
  std::bernoulli_distribution coin(0.5);
  table.start = pick_state(rng);
  for (std::uint64_t q = 0; q < m; ++q) table.accepting[q] = coin(rng);
  const int k = table.params.k();
  for (auto& row : table.rows) {
    Transition tr;
    tr.next = State{pick_state(rng)};
    for (int h = 0; h < k; ++h) tr.mask.push_back(adv(rng) ? Move::advance : Move::stay);
    row = std::move(tr);
  }
  return table;
}

inline Stream random_stream(std::mt19937_64& rng, std::uint32_t n, int length) {
  std::uniform_int_distribution<std::uint32_t> index(1, n);
  std::bernoulli_distribution coin(0.5);
  std::vector<DataItem> items;
  for (int p = 0; p < length; ++p) {
    items.push_back(DataItem{coin(rng) ? ItemKind::a : ItemKind::b, index(rng)});
  }
  return Stream(std::move(items));
}

// Independent disjointness check: nested loops over tokens.
inline bool brute_force_disjoint(const Stream& s, const Stream& t) {
  for (const DataItem& x : s.items()) {
    for (const DataItem& y : t.items()) {
      if (x.kind == y.kind && x.index == y.index) return false;
    }
  }
  return true;
}

}  // namespace mp2s::testing
