#include "mp2s/disjointness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <set>

#include "mp2s/errors.hpp"

namespace mp2s {

DisjDomain make_domain(int n) {
  if (n < 1) throw InvalidSize("D_n needs n >= 1, got " + std::to_string(n));
  DisjDomain domain;
  domain.n = n;
  for (int i = 1; i <= n; ++i) {
    domain.items.push_back(item_a(static_cast<std::uint32_t>(i)));
    domain.items.push_back(item_b(static_cast<std::uint32_t>(i)));
  }
  return domain;
}

IndexSet::IndexSet(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 0 || n > kMaxN) {
    throw InvalidSize("index sets support 0 <= n <= 64, got " +
                      std::to_string(n));
  }
  if ((bits & ~universe()) != 0) {
    throw InvalidSize("index set has members outside {1.." +
                      std::to_string(n) + "}");
  }
}

IndexSet IndexSet::from_list(int n, const std::vector<int>& members) {
  std::uint64_t bits = 0;
  for (int i : members) {
    if (i < 1 || i > n) {
      throw InvalidSize("index " + std::to_string(i) + " outside {1.." +
                        std::to_string(n) + "}");
    }
    bits |= std::uint64_t{1} << (i - 1);
  }
  return {n, bits};
}

IndexSet IndexSet::from_mask(std::string_view mask) {
  if (mask.size() > static_cast<std::size_t>(kMaxN)) {
    throw InvalidSize("mask longer than 64 positions");
  }
  std::uint64_t bits = 0;
  for (std::size_t p = 0; p < mask.size(); ++p) {
    if (mask[p] == '1') {
      bits |= std::uint64_t{1} << p;
    } else if (mask[p] != '0') {
      throw ParseError("mask must consist of 0/1: '" + std::string(mask) + "'");
    }
  }
  return {static_cast<int>(mask.size()), bits};
}

IndexSet IndexSet::parse(std::string_view text, int n) {
  if (text.empty() || text == "-") return {n, 0};
  const bool binary = std::all_of(text.begin(), text.end(),
                                  [](char c) { return c == '0' || c == '1'; });
  if (binary && static_cast<int>(text.size()) == n) return from_mask(text);
  std::vector<int> members;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view part = text.substr(start, comma - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw ParseError("bad index set '" + std::string(text) +
                       "': use a 0/1 mask of length n or a list like 1,3");
    }
    members.push_back(value);
    start = comma + 1;
  }
  return from_list(n, members);
}

std::size_t IndexSet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string IndexSet::mask() const {
  std::string out;
  for (int i = 1; i <= n_; ++i) out += contains(i) ? '1' : '0';
  return out;
}

std::string IndexSet::list() const {
  std::string out;
  for (int i : members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

std::vector<DataItem> subset_items(const IndexSet& set) {
  std::vector<DataItem> items;
  for (int i = 1; i <= set.n(); ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    items.push_back(set.contains(i) ? item_a(idx) : item_b(idx));
  }
  return items;
}

bool is_disjoint_oracle(const Stream& s, const Stream& t) {
  const std::set<DataItem> seen(s.items().begin(), s.items().end());
  return std::none_of(t.items().begin(), t.items().end(),
                      [&](const DataItem& item) { return seen.count(item) > 0; });
}

std::vector<Stream> enumerate_streams(int n, int length) {
  const DisjDomain domain = make_domain(n);
  const std::size_t base = domain.items.size();
  std::vector<Stream> out;
  std::vector<std::size_t> digits(static_cast<std::size_t>(length), 0);
  while (true) {
    std::vector<DataItem> items;
    items.reserve(digits.size());
    for (std::size_t d : digits) items.push_back(domain.items[d]);
    out.emplace_back(std::move(items));
    // Increment the last digit first so streams come out lexicographically.
    std::size_t pos = digits.size();
    while (pos > 0) {
      --pos;
      if (++digits[pos] < base) break;
      digits[pos] = 0;
      if (pos == 0) return out;
    }
    if (digits.empty()) return out;
  }
}

std::string to_string(const Layout& layout) {
  if (layout.kind == Layout::Kind::reversed) return "reversed";
  return "pi:" + std::to_string(layout.v1);
}

Layout parse_layout(std::string_view text) {
  if (text == "reversed") return Layout::reversed();
  if (text.rfind("pi:", 0) == 0) {
    std::string_view rest = text.substr(3);
    int v1 = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v1);
    if (ec == std::errc{} && ptr == rest.data() + rest.size() && v1 >= 1) {
      return Layout::pi(v1);
    }
  }
  throw ParseError("bad layout '" + std::string(text) +
                   "': expected 'reversed' or 'pi:<v1>'");
}

PermutationPi::PermutationPi(int n, int v1) : n_(n), v1_(v1) {
  if (n < 1) throw InvalidSize("pi needs n >= 1");
  if (v1 < 1 || n % v1 != 0) {
    throw DivisibilityError("pi needs v1 >= 1 dividing n (n=" +
                            std::to_string(n) + ", v1=" + std::to_string(v1) +
                            ")");
  }
  const int width = n / v1;
  image_.resize(static_cast<std::size_t>(n));
  for (int j = 1; j <= v1; ++j) {
    for (int s = 1; s <= width; ++s) {
      image_[static_cast<std::size_t>((j - 1) * width + s - 1)] =
          (v1 - j) * width + s;
    }
  }
}

PermutationPi permutation_pi(int n, int v1) { return PermutationPi(n, v1); }

SubsetFamilyInstance build_instance(const IndexSet& i1, const IndexSet& i2,
                                    int n, const Layout& layout) {
  if (n < 1) throw InvalidSize("instance needs n >= 1");
  if (i1.n() != n || i2.n() != n) {
    throw InvalidSize("index sets must range over {1.." + std::to_string(n) +
                      "}");
  }
  SubsetFamilyInstance inst;
  inst.n = n;
  inst.i1 = i1;
  inst.i2 = i2;
  inst.layout = layout;
  inst.t_position.assign(static_cast<std::size_t>(n) + 1, 0);
  inst.t_index.assign(static_cast<std::size_t>(n) + 1, 0);
  if (layout.kind == Layout::Kind::reversed) {
    for (int i = 1; i <= n; ++i) inst.t_position[static_cast<std::size_t>(i)] = n - i + 1;
  } else {
    const PermutationPi pi(n, layout.v1);
    for (int i = 1; i <= n; ++i) inst.t_position[static_cast<std::size_t>(i)] = pi(i);
  }
  for (int i = 1; i <= n; ++i) {
    inst.t_index[static_cast<std::size_t>(inst.t_position[static_cast<std::size_t>(i)])] = i;
  }

  inst.s = Stream(subset_items(i1));
  const std::vector<DataItem> a2 = subset_items(i2);
  std::vector<DataItem> t_items(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    t_items[static_cast<std::size_t>(inst.t_position_of(i) - 1)] =
        a2[static_cast<std::size_t>(i - 1)];
  }
  inst.t = Stream(std::move(t_items));
  return inst;
}

std::vector<IndexSet> all_index_sets(int n) {
  if (n < 0 || n > 30) throw InvalidSize("all_index_sets supports n <= 30");
  std::vector<IndexSet> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    out.emplace_back(n, bits);
  }
  return out;
}

}  // namespace mp2s
