#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mp2s/model.hpp"

namespace mp2s {

struct DisjDomain {
  int n = 1;
  std::vector<DataItem> items;  // a_1, b_1, ..., a_n, b_n
};

// Throws InvalidSize when n < 1.
DisjDomain make_domain(int n);

// Subset of {1..n}, n <= 64. Bit i-1 stands for index i.
class IndexSet {
 public:
  static constexpr int kMaxN = 64;

  IndexSet() = default;
  IndexSet(int n, std::uint64_t bits);

  static IndexSet from_list(int n, const std::vector<int>& members);
  // Big-endian position string: "1010" = {1, 3}.
  static IndexSet from_mask(std::string_view mask);
  // Accepts a mask of length n or a comma separated list ("1,3"); an empty
  // string or "-" is the empty set.
  static IndexSet parse(std::string_view text, int n);

  int n() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool contains(int i) const noexcept {
    return i >= 1 && i <= n_ && ((bits_ >> (i - 1)) & 1u);
  }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return bits_ == 0; }

  IndexSet complement() const noexcept { return {n_, universe() & ~bits_}; }
  IndexSet minus(const IndexSet& other) const noexcept {
    return {n_, bits_ & ~other.bits_};
  }
  IndexSet intersect(const IndexSet& other) const noexcept {
    return {n_, bits_ & other.bits_};
  }
  IndexSet symmetric_difference(const IndexSet& other) const noexcept {
    return {n_, bits_ ^ other.bits_};
  }
  bool subset_of(const IndexSet& other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }

  std::vector<int> members() const;
  std::string mask() const;
  std::string list() const;

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::uint64_t universe() const noexcept {
    return n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
  }

  int n_ = 0;
  std::uint64_t bits_ = 0;
};

// A^I = {a_i : i in I} u {b_i : i not in I}, sorted by index.
std::vector<DataItem> subset_items(const IndexSet& set);

// True iff the item sets of s and t share no element. Repeats and order are
// ignored; the streams need not come from the subset family.
bool is_disjoint_oracle(const Stream& s, const Stream& t);

// Every stream of length `length` over D_n, in lexicographic code order.
std::vector<Stream> enumerate_streams(int n, int length);

struct Layout {
  enum class Kind : std::uint8_t { reversed, pi };
  Kind kind = Kind::reversed;
  int v1 = 1;  // block count, pi layout only

  static Layout reversed() { return {Kind::reversed, 1}; }
  static Layout pi(int v1) { return {Kind::pi, v1}; }

  friend bool operator==(const Layout&, const Layout&) = default;
};

// "reversed" / "pi:<v1>".
std::string to_string(const Layout& layout);
Layout parse_layout(std::string_view text);

// pi((j-1)n/v1 + s) = (v1-j)n/v1 + s.
class PermutationPi {
 public:
  PermutationPi(int n, int v1);

  int n() const noexcept { return n_; }
  int v1() const noexcept { return v1_; }
  int operator()(int i) const { return image_.at(static_cast<std::size_t>(i - 1)); }

 private:
  int n_;
  int v1_;
  std::vector<int> image_;
};

// Throws DivisibilityError unless v1 >= 1 and v1 | n.
PermutationPi permutation_pi(int n, int v1);

// D(I1, I2) = (S^{I1}, T^{I2}).
struct SubsetFamilyInstance {
  int n = 0;
  IndexSet i1;
  IndexSet i2;
  Layout layout;
  Stream s;
  Stream t;
  // 1-based: t_position[i] is the T position that carries the index-i item;
  // t_index[q] is the index of the item at T position q. Entry 0 unused.
  std::vector<int> t_position;
  std::vector<int> t_index;

  int s_position_of(int index) const noexcept { return index; }
  int s_index_at(int pos) const noexcept { return pos; }
  int t_position_of(int index) const { return t_position.at(static_cast<std::size_t>(index)); }
  int t_index_at(int pos) const { return t_index.at(static_cast<std::size_t>(pos)); }
};

// Throws DivisibilityError for a pi layout with v1 not dividing n and
// InvalidSize when the index sets do not range over {1..n}.
SubsetFamilyInstance build_instance(const IndexSet& i1, const IndexSet& i2,
                                    int n, const Layout& layout);

// All 2^n subsets of {1..n}, ascending by bit pattern. n <= 30.
std::vector<IndexSet> all_index_sets(int n);

}  // namespace mp2s
