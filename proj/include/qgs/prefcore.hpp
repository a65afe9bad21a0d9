#pragma once

// Encodings of linear orders, profiles, pairwise columns and the
// {0,1,2}^n decomposition of a three-alternative profile.
//
// Orders are stored top-first. Order indices follow lexicographic
// enumeration of the ranking sequence; profile indices put voter 0 in the
// least significant digit.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgs {

using Alt = std::uint8_t;
using OrderIndex = std::uint32_t;

/// Largest number of alternatives supported by the order tables.
inline constexpr int kMaxAlternatives = 8;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t factorial(int m);

/// (m!)^n, throwing DomainError when it does not fit in 64 bits.
std::uint64_t profile_count(int n, int m);

/// 3^n and 2^n helpers.
std::uint64_t pow3(int n);
inline std::uint64_t pow2(int n) { return std::uint64_t{1} << n; }

class LinearOrder {
 public:
  LinearOrder() = default;
  /// Throws DomainError unless `ranking` is a permutation of 0..m-1.
  explicit LinearOrder(std::vector<Alt> ranking);

  int size() const { return static_cast<int>(ranking_.size()); }
  std::span<const Alt> ranking() const { return ranking_; }
  Alt top() const { return ranking_.front(); }
  Alt bottom() const { return ranking_.back(); }
  int position(Alt a) const;
  bool prefers(Alt a, Alt b) const { return position(a) < position(b); }

  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;

 private:
  std::vector<Alt> ranking_;
};

LinearOrder order_from_index(std::uint64_t k, int m);
OrderIndex order_to_index(const LinearOrder& order);

/// Precomputed data for all m! orders: rankings, positions and pairwise bits.
class OrderTable {
 public:
  explicit OrderTable(int m);

  int alternatives() const { return m_; }
  std::uint32_t size() const { return count_; }
  Alt at(OrderIndex o, int rank) const { return ranking_[o * m_ + rank]; }
  Alt top(OrderIndex o) const { return at(o, 0); }
  Alt bottom(OrderIndex o) const { return at(o, m_ - 1); }
  int position(OrderIndex o, Alt a) const { return position_[o * m_ + a]; }
  bool prefers(OrderIndex o, Alt a, Alt b) const { return position(o, a) < position(o, b); }
  /// Bit p set iff the first alternative of lexicographic pair p is ranked
  /// above the second.
  std::uint32_t pair_bits(OrderIndex o) const { return pair_bits_[o]; }
  /// Index of the order whose ranking is `ranking`.
  OrderIndex index_of(std::span<const Alt> ranking) const;
  /// Index of π∘o, where π relabels alternative a as perm[a].
  OrderIndex relabel(OrderIndex o, std::span<const Alt> perm) const;

 private:
  int m_;
  std::uint32_t count_;
  std::vector<Alt> ranking_;
  std::vector<std::uint8_t> position_;
  std::vector<std::uint32_t> pair_bits_;
};

/// Shared immutable table for m alternatives (2 <= m <= kMaxAlternatives).
const OrderTable& order_table(int m);

/// Number of unordered pairs and the lexicographic index of a < b.
inline int pair_count(int m) { return m * (m - 1) / 2; }
int pair_index(int m, Alt a, Alt b);
std::pair<Alt, Alt> pair_at(int m, int p);

class Profile {
 public:
  Profile() = default;
  /// Throws DomainError on an empty voter list or mixed m.
  explicit Profile(std::vector<LinearOrder> voters);

  int voters() const { return static_cast<int>(voters_.size()); }
  int alternatives() const { return voters_.empty() ? 0 : voters_.front().size(); }
  const LinearOrder& voter(int v) const { return voters_.at(v); }
  std::vector<OrderIndex> order_indices() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<LinearOrder> voters_;
};

std::uint64_t profile_to_index(const Profile& p);
Profile profile_from_index(std::uint64_t index, int n, int m);

/// Decodes a profile index into per-voter order indices.
void decode_profile(std::uint64_t index, int m, std::span<OrderIndex> out);
std::uint64_t encode_profile(std::span<const OrderIndex> orders, int m);

/// Bit v set iff voter v prefers a over b. Limited to n <= 64.
struct PairwiseColumn {
  int n = 0;
  std::uint64_t bits = 0;

  bool bit(int v) const { return (bits >> v) & 1U; }
  PairwiseColumn complement() const;
  friend bool operator==(const PairwiseColumn&, const PairwiseColumn&) = default;
};

PairwiseColumn pairwise_column(const Profile& p, Alt a, Alt b);

/// Column for pair (a, b) read straight from order indices.
std::uint64_t column_bits(const OrderTable& table, std::span<const OrderIndex> orders, Alt a,
                          Alt b);

/// Digit i is the position of the third alternative relative to {a, b} in
/// voter i's order: 0 above both, 1 between, 2 below both.
struct TernaryVector {
  std::vector<std::uint8_t> digits;

  std::uint64_t index() const;
  static TernaryVector from_index(std::uint64_t index, int n);
  friend bool operator==(const TernaryVector&, const TernaryVector&) = default;
};

/// Third alternative of a three-alternative pair.
inline Alt third_alternative(Alt a, Alt b) { return static_cast<Alt>(3 - a - b); }

std::pair<PairwiseColumn, TernaryVector> decompose(const Profile& p, Alt a, Alt b);
Profile compose(const PairwiseColumn& column, const TernaryVector& ternary, Alt a, Alt b);

/// Order index (m = 3) of the ranking encoded by a column bit and a digit.
OrderIndex compose_order(bool a_over_b, int digit, Alt a, Alt b);

}  // namespace qgs
