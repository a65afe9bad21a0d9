#pragma once

// Subsets of {0,1,2}^n with the directed edges 0->1, 1->2, 0->2 in each
// coordinate: upper edge borders, monotone shifting and the correlation
// checks behind the isoperimetric bound. All arithmetic is integral.

#include "qgs/prefcore.hpp"
#include "qgs/random.hpp"
#include "qgs/scf.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qgs {

/// Point index = sum_i digit_i * 3^i.
class TernarySet {
 public:
  TernarySet() = default;
  explicit TernarySet(int n);
  static TernarySet full(int n);
  static TernarySet from_points(int n, const std::vector<std::uint64_t>& points);

  int dimension() const { return n_; }
  std::uint64_t universe() const { return member_.size(); }
  bool contains(std::uint64_t point) const { return member_.at(point) != 0; }
  void insert(std::uint64_t point) { member_.at(point) = 1; }
  void erase(std::uint64_t point) { member_.at(point) = 0; }
  std::uint64_t size() const;
  std::vector<std::uint64_t> points() const;

  friend bool operator==(const TernarySet&, const TernarySet&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> member_;
};

/// Upper edge border counts |∂_i S| per direction.
struct EdgeBorder {
  std::vector<std::uint64_t> per_direction;
  std::uint64_t total() const;
};

/// One border edge: the tail point, its direction and the head digit.
struct BorderEdge {
  std::uint64_t tail;
  int direction;
  int head_digit;
};

std::uint64_t edge_border(const TernarySet& s, int direction);
EdgeBorder edge_borders(const TernarySet& s);
std::vector<BorderEdge> border_edges(const TernarySet& s, int direction);

/// One shifting step in coordinate i: members move to digit 2 when vacant,
/// then members left at 0 move to 1 when vacant.
TernarySet shift_step(const TernarySet& s, int direction);
/// Shifting steps in coordinates 0..n-1.
TernarySet shift_monotone(const TernarySet& s);
bool is_monotone(const TernarySet& s);

struct BorderReport {
  std::uint64_t border_a = 0;
  std::uint64_t border_b = 0;
  std::uint64_t size_a = 0;
  std::uint64_t size_b = 0;
  bool holds = false;  // 3^n (|∂A| + |∂B|) >= |A||B|
};

/// Throws DomainError when the sets intersect or have different n.
BorderReport check_border_inequality(const TernarySet& a, const TernarySet& b);

struct HarrisReport {
  std::uint64_t size_a = 0;
  std::uint64_t size_b = 0;
  std::uint64_t intersection = 0;
  bool holds = false;  // 3^n |A ∩ B| >= |A||B|
};

/// Throws DomainError unless both sets are monotone.
HarrisReport check_harris(const TernarySet& a, const TernarySet& b);

/// A(z) and B(z): completions of column z on which F elects a, resp. b.
std::pair<TernarySet, TernarySet> sets_ab(const Scf& f, Alt a, Alt b, std::uint64_t column);

/// Each point independently in the set with probability p drawn from
/// {1/4, 1/2, 3/4}.
TernarySet random_ternary_set(int n, Rng& rng);
/// A random A, then B drawn the same way inside the complement of A.
std::pair<TernarySet, TernarySet> random_disjoint_pair(int n, Rng& rng);

}  // namespace qgs
