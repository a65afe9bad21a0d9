#include "qgs/ternary.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace qgs {

namespace {

std::uint64_t digit_at(std::uint64_t point, std::uint64_t stride) { return (point / stride) % 3; }

std::uint64_t stride_of(int direction) { return pow3(direction); }

void check_direction(const TernarySet& s, int direction) {
  if (direction < 0 || direction >= s.dimension())
    throw DomainError("ternary: direction out of range");
}

// Calls fn(base) for every line in `direction`; base has digit 0 there.
template <class Fn>
void for_each_line(const TernarySet& s, int direction, Fn fn) {
  const std::uint64_t stride = stride_of(direction);
  for (std::uint64_t p = 0; p < s.universe(); ++p)
    if (digit_at(p, stride) == 0) fn(p, stride);
}

}  // namespace

TernarySet::TernarySet(int n) : n_(n) {
  if (n < 0 || n > 20) throw DomainError("ternary set: dimension out of range");
  member_.assign(pow3(n), 0);
}

TernarySet TernarySet::full(int n) {
  TernarySet s(n);
  std::fill(s.member_.begin(), s.member_.end(), 1);
  return s;
}

TernarySet TernarySet::from_points(int n, const std::vector<std::uint64_t>& points) {
  TernarySet s(n);
  for (auto p : points) {
    if (p >= s.universe()) throw DomainError("ternary set: point out of range");
    s.insert(p);
  }
  return s;
}

std::uint64_t TernarySet::size() const {
  return static_cast<std::uint64_t>(std::count(member_.begin(), member_.end(), 1));
}

std::vector<std::uint64_t> TernarySet::points() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 0; p < member_.size(); ++p)
    if (member_[p]) out.push_back(p);
  return out;
}

std::uint64_t EdgeBorder::total() const {
  return std::accumulate(per_direction.begin(), per_direction.end(), std::uint64_t{0});
}

std::uint64_t edge_border(const TernarySet& s, int direction) {
  check_direction(s, direction);
  std::uint64_t count = 0;
  for_each_line(s, direction, [&](std::uint64_t base, std::uint64_t stride) {
    const bool in0 = s.contains(base);
    const bool in1 = s.contains(base + stride);
    const bool in2 = s.contains(base + 2 * stride);
    // edges 0->1, 0->2, 1->2
    count += (in0 && !in1) + (in0 && !in2) + (in1 && !in2);
  });
  return count;
}

EdgeBorder edge_borders(const TernarySet& s) {
  EdgeBorder b;
  for (int i = 0; i < s.dimension(); ++i) b.per_direction.push_back(edge_border(s, i));
  return b;
}

std::vector<BorderEdge> border_edges(const TernarySet& s, int direction) {
  check_direction(s, direction);
  std::vector<BorderEdge> out;
  for_each_line(s, direction, [&](std::uint64_t base, std::uint64_t stride) {
    for (int lo = 0; lo < 3; ++lo)
      for (int hi = lo + 1; hi < 3; ++hi)
        if (s.contains(base + lo * stride) && !s.contains(base + hi * stride))
          out.push_back({base + lo * stride, direction, hi});
  });
  return out;
}

TernarySet shift_step(const TernarySet& s, int direction) {
  check_direction(s, direction);
  TernarySet out = s;
  for_each_line(s, direction, [&](std::uint64_t base, std::uint64_t stride) {
    std::array<bool, 3> in{s.contains(base), s.contains(base + stride),
                           s.contains(base + 2 * stride)};
    // Move to 2 when vacant: the lowest member goes first.
    if (!in[2]) {
      for (int d = 0; d < 2; ++d)
        if (in[d]) {
          in[d] = false;
          in[2] = true;
          break;
        }
    }
    if (in[0] && !in[1]) {
      in[0] = false;
      in[1] = true;
    }
    for (int d = 0; d < 3; ++d) {
      if (in[d])
        out.insert(base + d * stride);
      else
        out.erase(base + d * stride);
    }
  });
  return out;
}

TernarySet shift_monotone(const TernarySet& s) {
  TernarySet out = s;
  for (int i = 0; i < s.dimension(); ++i) out = shift_step(out, i);
  return out;
}

bool is_monotone(const TernarySet& s) {
  for (int i = 0; i < s.dimension(); ++i)
    if (edge_border(s, i) != 0) return false;
  return true;
}

BorderReport check_border_inequality(const TernarySet& a, const TernarySet& b) {
  if (a.dimension() != b.dimension()) throw DomainError("border check: dimension mismatch");
  for (std::uint64_t p = 0; p < a.universe(); ++p)
    if (a.contains(p) && b.contains(p)) throw DomainError("border check: sets are not disjoint");
  BorderReport r;
  r.border_a = edge_borders(a).total();
  r.border_b = edge_borders(b).total();
  r.size_a = a.size();
  r.size_b = b.size();
  using u128 = unsigned __int128;
  r.holds = static_cast<u128>(pow3(a.dimension())) * (r.border_a + r.border_b) >=
            static_cast<u128>(r.size_a) * r.size_b;
  return r;
}

HarrisReport check_harris(const TernarySet& a, const TernarySet& b) {
  if (a.dimension() != b.dimension()) throw DomainError("harris check: dimension mismatch");
  if (!is_monotone(a) || !is_monotone(b)) throw DomainError("harris check: inputs must be monotone");
  HarrisReport r;
  r.size_a = a.size();
  r.size_b = b.size();
  for (std::uint64_t p = 0; p < a.universe(); ++p)
    if (a.contains(p) && b.contains(p)) ++r.intersection;
  using u128 = unsigned __int128;
  r.holds = static_cast<u128>(pow3(a.dimension())) * r.intersection >=
            static_cast<u128>(r.size_a) * r.size_b;
  return r;
}

std::pair<TernarySet, TernarySet> sets_ab(const Scf& f, Alt a, Alt b, std::uint64_t column) {
  if (f.alternatives() != 3) throw UnsupportedError("sets_ab requires m = 3");
  if (a == b || a >= 3 || b >= 3) throw DomainError("sets_ab: invalid pair");
  const int n = f.voters();
  if (column >= pow2(n)) throw DomainError("sets_ab: column out of range");
  TernarySet sa(n);
  TernarySet sb(n);
  std::array<std::array<OrderIndex, 3>, 2> orders{};
  for (int bit = 0; bit < 2; ++bit)
    for (int d = 0; d < 3; ++d) orders[bit][d] = compose_order(bit == 1, d, a, b);
  std::vector<OrderIndex> x(n);
  for (std::uint64_t v = 0; v < sa.universe(); ++v) {
    std::uint64_t code = v;
    for (int i = 0; i < n; ++i) {
      x[i] = orders[(column >> i) & 1U][code % 3];
      code /= 3;
    }
    const Alt out = f(x);
    if (out == a) sa.insert(v);
    if (out == b) sb.insert(v);
  }
  return {std::move(sa), std::move(sb)};
}

namespace {

std::uint64_t density_numerator(Rng& rng) { return 1 + rng.below(3); }  // p = k/4

}  // namespace

TernarySet random_ternary_set(int n, Rng& rng) {
  TernarySet s(n);
  const std::uint64_t k = density_numerator(rng);
  for (std::uint64_t p = 0; p < s.universe(); ++p)
    if (rng.coin(k, 4)) s.insert(p);
  return s;
}

std::pair<TernarySet, TernarySet> random_disjoint_pair(int n, Rng& rng) {
  TernarySet a = random_ternary_set(n, rng);
  TernarySet b(n);
  const std::uint64_t k = density_numerator(rng);
  for (std::uint64_t p = 0; p < b.universe(); ++p)
    if (!a.contains(p) && rng.coin(k, 4)) b.insert(p);
  return {std::move(a), std::move(b)};
}

}  // namespace qgs
