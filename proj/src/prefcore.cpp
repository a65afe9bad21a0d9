#include "qgs/prefcore.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>

namespace qgs {

std::uint64_t factorial(int m) {
  if (m < 0 || m > 20) throw DomainError("factorial: argument out of range");
  std::uint64_t f = 1;
  for (int k = 2; k <= m; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::uint64_t profile_count(int n, int m) {
  const std::uint64_t f = factorial(m);
  std::uint64_t total = 1;
  for (int v = 0; v < n; ++v) {
    if (total > UINT64_MAX / f) throw DomainError("profile count overflows 64 bits");
    total *= f;
  }
  return total;
}

std::uint64_t pow3(int n) {
  if (n < 0 || n > 40) throw DomainError("pow3: exponent out of range");
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

LinearOrder::LinearOrder(std::vector<Alt> ranking) : ranking_(std::move(ranking)) {
  const int m = size();
  if (m < 2 || m > kMaxAlternatives) throw DomainError("linear order: unsupported size");
  std::array<bool, kMaxAlternatives> seen{};
  for (Alt a : ranking_) {
    if (a >= m || seen[a]) throw DomainError("linear order: ranking is not a permutation");
    seen[a] = true;
  }
}

int LinearOrder::position(Alt a) const {
  const auto it = std::find(ranking_.begin(), ranking_.end(), a);
  if (it == ranking_.end()) throw DomainError("linear order: unknown alternative");
  return static_cast<int>(it - ranking_.begin());
}

LinearOrder order_from_index(std::uint64_t k, int m) {
  if (m < 2 || m > kMaxAlternatives) throw DomainError("order_from_index: unsupported m");
  if (k >= factorial(m)) throw DomainError("order_from_index: index out of range");
  std::vector<Alt> remaining(m);
  std::iota(remaining.begin(), remaining.end(), Alt{0});
  std::vector<Alt> ranking;
  ranking.reserve(m);
  for (int slot = m - 1; slot >= 0; --slot) {
    const std::uint64_t block = factorial(slot);
    const auto digit = static_cast<std::size_t>(k / block);
    k %= block;
    ranking.push_back(remaining[digit]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return LinearOrder(std::move(ranking));
}

OrderIndex order_to_index(const LinearOrder& order) {
  const int m = order.size();
  std::uint64_t k = 0;
  const auto r = order.ranking();
  for (int i = 0; i < m; ++i) {
    int smaller_later = 0;
    for (int j = i + 1; j < m; ++j)
      if (r[j] < r[i]) ++smaller_later;
    k += static_cast<std::uint64_t>(smaller_later) * factorial(m - 1 - i);
  }
  return static_cast<OrderIndex>(k);
}

int pair_index(int m, Alt a, Alt b) {
  if (a >= b || b >= m) throw DomainError("pair_index: expects a < b < m");
  // pairs (0,1),(0,2),...,(0,m-1),(1,2),...
  return a * (2 * m - a - 1) / 2 + (b - a - 1);
}

std::pair<Alt, Alt> pair_at(int m, int p) {
  for (int a = 0; a < m; ++a) {
    const int row = m - 1 - a;
    if (p < row) return {static_cast<Alt>(a), static_cast<Alt>(a + 1 + p)};
    p -= row;
  }
  throw DomainError("pair_at: pair index out of range");
}

OrderTable::OrderTable(int m) : m_(m), count_(static_cast<std::uint32_t>(factorial(m))) {
  ranking_.resize(static_cast<std::size_t>(count_) * m);
  position_.resize(static_cast<std::size_t>(count_) * m);
  pair_bits_.resize(count_);
  for (std::uint32_t o = 0; o < count_; ++o) {
    const LinearOrder order = order_from_index(o, m);
    for (int r = 0; r < m; ++r) {
      const Alt a = order.ranking()[r];
      ranking_[o * m + r] = a;
      position_[o * m + a] = static_cast<std::uint8_t>(r);
    }
    std::uint32_t bits = 0;
    for (int p = 0; p < pair_count(m); ++p) {
      const auto [a, b] = pair_at(m, p);
      if (position(o, a) < position(o, b)) bits |= 1U << p;
    }
    pair_bits_[o] = bits;
  }
}

OrderIndex OrderTable::index_of(std::span<const Alt> ranking) const {
  return order_to_index(LinearOrder(std::vector<Alt>(ranking.begin(), ranking.end())));
}

OrderIndex OrderTable::relabel(OrderIndex o, std::span<const Alt> perm) const {
  std::array<Alt, kMaxAlternatives> r{};
  for (int k = 0; k < m_; ++k) r[k] = perm[at(o, k)];
  return index_of(std::span<const Alt>(r.data(), m_));
}

const OrderTable& order_table(int m) {
  if (m < 2 || m > kMaxAlternatives) throw DomainError("order_table: unsupported m");
  static std::array<std::unique_ptr<OrderTable>, kMaxAlternatives + 1> tables;
  static std::array<std::once_flag, kMaxAlternatives + 1> once;
  std::call_once(once[m], [m] { tables[m] = std::make_unique<OrderTable>(m); });
  return *tables[m];
}

Profile::Profile(std::vector<LinearOrder> voters) : voters_(std::move(voters)) {
  if (voters_.empty()) throw DomainError("profile: needs at least one voter");
  const int m = voters_.front().size();
  for (const auto& v : voters_)
    if (v.size() != m) throw DomainError("profile: voters disagree on m");
}

std::vector<OrderIndex> Profile::order_indices() const {
  std::vector<OrderIndex> out;
  out.reserve(voters_.size());
  for (const auto& v : voters_) out.push_back(order_to_index(v));
  return out;
}

void decode_profile(std::uint64_t index, int m, std::span<OrderIndex> out) {
  const std::uint64_t f = factorial(m);
  for (auto& o : out) {
    o = static_cast<OrderIndex>(index % f);
    index /= f;
  }
}

std::uint64_t encode_profile(std::span<const OrderIndex> orders, int m) {
  const std::uint64_t f = factorial(m);
  std::uint64_t index = 0;
  for (std::size_t v = orders.size(); v-- > 0;) index = index * f + orders[v];
  return index;
}

std::uint64_t profile_to_index(const Profile& p) {
  profile_count(p.voters(), p.alternatives());  // range check
  const auto orders = p.order_indices();
  return encode_profile(orders, p.alternatives());
}

Profile profile_from_index(std::uint64_t index, int n, int m) {
  if (n < 1) throw DomainError("profile_from_index: n must be positive");
  if (index >= profile_count(n, m)) throw DomainError("profile_from_index: index out of range");
  std::vector<OrderIndex> orders(n);
  decode_profile(index, m, orders);
  std::vector<LinearOrder> voters;
  voters.reserve(n);
  for (OrderIndex o : orders) voters.push_back(order_from_index(o, m));
  return Profile(std::move(voters));
}

PairwiseColumn PairwiseColumn::complement() const {
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return {n, ~bits & mask};
}

PairwiseColumn pairwise_column(const Profile& p, Alt a, Alt b) {
  const int m = p.alternatives();
  if (a == b) throw DomainError("pairwise_column: a and b must differ");
  if (a >= m || b >= m) throw DomainError("pairwise_column: alternative out of range");
  if (p.voters() > 64) throw UnsupportedError("pairwise_column: at most 64 voters");
  PairwiseColumn col{p.voters(), 0};
  for (int v = 0; v < p.voters(); ++v)
    if (p.voter(v).prefers(a, b)) col.bits |= std::uint64_t{1} << v;
  return col;
}

std::uint64_t column_bits(const OrderTable& table, std::span<const OrderIndex> orders, Alt a,
                          Alt b) {
  std::uint64_t bits = 0;
  for (std::size_t v = 0; v < orders.size(); ++v)
    if (table.prefers(orders[v], a, b)) bits |= std::uint64_t{1} << v;
  return bits;
}

std::uint64_t TernaryVector::index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = digits.size(); i-- > 0;) idx = idx * 3 + digits[i];
  return idx;
}

TernaryVector TernaryVector::from_index(std::uint64_t index, int n) {
  TernaryVector t;
  t.digits.resize(n);
  for (int i = 0; i < n; ++i) {
    t.digits[i] = static_cast<std::uint8_t>(index % 3);
    index /= 3;
  }
  return t;
}

namespace {

void check_pair3(int m, Alt a, Alt b) {
  if (m != 3) throw UnsupportedError("decompose/compose: only m = 3 is supported");
  if (a == b || a >= 3 || b >= 3) throw DomainError("decompose/compose: invalid pair");
}

std::vector<Alt> ranking_for(bool a_over_b, int digit, Alt a, Alt b) {
  const Alt c = third_alternative(a, b);
  const Alt hi = a_over_b ? a : b;
  const Alt lo = a_over_b ? b : a;
  switch (digit) {
    case 0: return {c, hi, lo};
    case 1: return {hi, c, lo};
    case 2: return {hi, lo, c};
    default: throw DomainError("ternary digit out of range");
  }
}

}  // namespace

OrderIndex compose_order(bool a_over_b, int digit, Alt a, Alt b) {
  check_pair3(3, a, b);
  const auto r = ranking_for(a_over_b, digit, a, b);
  return order_table(3).index_of(r);
}

std::pair<PairwiseColumn, TernaryVector> decompose(const Profile& p, Alt a, Alt b) {
  check_pair3(p.alternatives(), a, b);
  const Alt c = third_alternative(a, b);
  PairwiseColumn col = pairwise_column(p, a, b);
  TernaryVector t;
  t.digits.resize(p.voters());
  for (int v = 0; v < p.voters(); ++v) {
    const auto& order = p.voter(v);
    const int pc = order.position(c);
    const int pa = order.position(a);
    const int pb = order.position(b);
    t.digits[v] = static_cast<std::uint8_t>(pc < std::min(pa, pb) ? 0 : pc > std::max(pa, pb) ? 2 : 1);
  }
  return {col, std::move(t)};
}

Profile compose(const PairwiseColumn& column, const TernaryVector& ternary, Alt a, Alt b) {
  check_pair3(3, a, b);
  if (static_cast<int>(ternary.digits.size()) != column.n)
    throw DomainError("compose: column and ternary vector lengths differ");
  std::vector<LinearOrder> voters;
  voters.reserve(column.n);
  for (int v = 0; v < column.n; ++v)
    voters.emplace_back(ranking_for(column.bit(v), ternary.digits[v], a, b));
  return Profile(std::move(voters));
}

}  // namespace qgs
