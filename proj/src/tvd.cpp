#include "shufflemix/tvd.hpp"

#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "shufflemix/error.hpp"

namespace shufflemix {

BigRational tv_generic(const FullDistribution& p, const FullDistribution& q) {
  if (p.n() != q.n())
    throw DomainError("tv: size mismatch (" + std::to_string(p.n()) + " vs " + std::to_string(q.n()) + ")");
  mpq_class acc = 0;
  mpq_class diff;
  for (std::size_t r = 0; r < p.size(); ++r) {
    diff = p.masses()[r].mpq() - q.masses()[r].mpq();
    acc += abs(diff);
  }
  return BigRational::from_mpq(acc / 2);
}

BigRational tv_between(const StatDistribution& a, const StatDistribution& b) {
  mpq_class acc = 0;
  auto ia = a.masses.begin();
  auto ib = b.masses.begin();
  // Merge over the union of supports.
  while (ia != a.masses.end() || ib != b.masses.end()) {
    if (ib == b.masses.end() || (ia != a.masses.end() && ia->first < ib->first)) {
      acc += abs(ia->second.mpq());
      ++ia;
    } else if (ia == a.masses.end() || ib->first < ia->first) {
      acc += abs(ib->second.mpq());
      ++ib;
    } else {
      acc += abs(ia->second.mpq() - ib->second.mpq());
      ++ia;
      ++ib;
    }
  }
  return BigRational::from_mpq(acc / 2);
}

BigRational tv_statistic(const MeasureSpec& a, const MeasureSpec& b, const Statistic& stat, const Limits& limits) {
  if (a.n != b.n) throw DomainError("tv: both measures need the same n");
  return tv_between(stat_distribution(a, stat, limits), stat_distribution(b, stat, limits));
}

// ---------------------------------------------------------------------------
// ||R - C||

namespace {

void require_rc(int n, std::int64_t k) {
  if (n < 2) throw DomainError("||R - C|| needs n >= 2");
  if (k < 1) throw DomainError("shuffle parameter k must be >= 1");
}

mpq_class q_of(const BigInt& v) { return mpq_class(v); }

mpq_class frac(const BigInt& num, const BigInt& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

BigRational tv_rc_expr1(int n, std::int64_t k) {
  require_rc(n, k);
  const auto table = eulerian_table(n - 1);
  BigInt sum = 0;
  for (int j = 1; j <= n - 1; ++j) sum += BigInt(j * (n - j)) * table->at(j) * binomial(n + k - j - 1, n - 1);
  return BigRational(sum, power(k, static_cast<unsigned long>(n)) * n);
}

BigRational tv_rc_expr2(int n, std::int64_t k) {
  require_rc(n, k);
  const auto un = static_cast<unsigned long>(n);
  BigInt sum_n = 0, sum_n1 = 0;
  for (std::int64_t s = 1; s < k; ++s) {
    sum_n += power(s, un);
    sum_n1 += power(s, un - 1);
  }
  const BigInt k_n = power(k, un);
  mpq_class numer = q_of(k_n) - frac(power(k, un + 1), BigInt(n)) + q_of(BigInt(n + 1) * sum_n) -
                    q_of(BigInt(static_cast<long>(k)) * (n - 1) * sum_n1);
  return BigRational::from_mpq(numer / q_of(k_n));
}

BigRational tv_rc_expr3(int n, std::int64_t k) {
  require_rc(n, k);
  const auto bern = bernoulli_table(n);
  mpq_class total = 0;
  for (int t = 1; t <= n - 2; ++t) {
    const mpq_class bracket = frac(falling_factorial(n, t), factorial(t)) +
                              frac(falling_factorial(n - 1, t), factorial(t + 1));
    total += bern->at(t + 1).mpq() * bracket / q_of(power(k, static_cast<unsigned long>(t)));
  }
  total += (n + 1) * bern->at(n).mpq() / q_of(power(k, static_cast<unsigned long>(n - 1)));
  return BigRational::from_mpq(total);
}

BigRational tv_rc_upper(int n, std::int64_t k) {
  require_rc(n, k);
  return BigRational(n, BigInt(4) * BigInt(static_cast<long>(k)));
}

BigRational tv_rc_lower(int n, std::int64_t k) {
  require_rc(n, k);
  if (k < n) throw DomainError("lower bound is stated only for k >= n");
  const BigRational main = BigRational(6, 25) * BigRational(n - 1, BigInt(static_cast<long>(k)));
  const BigRational tail =
      BigRational(n + 1) * bernoulli(n) / BigRational(power(k, static_cast<unsigned long>(n - 1)));
  return main + tail;
}

double tv_ac_upper(int n, std::int64_t k) {
  if (n < 2) throw DomainError("||A - C|| bound needs n >= 2");
  if (k < n) throw DomainError("||A - C|| bound is stated only for k >= n");
  const double ratio = 2.0 * n / (std::numbers::e * static_cast<double>(k));
  return n * std::pow(ratio, n / 2.0);
}

// ---------------------------------------------------------------------------
// Generic dispatch

std::string_view to_string(Reference r) {
  switch (r) {
    case Reference::uniform: return "uniform";
    case Reference::riffle: return "riffle";
    case Reference::cut_riffle: return "cut-riffle";
  }
  return "?";
}

Reference parse_reference(std::string_view name) {
  if (name == "uniform") return Reference::uniform;
  if (name == "riffle") return Reference::riffle;
  if (name == "cut-riffle") return Reference::cut_riffle;
  throw DomainError("unknown reference '" + std::string(name) + "' (expected uniform, riffle or cut-riffle)");
}

Family family_of(Reference r) {
  switch (r) {
    case Reference::uniform: return Family::uniform;
    case Reference::riffle: return Family::riffle;
    case Reference::cut_riffle: return Family::cut_riffle;
  }
  return Family::uniform;
}

namespace {

bool same_law(const MeasureSpec& a, const MeasureSpec& b) {
  if (a.family != b.family || a.n != b.n) return false;
  return a.family == Family::uniform || a.k == b.k;
}

bool is_rc_pair(const MeasureSpec& a, const MeasureSpec& b) {
  return a.k == b.k && ((a.family == Family::riffle && b.family == Family::cut_riffle) ||
                        (a.family == Family::cut_riffle && b.family == Family::riffle));
}

// Riffle (resp. cut-riffle) is constant on descent (resp. cyclic-descent)
// classes, as is the uniform law, so the marginal TV equals the full TV.
std::optional<Statistic> aggregation_statistic(const MeasureSpec& a, const MeasureSpec& b) {
  const MeasureSpec* shuffled = nullptr;
  if (b.family == Family::uniform) shuffled = &a;
  if (a.family == Family::uniform) shuffled = &b;
  if (!shuffled) return std::nullopt;
  if (shuffled->family == Family::riffle) return Statistic{StatisticKind::descents};
  if (shuffled->family == Family::cut_riffle) return Statistic{StatisticKind::cyclic_descents};
  return std::nullopt;
}

}  // namespace

TvResult total_variation(const MeasureSpec& a, const MeasureSpec& b, TvMethod method,
                         const std::optional<Statistic>& stat, const Limits& limits) {
  a.validate();
  b.validate();
  if (a.n != b.n) throw DomainError("tv: both measures need the same n");
  const int n = a.n;

  auto brute = [&]() -> TvResult {
    if (n > limits.enum_limit)
      throw ResourceError("no exact path for " + a.describe() + " vs " + b.describe() +
                          " above the enumeration limit (" + std::to_string(limits.enum_limit) +
                          "); closed forms cover riffle vs cut-riffle (equal k) and riffle or cut-riffle vs "
                          "uniform; otherwise raise --enum-limit");
    return {tv_generic(full_distribution(a, limits), full_distribution(b, limits)), "brute"};
  };

  switch (method) {
    case TvMethod::expr1:
    case TvMethod::expr2:
    case TvMethod::expr3: {
      if (!is_rc_pair(a, b)) throw DomainError("expr1/expr2/expr3 apply only to riffle vs cut-riffle with equal k");
      if (method == TvMethod::expr1) return {tv_rc_expr1(n, a.k), "expr1"};
      if (method == TvMethod::expr2) return {tv_rc_expr2(n, a.k), "expr2"};
      return {tv_rc_expr3(n, a.k), "expr3"};
    }
    case TvMethod::brute: return brute();
    case TvMethod::statistic:
      if (!stat) throw DomainError("method statistic needs a statistic name");
      return {tv_statistic(a, b, *stat, limits), "statistic:" + stat->name()};
    case TvMethod::automatic: break;
  }

  if (same_law(a, b)) return {BigRational(0), "identical"};
  if (is_rc_pair(a, b)) return {tv_rc_expr1(n, a.k), "expr1"};
  if (const auto agg = aggregation_statistic(a, b))
    return {tv_statistic(a, b, *agg, limits), "aggregate:" + agg->name()};
  return brute();
}

std::vector<MixingRow> mixing_table(Family family, int n, std::int64_t base, int m_first, int m_last,
                                    Reference reference, const Limits& limits) {
  if (base < 1) throw DomainError("mixing table base must be >= 1");
  if (m_first < 0 || m_last < m_first) throw DomainError("mixing table needs 0 <= m_first <= m_last");

  std::vector<MixingRow> rows;
  for (int m = m_first; m <= m_last; ++m) {
    const BigInt k = power(base, static_cast<unsigned long>(m));
    if (!k.fits_slong_p()) throw DomainError("base^m overflows 64-bit k at m = " + std::to_string(m));
    rows.push_back({m, k.get_si(), BigRational(0), 0.0});
  }

  // Rows are independent; when several run at once each computes serially.
  Limits inner = limits;
  if (rows.size() > 1) inner.threads = 1;
  detail::parallel_chunks(rows.size(), limits.threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (auto i = begin; i < end; ++i) {
      auto& row = rows[static_cast<std::size_t>(i)];
      const MeasureSpec spec{family, n, row.k};
      const MeasureSpec ref{family_of(reference), n, row.k};
      row.tv = total_variation(spec, ref, TvMethod::automatic, std::nullopt, inner).value;
      row.tv_float = row.tv.to_double();
    }
  });
  return rows;
}

}  // namespace shufflemix
