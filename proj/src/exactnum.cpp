#include "shufflemix/exactnum.hpp"

#include <mutex>
#include <numeric>

#include "shufflemix/error.hpp"

namespace shufflemix {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

BigRational BigRational::from_mpq(mpq_class value) {
  BigRational r;
  r.value_ = std::move(value);
  r.value_.canonicalize();
  return r;
}

BigRational BigRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view part) {
    BigInt v;
    if (part.empty() || v.set_str(std::string(part), 10) != 0)
      throw DomainError("malformed rational: '" + std::string(text) + "'");
    return v;
  };
  if (slash == std::string_view::npos) return BigRational(parse_int(text));
  return BigRational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

BigRational BigRational::abs() const { return from_mpq(::abs(value_)); }

std::string BigRational::to_string() const {
  if (den() == 1) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
  value_ += rhs.value_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}
BigRational BigRational::operator-() const { return from_mpq(-value_); }

BigInt binomial(std::int64_t a, std::int64_t b) {
  if (a < 0) throw DomainError("binomial: negative upper index " + std::to_string(a));
  if (b < 0 || b > a) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

BigInt factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative number");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

BigInt falling_factorial(std::int64_t n, std::int64_t t) {
  if (t < 0) throw DomainError("falling_factorial: negative length");
  BigInt out = 1;
  for (std::int64_t i = 0; i < t; ++i) {
    out *= BigInt(static_cast<long>(n - i));
    if (out == 0) break;
  }
  return out;
}

BigInt power(std::int64_t base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), BigInt(static_cast<long>(base)).get_mpz_t(), exponent);
  return out;
}

// ---------------------------------------------------------------------------
// Eulerian numbers

BigInt EulerianTable::at(int d) const {
  if (d < 1 || d > n_) return 0;
  return row_[static_cast<std::size_t>(d - 1)];
}

namespace {

struct EulerianCache {
  std::mutex mutex;
  std::vector<std::shared_ptr<const EulerianTable>> rows;  // rows[n-1]
};

EulerianCache& eulerian_cache() {
  static EulerianCache cache;
  return cache;
}

struct BernoulliCache {
  std::mutex mutex;
  std::shared_ptr<const BernoulliTable> table;
};

BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const EulerianTable> eulerian_table(int n) {
  if (n < 1) throw DomainError("eulerian: n must be >= 1");
  auto& cache = eulerian_cache();
  std::lock_guard lock(cache.mutex);
  if (cache.rows.empty()) cache.rows.push_back(std::make_shared<const EulerianTable>(1, std::vector<BigInt>{1}));
  while (static_cast<int>(cache.rows.size()) < n) {
    const auto& prev = *cache.rows.back();
    const int m = prev.n() + 1;
    std::vector<BigInt> row(static_cast<std::size_t>(m));
    // A_{m,d} = d A_{m-1,d} + (m-d+1) A_{m-1,d-1}
    for (int d = 1; d <= m; ++d)
      row[static_cast<std::size_t>(d - 1)] = d * prev.at(d) + (m - d + 1) * prev.at(d - 1);
    cache.rows.push_back(std::make_shared<const EulerianTable>(m, std::move(row)));
  }
  return cache.rows[static_cast<std::size_t>(n - 1)];
}

BigInt eulerian(int n, int d) { return eulerian_table(n)->at(d); }

// ---------------------------------------------------------------------------
// Bernoulli numbers

std::shared_ptr<const BernoulliTable> bernoulli_table(int max_index) {
  if (max_index < 0) throw DomainError("bernoulli: negative index");
  auto& cache = bernoulli_cache();
  std::lock_guard lock(cache.mutex);
  if (cache.table && cache.table->max_index() >= max_index) return cache.table;

  std::vector<BigRational> values;
  int have = 0;
  if (cache.table) {
    have = cache.table->max_index() + 1;
    values.reserve(static_cast<std::size_t>(max_index + 1));
    for (int i = 0; i < have; ++i) values.push_back(cache.table->at(i));
  } else {
    values.emplace_back(1);
    have = 1;
  }
  // sum_{j=0}^{m} C(m+1, j) B_j = 0  =>  B_m = -(1/(m+1)) sum_{j<m} C(m+1, j) B_j
  for (int m = have; m <= max_index; ++m) {
    mpq_class acc = 0;
    for (int j = 0; j < m; ++j) {
      if (j >= 3 && j % 2 == 1) continue;
      acc += mpq_class(binomial(m + 1, j)) * values[static_cast<std::size_t>(j)].mpq();
    }
    values.push_back(BigRational::from_mpq(-acc / (m + 1)));
  }
  cache.table = std::make_shared<const BernoulliTable>(std::move(values));
  return cache.table;
}

BigRational bernoulli(int i) { return bernoulli_table(i)->at(i); }

// ---------------------------------------------------------------------------
// Number theory

std::int64_t euler_phi(std::int64_t r) {
  if (r < 1) throw DomainError("euler_phi: r must be >= 1");
  std::int64_t result = r;
  std::int64_t m = r;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

int moebius(std::int64_t r) {
  if (r < 1) throw DomainError("moebius: r must be >= 1");
  int sign = 1;
  std::int64_t m = r;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

std::vector<std::int64_t> divisors(std::int64_t r) {
  if (r < 1) throw DomainError("divisors: r must be >= 1");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= r; ++d) {
    if (r % d != 0) continue;
    small.push_back(d);
    if (d != r / d) large.push_back(r / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t ramanujan_sum(std::int64_t r, std::int64_t m) {
  if (r < 1) throw DomainError("ramanujan_sum: r must be >= 1");
  const std::int64_t residue = ((m % r) + r) % r;
  const std::int64_t g = std::gcd(r, residue);  // gcd(r, 0) = r
  std::int64_t sum = 0;
  for (const auto d : divisors(g)) sum += moebius(r / d) * d;
  return sum;
}

// ---------------------------------------------------------------------------
// Power sums

BigInt power_sum(std::int64_t a, unsigned long n) {
  if (a < 0) throw DomainError("power_sum: a must be >= 0");
  BigInt total = 0;
  for (std::int64_t r = 0; r < a; ++r) total += power(r, n);
  return total;
}

BigRational power_sum_bernoulli(std::int64_t a, unsigned long n) {
  if (a < 1 || n < 1) throw DomainError("power_sum_bernoulli: requires a >= 1 and n >= 1");
  const auto table = bernoulli_table(static_cast<int>(n));
  const auto n1 = static_cast<std::int64_t>(n) + 1;
  mpq_class inner = static_cast<long>(a);
  for (unsigned long t = 0; t < n; ++t) {
    const auto t1 = static_cast<std::int64_t>(t) + 1;
    mpq_class term = table->at(static_cast<int>(t1)).mpq() * mpq_class(falling_factorial(n1, t1));
    term /= mpq_class(factorial(static_cast<int>(t1)) * power(a, t));
    inner += term;
  }
  mpq_class out = mpq_class(power(a, n)) / n1 * inner;
  return BigRational::from_mpq(out);
}

}  // namespace shufflemix
