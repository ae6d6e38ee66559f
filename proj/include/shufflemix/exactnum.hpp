#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace shufflemix {

using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den);

  static BigRational from_mpq(mpq_class value);
  /// Parses "a", "-a" or "a/b".
  static BigRational parse(std::string_view text);

  const BigInt& num() const { return value_.get_num(); }
  const BigInt& den() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  BigRational abs() const;
  double to_double() const { return value_.get_d(); }
  /// "a/b", or "a" when the denominator is 1.
  std::string to_string() const;

  BigRational& operator+=(const BigRational& rhs);
  BigRational& operator-=(const BigRational& rhs);
  BigRational& operator*=(const BigRational& rhs);
  BigRational& operator/=(const BigRational& rhs);

  friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
  friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
  friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
  friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }
  BigRational operator-() const;

  friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

/// Generalized binomial coefficient: C(a, b) for a >= 0, and 0 when b < 0 or
/// b > a. Throws DomainError for a < 0.
BigInt binomial(std::int64_t a, std::int64_t b);

BigInt factorial(int n);

/// (n)_t = n (n-1) ... (n-t+1); 1 when t = 0.
BigInt falling_factorial(std::int64_t n, std::int64_t t);

BigInt power(std::int64_t base, unsigned long exponent);

/// Eulerian numbers A_{n,d}: permutations of n symbols with d-1 descents.
class EulerianTable {
 public:
  explicit EulerianTable(int n, std::vector<BigInt> row) : n_(n), row_(std::move(row)) {}
  int n() const { return n_; }
  /// A_{n,d}; 0 outside 1 <= d <= n.
  BigInt at(int d) const;
  const std::vector<BigInt>& row() const { return row_; }  // row()[d-1] = A_{n,d}

 private:
  int n_;
  std::vector<BigInt> row_;
};

/// Cached row for n (n >= 1). Safe to call from several threads.
std::shared_ptr<const EulerianTable> eulerian_table(int n);
BigInt eulerian(int n, int d);

/// Bernoulli numbers with B_1 = -1/2.
class BernoulliTable {
 public:
  explicit BernoulliTable(std::vector<BigRational> values) : values_(std::move(values)) {}
  int max_index() const { return static_cast<int>(values_.size()) - 1; }
  const BigRational& at(int i) const { return values_.at(static_cast<std::size_t>(i)); }

 private:
  std::vector<BigRational> values_;
};

/// Table holding at least B_0..B_max_index.
std::shared_ptr<const BernoulliTable> bernoulli_table(int max_index);
BigRational bernoulli(int i);

std::int64_t euler_phi(std::int64_t r);
int moebius(std::int64_t r);
/// Ramanujan sum C_r(m) = sum over l coprime to r of exp(2 pi i l m / r),
/// evaluated as sum_{d | gcd(r, m)} mu(r/d) d.
std::int64_t ramanujan_sum(std::int64_t r, std::int64_t m);
std::vector<std::int64_t> divisors(std::int64_t r);

/// sum_{r=0}^{a-1} r^n by direct summation (0^0 = 1).
BigInt power_sum(std::int64_t a, unsigned long n);
/// The same sum through the Bernoulli expansion.
BigRational power_sum_bernoulli(std::int64_t a, unsigned long n);

}  // namespace shufflemix
