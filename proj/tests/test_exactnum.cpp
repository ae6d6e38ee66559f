#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "shufflemix/error.hpp"
#include "shufflemix/exactnum.hpp"

using namespace shufflemix;

TEST_CASE("rationals stay canonical") {
  const BigRational q(BigInt(6), BigInt(-4));
  CHECK(q.to_string() == "-3/2");
  CHECK(q.den() == 2);
  CHECK(BigRational::parse("10/4") == BigRational(5, 2));
  CHECK(BigRational::parse("-7").to_string() == "-7");
  CHECK_THROWS_AS(BigRational(1, 0), DomainError);
  CHECK_THROWS_AS(BigRational::parse("1/x"), DomainError);
  CHECK(BigRational(1, 3) + BigRational(1, 6) == BigRational(1, 2));
  CHECK(BigRational(1, 3) < BigRational(1, 2));
}

TEST_CASE("binomial vanishes outside its range") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK_THROWS_AS(binomial(-1, 0), DomainError);
}

TEST_CASE("falling factorial and power sums") {
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(7, 0) == 1);
  CHECK(falling_factorial(4, 5) == 0);
  CHECK(power_sum(3, 2) == 5);
  CHECK(power_sum(6, 0) == 6);
  CHECK(power_sum(10, 3) == 2025);
  CHECK(power_sum_bernoulli(3, 2) == BigRational(5));
  CHECK(power_sum_bernoulli(2, 1) == BigRational(1));
  CHECK(power_sum_bernoulli(10, 3) == BigRational(2025));
  for (std::int64_t a = 1; a <= 20; ++a)
    for (unsigned long n = 1; n <= 12; ++n) CHECK(power_sum_bernoulli(a, n) == BigRational(power_sum(a, n)));
}

TEST_CASE("eulerian numbers") {
  CHECK(eulerian(1, 1) == 1);
  CHECK(eulerian(3, 2) == 4);
  CHECK(eulerian(4, 2) == 11);
  CHECK(eulerian(5, 3) == 66);
  CHECK(eulerian(4, 0) == 0);
  CHECK(eulerian(4, 5) == 0);
  for (int n = 1; n <= 10; ++n) {
    BigInt sum = 0;
    for (int d = 1; d <= n; ++d) {
      sum += eulerian(n, d);
      CHECK(eulerian(n, d) == eulerian(n, n + 1 - d));
    }
    CHECK(sum == factorial(n));
  }
}

TEST_CASE("worpitzky identity") {
  for (int n = 1; n <= 10; ++n)
    for (std::int64_t k = 1; k <= 20; ++k) {
      BigInt rhs = 0;
      for (int j = 1; j <= n; ++j) rhs += eulerian(n, j) * binomial(k + n - j, n);
      CHECK(rhs == power(k, static_cast<unsigned long>(n)));
    }
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == BigRational(1));
  CHECK(bernoulli(1) == BigRational(-1, 2));
  CHECK(bernoulli(2) == BigRational(1, 6));
  CHECK(bernoulli(3) == BigRational(0));
  CHECK(bernoulli(4) == BigRational(-1, 30));
  CHECK(bernoulli(12) == BigRational(-691, 2730));
  for (int i = 3; i <= 61; i += 2) CHECK(bernoulli(i).is_zero());
}

TEST_CASE("bernoulli terms decrease") {
  BigRational prev;
  for (int t = 1; t <= 30; ++t) {
    BigRational term = bernoulli(2 * t) / BigRational(factorial(2 * t - 1));
    if (t % 2 == 0) term = -term;
    CHECK(term.sign() > 0);
    if (t > 1) CHECK(term < prev);
    prev = term;
  }
}

TEST_CASE("number theory helpers") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(moebius(1) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(30) == -1);
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(ramanujan_sum(2, 1) == -1);
  for (std::int64_t m = -5; m <= 5; ++m) CHECK(ramanujan_sum(1, m) == 1);
  for (std::int64_t r = 1; r <= 12; ++r) CHECK(ramanujan_sum(r, 0) == euler_phi(r));
}

TEST_CASE("ramanujan sums match the exponential sum") {
  for (std::int64_t r = 1; r <= 30; ++r)
    for (std::int64_t m = -30; m <= 30; ++m) {
      std::complex<double> sum = 0;
      for (std::int64_t l = 1; l <= r; ++l)
        if (std::gcd(l, r) == 1) sum += std::polar(1.0, 2 * std::numbers::pi * double(l * m) / double(r));
      CHECK(ramanujan_sum(r, m) == std::lround(sum.real()));
    }
}
