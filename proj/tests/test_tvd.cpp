#include <doctest.h>

#include <cmath>

#include "shufflemix/error.hpp"
#include "shufflemix/tvd.hpp"

using namespace shufflemix;

namespace {

const Limits limits{};
const std::vector<std::int64_t> grid_k{2, 3, 4, 5, 8, 16, 64};

BigRational R(long a, long b) { return BigRational(a, b); }

}  // namespace

TEST_CASE("generic distance") {
  const auto r = full_distribution({Family::riffle, 3, 2}, limits);
  const auto u = full_distribution({Family::uniform, 3, 1}, limits);
  CHECK(tv_generic(r, r) == R(0, 1));
  CHECK(tv_generic(r, u) == R(1, 3));
  for (int n = 1; n <= 5; ++n)
    CHECK(tv_generic(point_mass(Permutation::identity(n), limits), full_distribution({Family::uniform, n, 1}, limits)) ==
          BigRational(1) - BigRational(BigInt(1), factorial(n)));
  CHECK_THROWS_AS(tv_generic(r, full_distribution({Family::uniform, 4, 1}, limits)), DomainError);
}

TEST_CASE("distance of a statistic") {
  const MeasureSpec r{Family::riffle, 3, 2}, c{Family::cut_riffle, 3, 2}, u{Family::uniform, 3, 1};
  CHECK(tv_statistic(r, u, Statistic::parse("descents"), limits) == R(1, 3));
  CHECK(tv_statistic(r, r, Statistic::parse("lis"), limits) == R(0, 1));
  CHECK(tv_statistic(c, u, Statistic::parse("cyclic-descents"), limits) == R(1, 4));
  // A marginal never separates more than the full laws do.
  for (int n = 3; n <= 6; ++n)
    for (const char* s : {"descents", "major-index", "lis", "card-position(1)"}) {
      const MeasureSpec a{Family::affine, n, 3}, b{Family::riffle, n, 3};
      CHECK(tv_statistic(a, b, Statistic::parse(s), limits) <=
            tv_generic(full_distribution(a, limits), full_distribution(b, limits)));
    }
}

TEST_CASE("riffle versus cut-riffle closed forms") {
  for (std::int64_t k = 1; k <= 10; ++k) CHECK(tv_rc_expr1(2, k) == BigRational(BigInt(1), BigInt(2 * k)));
  CHECK(tv_rc_expr1(3, 2) == R(1, 3));
  CHECK(tv_rc_expr2(2, 2) == R(1, 4));
  CHECK(tv_rc_expr3(2, 7) == R(1, 14));
  // Values from direct enumeration of k^n words.
  CHECK(tv_rc_expr1(4, 2) == R(7, 16));
  CHECK(tv_rc_expr1(4, 3) == R(97, 324));
  CHECK(tv_rc_expr1(5, 2) == R(43, 80));
  CHECK(tv_rc_expr1(5, 4) == R(183, 640));
  for (int n = 2; n <= 10; ++n)
    for (auto k : grid_k) {
      CHECK(tv_rc_expr2(n, k) == tv_rc_expr1(n, k));
      CHECK(tv_rc_expr3(n, k) == tv_rc_expr1(n, k));
    }
  for (int n = 2; n <= 6; ++n)
    for (std::int64_t k : {2, 3, 4, 8})
      CHECK(tv_generic(full_distribution({Family::riffle, n, k}, limits),
                       full_distribution({Family::cut_riffle, n, k}, limits)) == tv_rc_expr1(n, k));
  CHECK_THROWS_AS(tv_rc_expr1(1, 2), DomainError);
}

TEST_CASE("bounds") {
  CHECK(tv_rc_upper(2, 2) == R(1, 4));
  CHECK(tv_rc_upper(52, 64) == R(13, 64));
  CHECK(tv_rc_upper(8, 8) >= tv_rc_expr1(8, 8));
  for (int n = 2; n <= 10; ++n)
    for (auto k : grid_k) CHECK(tv_rc_expr1(n, k) <= tv_rc_upper(n, k));

  CHECK(tv_rc_lower(4, 4) == R(18, 100) - R(5, 1920));
  for (int n = 4; n <= 8; ++n)
    for (std::int64_t k = n; k <= 64; ++k) CHECK(tv_rc_lower(n, k) <= tv_rc_expr1(n, k));
  // The bound overshoots at n = 2 (0.37 against 1/4 at k = 2).
  CHECK(tv_rc_lower(2, 2) == R(37, 100));
  CHECK(tv_rc_lower(2, 2) > tv_rc_expr1(2, 2));
  CHECK_THROWS_AS(tv_rc_lower(5, 4), DomainError);

  CHECK(tv_ac_upper(4, 8) == doctest::Approx(4.0 / std::exp(2.0)).epsilon(1e-12));
  CHECK(tv_ac_upper(2, 2) == doctest::Approx(2 * 4 / (2 * std::exp(1.0))));
  CHECK_THROWS_AS(tv_ac_upper(4, 3), DomainError);
  for (int n = 4; n <= 6; ++n)
    for (std::int64_t k : {n, 2 * n, 4 * n})
      CHECK(tv_generic(full_distribution({Family::affine, n, k}, limits),
                       full_distribution({Family::cut_riffle, n, k}, limits))
                .to_double() < tv_ac_upper(n, k));
}

TEST_CASE("large decks") {
  const auto v = tv_rc_expr1(52, 64);
  CHECK(v >= R(6, 25) * R(51, 64));
  CHECK(v <= R(13, 64));
  CHECK(v.to_double() == doctest::Approx(0.198415952025184).epsilon(1e-13));
  // Two extra doublings past log2(52) bring it under 1/16.
  CHECK(tv_rc_expr1(52, 256) < R(1, 16));
}

TEST_CASE("automatic method selection") {
  const auto tv = [](MeasureSpec a, MeasureSpec b) {
    return total_variation(a, b, TvMethod::automatic, std::nullopt, limits);
  };
  auto r = tv({Family::riffle, 52, 64}, {Family::cut_riffle, 52, 64});
  CHECK(r.method == "expr1");
  CHECK(r.value == tv_rc_expr1(52, 64));
  r = tv({Family::riffle, 3, 2}, {Family::uniform, 3, 1});
  CHECK(r.method == "aggregate:descents");
  CHECK(r.value == R(1, 3));
  r = tv({Family::uniform, 3, 1}, {Family::cut_riffle, 3, 2});
  CHECK(r.method == "aggregate:cyclic-descents");
  CHECK(r.value == R(1, 4));
  r = tv({Family::riffle, 5, 4}, {Family::riffle, 5, 4});
  CHECK(r.method == "identical");
  CHECK(r.value == R(0, 1));
  r = tv({Family::affine, 4, 8}, {Family::cut_riffle, 4, 8});
  CHECK(r.method == "brute");
  CHECK_THROWS_AS(tv({Family::affine, 12, 2}, {Family::riffle, 12, 2}), ResourceError);
  CHECK_THROWS_AS(total_variation({Family::riffle, 4, 2}, {Family::uniform, 4, 1}, TvMethod::expr1, std::nullopt,
                                  limits),
                  DomainError);
  const auto s = total_variation({Family::riffle, 4, 2}, {Family::uniform, 4, 1}, TvMethod::statistic,
                                 Statistic::parse("descents"), limits);
  CHECK(s.method == "statistic:descents");
  CHECK(s.value == R(1, 2));
}

TEST_CASE("mixing tables") {
  // Exact distances to uniform for n = 3, k = 2, 4, 8.
  const auto rows = mixing_table(Family::riffle, 3, 2, 1, 3, Reference::uniform, limits);
  REQUIRE(rows.size() == 3u);
  CHECK(rows[0].tv == R(1, 3));
  CHECK(rows[1].tv == R(7, 48));
  CHECK(rows[2].tv == R(13, 192));
  CHECK(rows[2].k == 8);

  for (int n = 2; n <= 5; ++n) {
    const auto one = mixing_table(Family::riffle, n, 1, 1, 2, Reference::uniform, limits);
    for (const auto& row : one) CHECK(row.tv == BigRational(1) - BigRational(BigInt(1), factorial(n)));
    const auto t = mixing_table(Family::riffle, n, 2, 1, 10, Reference::uniform, limits);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i].tv < t[i - 1].tv);
  }

  Limits par = limits;
  par.threads = 4;
  const auto big = mixing_table(Family::riffle, 52, 2, 1, 12, Reference::uniform, par);
  const auto serial = mixing_table(Family::riffle, 52, 2, 1, 12, Reference::uniform, limits);
  for (std::size_t i = 0; i < big.size(); ++i) CHECK(big[i].tv == serial[i].tv);
  const std::vector<double> expected{1.0,     1.0,     1.0,     0.99999953, 0.92373, 0.61355,
                                     0.33406, 0.16716, 0.08542, 0.04295,    0.02150, 0.01075};
  for (std::size_t i = 0; i < big.size(); ++i) {
    CHECK(big[i].tv_float == doctest::Approx(expected[i]).epsilon(1e-4));
    if (i > 0) CHECK(big[i].tv < big[i - 1].tv);
  }
  const auto rc = mixing_table(Family::riffle, 52, 2, 6, 8, Reference::cut_riffle, limits);
  CHECK(rc[0].tv >= R(6, 25) * R(51, 64));
  CHECK(rc[0].tv <= R(13, 64));
  CHECK(rc[2].tv < R(1, 16));

  CHECK_THROWS_AS(mixing_table(Family::affine, 12, 2, 1, 2, Reference::uniform, limits), ResourceError);
  CHECK_THROWS_AS(mixing_table(Family::riffle, 5, 2, 3, 1, Reference::uniform, limits), DomainError);
}
