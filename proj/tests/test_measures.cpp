#include <doctest.h>

#include "shufflemix/error.hpp"
#include "shufflemix/measures.hpp"
#include "shufflemix/tvd.hpp"

using namespace shufflemix;

namespace {

const Limits limits{};
Permutation P(std::string_view s) { return Permutation::parse(s); }

}  // namespace

TEST_CASE("riffle mass") {
  for (std::int64_t k = 2; k <= 10; ++k)
    CHECK(riffle_mass(3, k, 1) == BigRational(1, 6) - BigRational(BigInt(1), BigInt(6 * k * k)));
  CHECK(riffle_mass(5, 1, 0) == BigRational(1));
  CHECK(riffle_mass(3, 2, 2) == BigRational(0));
  // Word-count values: 1/81 for 2 1 4 3 under R_{3,4}; 3/16 at the identity of R_{2,5}.
  CHECK(mass({Family::riffle, 4, 3}, P("2 1 4 3")) == BigRational(1, 81));
  CHECK(mass({Family::riffle, 5, 2}, Permutation::identity(5)) == BigRational(3, 16));
  CHECK_THROWS_AS(riffle_mass(3, 2, 3), DomainError);
}

TEST_CASE("cut-riffle mass") {
  for (std::int64_t k = 2; k <= 10; ++k)
    CHECK(cut_riffle_mass(3, k, 2) == BigRational(1, 6) - BigRational(BigInt(1), BigInt(6 * k)));
  for (std::int64_t k = 1; k <= 6; ++k) CHECK(cut_riffle_mass(2, k, 1) == BigRational(1, 2));
  CHECK(cut_riffle_mass(3, 2, 1) == BigRational(1, 4));
  CHECK(mass({Family::cut_riffle, 4, 3}, P("2 1 4 3")) == BigRational(1, 108));
  CHECK(mass({Family::cut_riffle, 4, 3}, Permutation::identity(4)) == BigRational(5, 54));
  CHECK_THROWS_AS(cut_riffle_mass(3, 2, 0), DomainError);
  CHECK_THROWS_AS(MeasureSpec({Family::cut_riffle, 1, 2}).validate(), DomainError);
}

TEST_CASE("affine mass") {
  CHECK(affine_mass(2, 2, 1, 0) == BigRational(1, 2));
  CHECK(affine_mass(2, 2, 1, 1) == BigRational(1, 2));
  CHECK(affine_mass(2, 3, 1, 0) == BigRational(2, 3));
  CHECK(affine_mass(2, 3, 1, 1) == BigRational(1, 3));
  CHECK(affine_mass(4, 3, 3, 4) == BigRational(1, 27));
  CHECK(affine_mass(4, 3, 3, 5) == BigRational(0));
  // The divisor r = 1 term alone is the cut-riffle mass; with gcd(n, k - cd) = 1
  // nothing else contributes.
  CHECK(affine_mass(5, 8, 2, 3) == cut_riffle_mass(5, 8, 2));
}

TEST_CASE("affine law for k = 2 on four cards") {
  // Support of the physical two-pile procedure, each with mass 1/8.
  const auto dist = full_distribution({Family::affine, 4, 2}, limits);
  for (const char* s : {"1 2 3 4", "4 1 2 3", "4 1 3 2", "3 1 4 2", "4 2 3 1", "3 2 4 1", "2 3 4 1", "3 4 1 2"})
    CHECK(dist[P(s)] == BigRational(1, 8));
  CHECK(dist[P("2 1 4 3")] == BigRational(0));
}

TEST_CASE("full distributions") {
  const auto r = full_distribution({Family::riffle, 3, 2}, limits);
  CHECK(r[P("1 2 3")] == BigRational(1, 2));
  CHECK(r[P("2 1 3")] == BigRational(1, 8));
  CHECK(r[P("3 2 1")] == BigRational(0));
  CHECK(r.total() == BigRational(1));
  const auto u = full_distribution({Family::uniform, 3, 1}, limits);
  for (const auto& m : u.masses()) CHECK(m == BigRational(1, 6));
  const auto a = full_distribution({Family::affine, 2, 2}, limits);
  CHECK(a.at_rank(0) == BigRational(1, 2));
  CHECK(a.at_rank(1) == BigRational(1, 2));
  Limits small;
  small.enum_limit = 5;
  CHECK_THROWS_AS(full_distribution({Family::riffle, 6, 2}, small), ResourceError);
}

TEST_CASE("normalization") {
  for (int n = 2; n <= 6; ++n)
    for (std::int64_t k : {1, 2, 3, 4, 6, 12})
      for (auto f : {Family::riffle, Family::cut_riffle, Family::affine})
        CHECK(full_distribution({f, n, k}, limits).total() == BigRational(1));
}

TEST_CASE("convolution") {
  const auto r = full_distribution({Family::riffle, 4, 3}, limits);
  CHECK(convolve(r, point_mass(Permutation::identity(4), limits), limits) == r);
  CHECK(convolve(point_mass(Permutation::identity(4), limits), r, limits) == r);
  for (int n = 2; n <= 6; ++n) {
    const auto cut = cut_measure(n, limits);
    CHECK(convolve(cut, cut, limits) == cut);
  }
  CHECK(convolve(full_distribution({Family::riffle, 5, 2}, limits), full_distribution({Family::riffle, 5, 3}, limits),
                 limits) == full_distribution({Family::riffle, 5, 6}, limits));
  CHECK(convolve(cut_measure(5, limits), full_distribution({Family::riffle, 5, 3}, limits), limits) ==
        full_distribution({Family::cut_riffle, 5, 3}, limits));
  // The other order is a different law once n >= 4.
  CHECK_FALSE(convolve(full_distribution({Family::riffle, 4, 2}, limits), cut_measure(4, limits), limits) ==
              full_distribution({Family::cut_riffle, 4, 2}, limits));
  CHECK_THROWS_AS(convolve(cut_measure(3, limits), cut_measure(4, limits), limits), DomainError);
}

TEST_CASE("cut measure") {
  const auto c2 = cut_measure(2, limits);
  CHECK(c2[P("1 2")] == BigRational(1, 2));
  CHECK(c2[P("2 1")] == BigRational(1, 2));
  const auto c3 = cut_measure(3, limits);
  CHECK(c3[P("2 3 1")] == BigRational(1, 3));
  CHECK(c3[P("3 1 2")] == BigRational(1, 3));
  CHECK(c3[P("1 2 3")] == BigRational(1, 3));
}

TEST_CASE("riffle oracle") {
  CHECK(riffle_oracle(3, 2, limits) == full_distribution({Family::riffle, 3, 2}, limits));
  const auto two = riffle_oracle(2, 2, limits);
  CHECK(two[P("1 2")] == BigRational(3, 4));
  CHECK(two[P("2 1")] == BigRational(1, 4));
  CHECK(riffle_oracle(4, 1, limits) == point_mass(Permutation::identity(4), limits));
  Limits small;
  small.word_limit = 100;
  CHECK_THROWS_AS(riffle_oracle(5, 3, small), ResourceError);
}

TEST_CASE("class distributions") {
  const auto u = class_distribution(full_distribution({Family::uniform, 3, 1}, limits));
  CHECK(u.at({1, 1, 1}) == BigRational(1, 6));
  CHECK(u.at({2, 1}) == BigRational(1, 2));
  CHECK(u.at({3}) == BigRational(1, 3));
  const auto id = class_distribution(point_mass(Permutation::identity(4), limits));
  CHECK(id.size() == 1u);
  CHECK(id.at({1, 1, 1, 1}) == BigRational(1));
  for (int n = 2; n <= 5; ++n)
    for (std::int64_t k : {2, 3}) {
      const auto r = full_distribution({Family::riffle, n, k}, limits);
      const auto cut = cut_measure(n, limits);
      CHECK(class_distribution(convolve(r, cut, limits)) == class_distribution(convolve(cut, r, limits)));
    }
}

TEST_CASE("statistics") {
  CHECK(Statistic::parse("card-position(3)").card == 3);
  CHECK(Statistic::parse("card-position:2").name() == "card-position(2)");
  CHECK(Statistic::parse("cyclic-descents").kind == StatisticKind::cyclic_descents);
  CHECK_THROWS_AS(Statistic::parse("bogus"), DomainError);
  CHECK_THROWS_AS(Statistic::parse("card-position(4)").validate(3), DomainError);
  CHECK_THROWS_AS(Statistic::parse("cyclic-descents").validate(1), DomainError);
}

TEST_CASE("statistic marginals") {
  const auto d = stat_distribution({Family::riffle, 3, 2}, Statistic::parse("descents"), limits);
  CHECK(d.masses.at(0) == BigRational(1, 2));
  CHECK(d.masses.at(1) == BigRational(1, 2));
  CHECK(d.total() == BigRational(1));

  // Closed form agrees with enumeration.
  for (int n = 2; n <= 6; ++n) {
    const MeasureSpec r{Family::riffle, n, 3}, c{Family::cut_riffle, n, 3};
    const auto des = Statistic::parse("descents"), cds = Statistic::parse("cyclic-descents");
    CHECK(has_closed_form_marginal(r, des));
    CHECK(stat_distribution(r, des, limits) == marginal(full_distribution(r, limits), des));
    CHECK(stat_distribution(c, cds, limits) == marginal(full_distribution(c, limits), cds));
  }

  // n * A_{n-1,d} permutations per cyclic-descent value.
  const int n = 7;
  const auto cds = stat_distribution({Family::uniform, n, 1}, Statistic::parse("cyclic-descents"), limits);
  for (int dd = 1; dd <= n - 1; ++dd)
    CHECK(cds.masses.at(dd) == BigRational(BigInt(n) * eulerian(n - 1, dd), factorial(n)));

  // Uniform descents at n = 52 needs no enumeration.
  const auto big = stat_distribution({Family::uniform, 52, 1}, Statistic::parse("descents"), limits);
  CHECK(big.masses.at(10) == BigRational(eulerian(52, 11), factorial(52)));
  CHECK(big.total() == BigRational(1));

  // Any card lands in a uniform position after a cut.
  for (int m = 2; m <= 6; ++m)
    for (int card = 1; card <= m; ++card) {
      const auto pos = stat_distribution({Family::cut_riffle, m, 2},
                                         Statistic::parse("card-position(" + std::to_string(card) + ")"), limits);
      for (int i = 1; i <= m; ++i) CHECK(pos.masses.at(i) == BigRational(1, m));
    }

  Limits small;
  small.enum_limit = 6;
  CHECK_THROWS_AS(stat_distribution({Family::affine, 8, 2}, Statistic::parse("lis"), small), ResourceError);
}
