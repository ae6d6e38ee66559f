#include "shufflemix/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "shufflemix/error.hpp"
#include "shufflemix/exactnum.hpp"
#include "shufflemix/measures.hpp"
#include "shufflemix/montecarlo.hpp"
#include "shufflemix/permcore.hpp"
#include "shufflemix/tvd.hpp"

namespace shufflemix {

namespace {

struct SuiteDefaults {
  int max_n;
  std::int64_t max_k;
};

const std::map<std::string_view, SuiteDefaults>& defaults() {
  static const std::map<std::string_view, SuiteDefaults> table{
      {"worpitzky", {10, 20}},  {"eulerian", {10, 0}},        {"bernoulli", {12, 30}},
      {"cyclic-descents", {8, 0}}, {"normalization", {7, 8}}, {"closure", {6, 3}},
      {"tv-equalities", {10, 64}}, {"bounds", {8, 64}},        {"oracle", {6, 4}},
      {"affine-physical", {6, 0}},
  };
  return table;
}

class Checker {
 public:
  explicit Checker(VerifyReport& report) : report_(report) {}
  void expect(bool ok, const std::function<std::string()>& describe) {
    ++report_.checks;
    if (!ok) report_.failures.push_back(describe());
  }
  void note(std::string text) { report_.notes.push_back(std::move(text)); }

 private:
  VerifyReport& report_;
};

std::string s(const BigRational& q) { return q.to_string(); }
std::string s(const BigInt& z) { return z.get_str(); }

void suite_worpitzky(Checker& c, int max_n, std::int64_t max_k) {
  for (int n = 1; n <= max_n; ++n) {
    const auto table = eulerian_table(n);
    for (std::int64_t k = 1; k <= max_k; ++k) {
      BigInt rhs = 0;
      for (int j = 1; j <= n; ++j) rhs += table->at(j) * binomial(k + n - j, n);
      const BigInt lhs = power(k, static_cast<unsigned long>(n));
      c.expect(lhs == rhs, [&] {
        return "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": k^n=" + s(lhs) + " but sum=" + s(rhs);
      });
    }
  }
}

void suite_eulerian(Checker& c, int max_n, const Limits& limits) {
  for (int n = 1; n <= max_n; ++n) {
    const auto table = eulerian_table(n);
    BigInt sum = 0;
    for (int d = 1; d <= n; ++d) {
      sum += table->at(d);
      c.expect(table->at(d) == table->at(n + 1 - d), [&] {
        return "symmetry n=" + std::to_string(n) + " d=" + std::to_string(d) + ": " + s(table->at(d)) +
               " vs " + s(table->at(n + 1 - d));
      });
      c.expect(table->at(d) >= 1, [&] { return "A_{" + std::to_string(n) + "," + std::to_string(d) + "} < 1"; });
    }
    c.expect(sum == factorial(n), [&] { return "row sum n=" + std::to_string(n) + " is " + s(sum); });
  }
  // Cross-check the recurrence against direct descent counts.
  const int enum_n = std::min({max_n, limits.enum_limit, 8});
  for (int n = 1; n <= enum_n; ++n) {
    std::vector<BigInt> counts(static_cast<std::size_t>(n), 0);
    for_each_permutation(n, 0, factorial_u64(n), [&](const Permutation& p, std::uint64_t) {
      ++counts[static_cast<std::size_t>(descents(p))];
    });
    for (int d = 1; d <= n; ++d)
      c.expect(counts[static_cast<std::size_t>(d - 1)] == eulerian(n, d), [&] {
        return "enumerated count n=" + std::to_string(n) + " d=" + std::to_string(d) + ": " +
               s(counts[static_cast<std::size_t>(d - 1)]) + " vs A=" + s(eulerian(n, d));
      });
  }
}

void suite_bernoulli(Checker& c, int max_n, std::int64_t max_t) {
  c.expect(bernoulli(0) == BigRational(1), [] { return "B_0 != 1"; });
  c.expect(bernoulli(1) == BigRational(-1, 2), [] { return "B_1 != -1/2"; });
  const int top = static_cast<int>(std::max<std::int64_t>(2 * max_t, 4));
  for (int i = 3; i <= top; i += 2)
    c.expect(bernoulli(i).is_zero(), [&] { return "B_" + std::to_string(i) + " = " + s(bernoulli(i)); });
  // (-1)^{t-1} B_{2t} / (2t-1)! positive and strictly decreasing.
  std::optional<BigRational> prev;
  for (int t = 1; t <= max_t; ++t) {
    BigRational term = bernoulli(2 * t) / BigRational(factorial(2 * t - 1));
    if (t % 2 == 0) term = -term;
    c.expect(term.sign() > 0, [&] { return "t=" + std::to_string(t) + ": term " + s(term) + " not positive"; });
    if (prev)
      c.expect(term < *prev, [&] {
        return "t=" + std::to_string(t) + ": term " + s(term) + " not below previous " + s(*prev);
      });
    prev = term;
  }
  for (std::int64_t a = 1; a <= 20; ++a)
    for (int n = 1; n <= max_n; ++n) {
      const BigRational via_bernoulli = power_sum_bernoulli(a, static_cast<unsigned long>(n));
      const BigInt direct = power_sum(a, static_cast<unsigned long>(n));
      c.expect(via_bernoulli == BigRational(direct), [&] {
        return "power sum a=" + std::to_string(a) + " n=" + std::to_string(n) + ": " + s(via_bernoulli) +
               " vs " + s(direct);
      });
    }
}

void suite_cyclic_descents(Checker& c, int max_n, const Limits& limits) {
  require_enumerable(max_n, limits);
  for (int n = 2; n <= max_n; ++n) {
    // joint[cd][d]
    std::map<std::pair<int, int>, std::uint64_t> joint;
    for_each_permutation(n, 0, factorial_u64(n), [&](const Permutation& p, std::uint64_t) {
      const auto st = stats_of(p);
      ++joint[{st.cyclic_descents, st.descents}];
      const int gap = st.cyclic_descents - st.descents;
      c.expect((gap == 0 || gap == 1) && st.cyclic_descents >= 1 && st.cyclic_descents <= n - 1,
               [&] { return "cd range violated at " + p.to_string(); });
      if (n <= 6) {
        for (int j = 1; j < n; ++j) {
          const auto shifted = compose(p, cyclic_shift_power(n, j));
          c.expect(cyclic_descents(shifted) == st.cyclic_descents, [&] {
            return "cd not constant on rotations: " + p.to_string() + " vs " + shifted.to_string();
          });
        }
      }
    });
    const auto prev = eulerian_table(n - 1);
    for (int d = 1; d <= n - 1; ++d) {
      const BigInt down = d * prev->at(d);
      const BigInt level = (n - d) * prev->at(d);
      const BigInt got_down = static_cast<unsigned long>(joint[{d, d - 1}]);
      const BigInt got_level = static_cast<unsigned long>(joint[{d, d}]);
      c.expect(got_down == down && got_level == level, [&] {
        return "n=" + std::to_string(n) + " cd=" + std::to_string(d) + ": counts (" + s(got_down) + ", " +
               s(got_level) + ") expected (" + s(down) + ", " + s(level) + ")";
      });
    }
  }
}

std::vector<std::int64_t> capped(std::vector<std::int64_t> values, std::int64_t max_k) {
  std::erase_if(values, [&](std::int64_t k) { return k > max_k; });
  return values;
}

void suite_normalization(Checker& c, int max_n, std::int64_t max_k, const Limits& limits) {
  require_enumerable(max_n, limits);
  for (int n = 2; n <= max_n; ++n)
    for (std::int64_t k = 1; k <= max_k; ++k)
      for (const auto family : {Family::riffle, Family::cut_riffle, Family::affine, Family::uniform}) {
        const MeasureSpec spec{family, n, k};
        const auto dist = full_distribution(spec, limits);
        const auto total = dist.total();
        const bool nonneg = std::all_of(dist.masses().begin(), dist.masses().end(),
                                        [](const BigRational& m) { return m.sign() >= 0; });
        c.expect(total == BigRational(1) && nonneg, [&] {
          return spec.describe() + ": total " + s(total) + (nonneg ? "" : ", negative mass present");
        });
      }
}

void suite_closure(Checker& c, int max_n, std::int64_t max_k, const Limits& limits) {
  require_enumerable(max_n, limits);
  const auto ks = capped({2, 3}, max_k);
  for (int n = 2; n <= max_n; ++n)
    for (const auto family : {Family::riffle, Family::cut_riffle, Family::affine})
      for (const auto k1 : ks)
        for (const auto k2 : ks) {
          const auto product = convolve(full_distribution({family, n, k1}, limits),
                                        full_distribution({family, n, k2}, limits), limits);
          const MeasureSpec target{family, n, k1 * k2};
          const auto expected = full_distribution(target, limits);
          c.expect(product == expected, [&] {
            return std::string(to_string(family)) + " n=" + std::to_string(n) + ": k1=" + std::to_string(k1) +
                   " * k2=" + std::to_string(k2) + " differs from k=" + std::to_string(k1 * k2) +
                   " (TV " + s(tv_generic(product, expected)) + ")";
          });
        }
}

void suite_tv_equalities(Checker& c, int max_n, std::int64_t max_k, const Limits& limits) {
  for (int n = 2; n <= max_n; ++n)
    for (const auto k : capped({2, 3, 4, 5, 8, 16, 64}, max_k)) {
      const auto e1 = tv_rc_expr1(n, k), e2 = tv_rc_expr2(n, k), e3 = tv_rc_expr3(n, k);
      c.expect(e1 == e2 && e1 == e3, [&] {
        return "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": expr1=" + s(e1) + " expr2=" + s(e2) +
               " expr3=" + s(e3);
      });
    }
  const int brute_n = std::min({max_n, 7, limits.enum_limit});
  for (int n = 2; n <= brute_n; ++n)
    for (const auto k : capped({2, 3, 4, 8}, max_k)) {
      const auto brute = tv_generic(full_distribution({Family::riffle, n, k}, limits),
                                    full_distribution({Family::cut_riffle, n, k}, limits));
      const auto e1 = tv_rc_expr1(n, k);
      c.expect(brute == e1, [&] {
        return "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": enumeration " + s(brute) + " vs expr1 " +
               s(e1);
      });
    }
}

void suite_bounds(Checker& c, int max_n, std::int64_t max_k, const Limits& limits) {
  for (int n = 2; n <= std::max(max_n, 10); ++n)
    for (const auto k : capped({2, 3, 4, 5, 8, 16, 64}, max_k)) {
      const auto e1 = tv_rc_expr1(n, k), up = tv_rc_upper(n, k);
      c.expect(e1 <= up, [&] {
        return "upper n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + s(e1) + " > " + s(up);
      });
    }
  for (int n = 2; n <= max_n; ++n) {
    int small_n_violations = 0;
    for (std::int64_t k = n; k <= max_k; ++k) {
      const auto e1 = tv_rc_expr1(n, k), lo = tv_rc_lower(n, k);
      if (n >= 4)
        c.expect(lo <= e1, [&] {
          return "lower n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + s(lo) + " > " + s(e1);
        });
      else if (lo > e1)
        ++small_n_violations;
    }
    if (n < 4 && n <= max_k)
      c.note("lower bound at n=" + std::to_string(n) + " (not asserted): exceeds the exact value for " +
             std::to_string(small_n_violations) + " of " + std::to_string(max_k - n + 1) + " k values");
  }
  // ||A - C|| against its bound, and cut smoothing / triangle instances.
  const int enum_n = std::min(max_n, limits.enum_limit);
  for (int n = 4; n <= std::min(enum_n, 6); ++n)
    for (const std::int64_t k : {std::int64_t{n}, std::int64_t{2} * n, std::int64_t{4} * n}) {
      const auto tv = tv_generic(full_distribution({Family::affine, n, k}, limits),
                                 full_distribution({Family::cut_riffle, n, k}, limits));
      const double bound = tv_ac_upper(n, k);
      c.expect(tv.to_double() < bound, [&] {
        return "affine n=" + std::to_string(n) + " k=" + std::to_string(k) + ": TV " + s(tv) + " >= " +
               std::to_string(bound);
      });
    }
  const auto uniform_of = [&](int n) { return full_distribution({Family::uniform, n, 1}, limits); };
  for (int n = 2; n <= std::min(enum_n, 7); ++n) {
    const auto u = uniform_of(n);
    for (std::int64_t k = 1; k <= std::min<std::int64_t>(max_k, 8); ++k) {
      const auto r = full_distribution({Family::riffle, n, k}, limits);
      const auto cr = full_distribution({Family::cut_riffle, n, k}, limits);
      const auto cu = tv_generic(cr, u), ru = tv_generic(r, u), rc = tv_rc_expr1(n, k);
      c.expect(cu <= ru, [&] {
        return "smoothing n=" + std::to_string(n) + " k=" + std::to_string(k) + ": ||C-U||=" + s(cu) +
               " > ||R-U||=" + s(ru);
      });
      c.expect(cu <= rc + ru, [&] { return "triangle n=" + std::to_string(n) + " k=" + std::to_string(k); });
    }
  }
}

void suite_oracle(Checker& c, int max_n, std::int64_t max_k, const Limits& limits) {
  require_enumerable(max_n, limits);
  for (int n = 1; n <= max_n; ++n)
    for (std::int64_t k = 1; k <= max_k; ++k) {
      const auto oracle = riffle_oracle(n, k, limits);
      const auto closed = full_distribution({Family::riffle, n, k}, limits);
      c.expect(oracle == closed, [&] {
        return "riffle n=" + std::to_string(n) + " k=" + std::to_string(k) + ": word enumeration differs (TV " +
               s(tv_generic(oracle, closed)) + ")";
      });
    }
  for (int n = 2; n <= max_n; ++n)
    for (std::int64_t k = 1; k <= max_k; ++k) {
      const auto via_cut = convolve(cut_measure(n, limits), full_distribution({Family::riffle, n, k}, limits), limits);
      const auto closed = full_distribution({Family::cut_riffle, n, k}, limits);
      c.expect(via_cut == closed, [&] {
        return "cut-riffle n=" + std::to_string(n) + " k=" + std::to_string(k) + ": cut * R differs (TV " +
               s(tv_generic(via_cut, closed)) + ")";
      });
    }
}

void suite_affine_physical(Checker& c, int max_n, const Limits& limits) {
  require_enumerable(max_n, limits);
  for (int deck = 2; deck <= max_n; deck += 2) {
    const auto law = affine2_physical_law(deck, limits);
    const auto closed = full_distribution({Family::affine, deck, 2}, limits);
    c.expect(law == closed, [&] {
      return "deck " + std::to_string(deck) + ": physical law differs from A_{2," + std::to_string(deck) +
             "} (TV " + s(tv_generic(law, closed)) + ")";
    });
  }
}

}  // namespace

const std::vector<std::string_view>& verify_suites() {
  static const std::vector<std::string_view> names{"worpitzky",     "eulerian", "bernoulli",     "cyclic-descents",
                                                   "normalization", "closure",  "tv-equalities", "bounds",
                                                   "oracle",        "affine-physical"};
  return names;
}

VerifyReport run_verify(std::string_view suite, std::optional<int> max_n, std::optional<std::int64_t> max_k,
                        const Limits& limits) {
  const auto it = defaults().find(suite);
  if (it == defaults().end()) throw DomainError("unknown verify suite '" + std::string(suite) + "'");
  VerifyReport report;
  report.suite = std::string(suite);
  report.max_n = max_n.value_or(it->second.max_n);
  report.max_k = max_k.value_or(it->second.max_k);
  if (report.max_n < 1) throw DomainError("max-n must be >= 1");
  if (report.max_k < 0) throw DomainError("max-k must be >= 0");
  Checker c(report);
  const int n = report.max_n;
  const std::int64_t k = report.max_k;

  if (suite == "worpitzky") suite_worpitzky(c, n, k);
  else if (suite == "eulerian") suite_eulerian(c, n, limits);
  else if (suite == "bernoulli") suite_bernoulli(c, n, k);
  else if (suite == "cyclic-descents") suite_cyclic_descents(c, n, limits);
  else if (suite == "normalization") suite_normalization(c, n, k, limits);
  else if (suite == "closure") suite_closure(c, n, k, limits);
  else if (suite == "tv-equalities") suite_tv_equalities(c, n, k, limits);
  else if (suite == "bounds") suite_bounds(c, n, k, limits);
  else if (suite == "oracle") suite_oracle(c, n, k, limits);
  else if (suite == "affine-physical") suite_affine_physical(c, n, limits);
  return report;
}

}  // namespace shufflemix
