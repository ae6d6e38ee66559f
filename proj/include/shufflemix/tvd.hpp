#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shufflemix/measures.hpp"

namespace shufflemix {

/// (1/2) sum_x |P(x) - Q(x)|.
BigRational tv_generic(const FullDistribution& p, const FullDistribution& q);
BigRational tv_between(const StatDistribution& a, const StatDistribution& b);
/// TV between the two marginals of `stat`; never exceeds the full TV.
BigRational tv_statistic(const MeasureSpec& a, const MeasureSpec& b, const Statistic& stat, const Limits& limits);

// ||R_{k,n} - C_{k,n}|| in three algebraic forms. expr1 is the reference
// value; expr2 and expr3 are independent cross-checks. All need n >= 2.

/// (1/(k^n n)) sum_{j=1}^{n-1} j (n-j) A_{n-1,j} C(n+k-j-1, n-1)
BigRational tv_rc_expr1(int n, std::int64_t k);
/// (k^n - k^{n+1}/n + (n+1) sum_{s<k} s^n - k (n-1) sum_{s<k} s^{n-1}) / k^n
BigRational tv_rc_expr2(int n, std::int64_t k);
/// sum_{t=1}^{n-2} B_{t+1}/k^t ((n)_t/t! + (n-1)_t/(t+1)!) + (n+1) B_n / k^{n-1}
BigRational tv_rc_expr3(int n, std::int64_t k);

/// n / (4k).
BigRational tv_rc_upper(int n, std::int64_t k);
/// (6/25)(n-1)/k + (n+1) B_n / k^{n-1}; DomainError unless k >= n.
BigRational tv_rc_lower(int n, std::int64_t k);
/// n (2n/(e k))^{n/2}, in floating point; DomainError unless k >= n.
double tv_ac_upper(int n, std::int64_t k);

enum class Reference { uniform, riffle, cut_riffle };
std::string_view to_string(Reference r);
Reference parse_reference(std::string_view name);
Family family_of(Reference r);

struct MixingRow {
  int m = 0;
  std::int64_t k = 1;  // base^m
  BigRational tv;
  double tv_float = 0.0;
};

/// Exact ||F_{base^m,n} - Ref|| for m in [m_first, m_last]. Uses Eulerian
/// aggregation for riffle/cut-riffle against uniform, expr1 for riffle
/// against cut-riffle, and enumeration for everything else.
std::vector<MixingRow> mixing_table(Family family, int n, std::int64_t base, int m_first, int m_last,
                                    Reference reference, const Limits& limits);

enum class TvMethod { automatic, expr1, expr2, expr3, brute, statistic };

struct TvResult {
  BigRational value;
  std::string method;  // the path actually taken
};

/// TV between two specs with equal n. `automatic` picks: 0 for identical
/// laws, expr1 for riffle vs cut-riffle, Eulerian aggregation for riffle or
/// cut-riffle vs uniform, enumeration otherwise (ResourceError above the
/// enumeration limit).
TvResult total_variation(const MeasureSpec& a, const MeasureSpec& b, TvMethod method,
                         const std::optional<Statistic>& stat, const Limits& limits);

}  // namespace shufflemix
