#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "shufflemix/config.hpp"
#include "shufflemix/exactnum.hpp"
#include "shufflemix/permcore.hpp"

namespace shufflemix {

// Every measure below is a law on S_n whose mass at pi is the chance that the
// physical shuffle leaves the deck in arrangement pi^{-1}.

enum class Family { riffle, cut_riffle, affine, uniform };

std::string_view to_string(Family f);
/// Accepts "riffle", "cut-riffle", "affine", "uniform".
Family parse_family(std::string_view name);

struct MeasureSpec {
  Family family = Family::uniform;
  int n = 1;
  std::int64_t k = 1;  // ignored for uniform

  /// Throws DomainError when n or k is out of range for the family.
  void validate() const;
  std::string describe() const;
  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

/// R_{k,n}: C(n+k-d-1, n) / k^n for a permutation with d descents.
BigRational riffle_mass(int n, std::int64_t k, int d);
/// C_{k,n}: C(n+k-cd-1, n-1) / (n k^{n-1}) for cd cyclic descents.
BigRational cut_riffle_mass(int n, std::int64_t k, int cd);
/// A_{k,n}. For k > cd the mass is
///   (1 / (n k^{n-1})) sum_{r | gcd(n, k-cd)} C((n+k-cd-r)/r, (n-r)/r) c_r(-maj),
/// with c_r the Ramanujan sum; 1/k^{n-1} when k = cd and n | maj; else 0.
/// Throws ConsistencyError if the sum comes out negative.
BigRational affine_mass(int n, std::int64_t k, int cd, int maj);
BigRational uniform_mass(int n);

BigRational mass(const MeasureSpec& spec, const PermStats& stats);
BigRational mass(const MeasureSpec& spec, const Permutation& p);

/// Dense exact law on S_n, indexed by lexicographic rank.
class FullDistribution {
 public:
  /// All-zero distribution; n must be small enough for n! to fit in memory.
  explicit FullDistribution(int n);
  FullDistribution(int n, std::vector<BigRational> masses);

  int n() const { return n_; }
  std::size_t size() const { return masses_.size(); }
  const std::vector<BigRational>& masses() const { return masses_; }
  const BigRational& at_rank(std::uint64_t r) const { return masses_.at(static_cast<std::size_t>(r)); }
  BigRational& at_rank(std::uint64_t r) { return masses_.at(static_cast<std::size_t>(r)); }
  const BigRational& operator[](const Permutation& p) const { return at_rank(rank(p)); }
  BigRational total() const;

  friend bool operator==(const FullDistribution&, const FullDistribution&) = default;

 private:
  int n_;
  std::vector<BigRational> masses_;
};

FullDistribution full_distribution(const MeasureSpec& spec, const Limits& limits);
FullDistribution point_mass(const Permutation& p, const Limits& limits);
/// Uniform mass 1/n on zeta^j, j = 1..n (the trivial cut j = n included).
FullDistribution cut_measure(int n, const Limits& limits);

/// Law of "P then Q": mass at pi is sum_tau Q(pi tau^{-1}) P(tau), i.e. the
/// law of sigma o tau with tau ~ P and sigma ~ Q drawn independently.
FullDistribution convolve(const FullDistribution& p, const FullDistribution& q, const Limits& limits);

/// Enumerates all k^n digit words. Each word labels position i with digit
/// w_i; stably sorting positions by digit gives the arrangement left by the
/// inverse shuffle, which receives mass 1/k^n. Budget: k^n <= word_limit.
FullDistribution riffle_oracle(int n, std::int64_t k, const Limits& limits);

using ClassDistribution = std::map<std::vector<int>, BigRational>;
/// Pushforward under cycle_type.
ClassDistribution class_distribution(const FullDistribution& p);

// ---------------------------------------------------------------------------
// Statistics and their marginals

enum class StatisticKind { descents, cyclic_descents, major_index, lis, card_position, permutation };

struct Statistic {
  StatisticKind kind = StatisticKind::descents;
  int card = 0;  // card_position only, 1-based

  /// "descents", "cyclic-descents", "major-index", "lis", "permutation",
  /// "card-position(i)" (also "card-position:i").
  static Statistic parse(std::string_view text);
  std::string name() const;
  /// card-position(i) is pi(i): the final position of card i, since the deck
  /// arrangement is pi^{-1}. "permutation" is the lexicographic rank.
  long value(const Permutation& p) const;
  void validate(int n) const;
};

struct StatDistribution {
  std::string statistic;
  std::map<long, BigRational> masses;
  BigRational total() const;
  friend bool operator==(const StatDistribution&, const StatDistribution&) = default;
};

StatDistribution marginal(const FullDistribution& p, const Statistic& stat);
/// True when stat_distribution avoids enumeration for this pair.
bool has_closed_form_marginal(const MeasureSpec& spec, const Statistic& stat);
/// Exact marginal. Closed form (any n) for riffle/descents, cut-riffle/
/// cyclic-descents and the uniform family's descent-type and card-position
/// statistics; otherwise enumeration with n <= limits.enum_limit.
StatDistribution stat_distribution(const MeasureSpec& spec, const Statistic& stat, const Limits& limits);

}  // namespace shufflemix
