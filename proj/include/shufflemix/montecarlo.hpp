#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "shufflemix/measures.hpp"

namespace shufflemix {

/// Seeded stream: std::mt19937_64 initialised from std::seed_seq over the
/// 32-bit halves of (seed, stream_id). Both are fully specified by the C++
/// standard, so sequences are reproducible across platforms. Bounded draws use
/// rejection sampling instead of std::uniform_int_distribution, whose output
/// is implementation-defined.
class Rng {
 public:
  static constexpr std::string_view generator_id =
      "std::mt19937_64 seeded by std::seed_seq{seed_lo,seed_hi,stream_lo,stream_hi}; bounded draws by rejection";

  Rng(std::uint64_t seed, std::uint64_t stream_id);
  std::uint64_t next() { return engine_(); }
  /// Uniform on 0..bound-1 (bound >= 1).
  std::uint64_t below(std::uint64_t bound);
  bool bit() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

// Every simulator returns the deck arrangement sigma: sigma(i) is the label of
// the card at position i, cards starting in order 1..n from the top. The law
// compared against the closed-form measures is that of sigma^{-1}.

/// Gilbert-Shannon-Reeds k-shuffle: multinomial(n; 1/k, ..., 1/k) pile sizes,
/// then cards dropped one at a time from the pile bottoms with probability
/// proportional to the remaining pile sizes.
Permutation gsr_shuffle(int n, std::int64_t k, Rng& rng);
/// Independent uniform digit per position, stable sort by digit; returns the
/// inverse of the sorted arrangement so the convention matches gsr_shuffle.
Permutation inverse_digit_shuffle(int n, std::int64_t k, Rng& rng);
/// Cut at a uniform position (rotation by j in 1..n), then gsr_shuffle.
Permutation cut_then_riffle(int n, std::int64_t k, Rng& rng);
/// Physical inverse affine 2-shuffle of an even deck: choose an even 2j in
/// 0..deck_size with mass C(deck_size, 2j)/2^{deck_size-1}; the second pile is
/// the bottom j cards placed on the top j cards, the first pile is the middle;
/// riffle the two piles.
Permutation affine2_inverse_shuffle(int deck_size, Rng& rng);
Permutation uniform_shuffle(int n, Rng& rng);

/// Piles of the inverse affine 2-shuffle for a given j, listed top to bottom:
/// {middle cards j+1..deck-j, bottom j cards followed by top j cards}.
std::vector<std::vector<int>> affine2_piles(int deck_size, int j);
/// Exact law of sigma^{-1} for affine2_inverse_shuffle, by enumerating j and
/// every interleaving of the two piles (all equally likely under
/// proportional drops).
FullDistribution affine2_physical_law(int deck_size, const Limits& limits);

enum class Simulator { gsr, inverse_digit, cut_riffle, affine2, uniform };

std::string_view to_string(Simulator s);
/// Accepts "gsr" (alias "riffle"), "inverse-digit", "cut-riffle",
/// "affine2" (alias "affine"), "uniform".
Simulator parse_simulator(std::string_view name);

struct SampleRequest {
  Simulator simulator = Simulator::gsr;
  int n = 1;
  std::int64_t k = 2;
  int iterations = 1;  // shuffles composed per sample
  Statistic statistic;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // one stream per worker

  /// Law of sigma^{-1} after `iterations` shuffles (k raised to the power).
  MeasureSpec exact_spec() const;
  void validate() const;
};

struct SampleCell {
  long value = 0;
  std::uint64_t count = 0;
  std::optional<BigRational> exact;
  /// (count - N p) / sqrt(N p (1-p)); infinite when p is 0 or 1 and the count
  /// disagrees.
  std::optional<double> sigma;
};

struct SampleReport {
  SampleRequest request;
  std::string generator{Rng::generator_id};
  std::string law = "inverse of deck arrangement";
  bool exact_available = false;
  std::vector<SampleCell> cells;
  double max_abs_sigma = 0.0;  // infinity if any cell is impossible under the exact law
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
  std::vector<long> flagged;  // values beyond the flag threshold
  double flag_threshold = 4.0;

  bool within(double sigmas) const { return max_abs_sigma <= sigmas; }
};

/// Draws one arrangement (all iterations composed).
Permutation draw(const SampleRequest& req, Rng& rng);
/// Raw value counts; worker w uses stream w. Deterministic for fixed
/// (seed, threads).
std::map<long, std::uint64_t> sample_counts(const SampleRequest& req);
/// Counts plus comparison against the exact marginal when it is computable
/// within `limits`.
SampleReport sample_statistic(const SampleRequest& req, const Limits& limits);

/// Largest |c_a - c_b| / sqrt(c_a + c_b) over all values, for two count maps
/// of equal sample size.
double two_sample_max_sigma(const std::map<long, std::uint64_t>& a, const std::map<long, std::uint64_t>& b);

}  // namespace shufflemix
