#include "shufflemix/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <algorithm>
#include <numeric>

#include "parallel.hpp"
#include "shufflemix/error.hpp"

namespace shufflemix {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream_id) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
}

// Interleaves piles (each listed top to bottom) by dropping from the bottoms
// with probability proportional to the remaining sizes. Fills the deck from
// the bottom position upward.
Permutation drop_piles(const std::vector<std::vector<int>>& piles, int n, Rng& rng) {
  std::vector<std::size_t> remaining;
  remaining.reserve(piles.size());
  for (const auto& p : piles) remaining.push_back(p.size());
  std::vector<int> deck(static_cast<std::size_t>(n));
  std::uint64_t total = static_cast<std::uint64_t>(n);
  for (int pos = n - 1; pos >= 0; --pos) {
    std::uint64_t u = rng.below(total);
    std::size_t pile = 0;
    while (u >= remaining[pile]) u -= remaining[pile++];
    deck[static_cast<std::size_t>(pos)] = piles[pile][--remaining[pile]];
    --total;
  }
  return Permutation(std::move(deck));
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id) {
  auto seq = make_seed_seq(seed, stream_id);
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below: bound must be >= 1");
  // Reject the 2^64 mod bound lowest outputs so the remainder is unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

Permutation gsr_shuffle(int n, std::int64_t k, Rng& rng) {
  MeasureSpec{Family::riffle, n, k}.validate();
  // With more piles than cards, only track the nonempty ones.
  const bool dense = k <= n;
  std::vector<std::uint64_t> sizes(dense ? static_cast<std::size_t>(k) : 0);
  std::map<std::uint64_t, int> sparse;
  for (int i = 0; i < n; ++i) {
    const auto pile = rng.below(static_cast<std::uint64_t>(k));
    if (dense)
      ++sizes[pile];
    else
      ++sparse[pile];
  }
  // Piles in order hold consecutive cards: pile 1 is the top of the deck.
  std::vector<std::vector<int>> piles;
  int next = 1;
  auto add_pile = [&](std::uint64_t size) {
    if (size == 0) return;
    std::vector<int> pile(size);
    std::iota(pile.begin(), pile.end(), next);
    next += static_cast<int>(size);
    piles.push_back(std::move(pile));
  };
  if (dense)
    for (const auto s : sizes) add_pile(s);
  else
    for (const auto& [idx, s] : sparse) add_pile(static_cast<std::uint64_t>(s));
  return drop_piles(piles, n, rng);
}

Permutation inverse_digit_shuffle(int n, std::int64_t k, Rng& rng) {
  MeasureSpec{Family::riffle, n, k}.validate();
  std::vector<std::pair<std::uint64_t, int>> keyed;
  keyed.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) keyed.emplace_back(rng.below(static_cast<std::uint64_t>(k)), i);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<int> sorted;
  sorted.reserve(keyed.size());
  for (const auto& [digit, pos] : keyed) sorted.push_back(pos);
  return inverse(Permutation(std::move(sorted)));
}

Permutation cut_then_riffle(int n, std::int64_t k, Rng& rng) {
  MeasureSpec{Family::cut_riffle, n, k}.validate();
  const auto j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n))) + 1;
  return compose(cyclic_shift_power(n, j), gsr_shuffle(n, k, rng));
}

Permutation affine2_inverse_shuffle(int deck_size, Rng& rng) {
  if (deck_size < 2 || deck_size % 2 != 0) throw DomainError("affine 2-shuffle needs an even deck size >= 2");
  // c ~ Bin(deck-1, 1/2); rounding c up to even gives 2j with mass
  // (C(deck-1, 2j) + C(deck-1, 2j-1)) / 2^{deck-1} = C(deck, 2j) / 2^{deck-1}.
  int c = 0;
  for (int i = 0; i < deck_size - 1; ++i) c += rng.bit() ? 1 : 0;
  const int j = (c + (c % 2)) / 2;

  std::vector<std::vector<int>> piles;
  for (auto& pile : affine2_piles(deck_size, j))
    if (!pile.empty()) piles.push_back(std::move(pile));
  return drop_piles(piles, deck_size, rng);
}

std::vector<std::vector<int>> affine2_piles(int deck_size, int j) {
  if (j < 0 || 2 * j > deck_size) throw DomainError("affine2_piles: need 0 <= 2j <= deck size");
  std::vector<int> first, second;
  for (int card = deck_size - j + 1; card <= deck_size; ++card) second.push_back(card);
  for (int card = 1; card <= j; ++card) second.push_back(card);
  for (int card = j + 1; card <= deck_size - j; ++card) first.push_back(card);
  return {std::move(first), std::move(second)};
}

FullDistribution affine2_physical_law(int deck_size, const Limits& limits) {
  if (deck_size < 2 || deck_size % 2 != 0) throw DomainError("affine 2-shuffle needs an even deck size >= 2");
  require_enumerable(deck_size, limits);
  FullDistribution law(deck_size);
  const BigInt half_total = power(2, static_cast<unsigned long>(deck_size - 1));
  for (int j = 0; 2 * j <= deck_size; ++j) {
    const auto piles = affine2_piles(deck_size, j);
    const BigInt interleavings = binomial(deck_size, 2 * j);
    const BigRational each(binomial(deck_size, 2 * j), half_total * interleavings);
    // Choose which positions receive the second pile; a mask with 2j set bits.
    std::vector<bool> mask(static_cast<std::size_t>(deck_size), false);
    std::fill(mask.end() - 2 * j, mask.end(), true);
    do {
      std::vector<int> deck;
      deck.reserve(static_cast<std::size_t>(deck_size));
      std::size_t a = 0, b = 0;
      for (const bool second : mask) deck.push_back(second ? piles[1][b++] : piles[0][a++]);
      law.at_rank(rank(inverse(Permutation(std::move(deck))))) += each;
    } while (std::next_permutation(mask.begin(), mask.end()));
  }
  return law;
}

Permutation uniform_shuffle(int n, Rng& rng) {
  auto p = Permutation::identity(n);
  std::vector<int> v(p.images().begin(), p.images().end());
  for (int i = n - 1; i > 0; --i) std::swap(v[static_cast<std::size_t>(i)], v[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return Permutation(std::move(v));
}

// ---------------------------------------------------------------------------

std::string_view to_string(Simulator s) {
  switch (s) {
    case Simulator::gsr: return "gsr";
    case Simulator::inverse_digit: return "inverse-digit";
    case Simulator::cut_riffle: return "cut-riffle";
    case Simulator::affine2: return "affine2";
    case Simulator::uniform: return "uniform";
  }
  return "?";
}

Simulator parse_simulator(std::string_view name) {
  if (name == "gsr" || name == "riffle") return Simulator::gsr;
  if (name == "inverse-digit") return Simulator::inverse_digit;
  if (name == "cut-riffle") return Simulator::cut_riffle;
  if (name == "affine2" || name == "affine") return Simulator::affine2;
  if (name == "uniform") return Simulator::uniform;
  throw DomainError("unknown simulator '" + std::string(name) +
                    "' (expected riffle/gsr, inverse-digit, cut-riffle, affine/affine2 or uniform)");
}

MeasureSpec SampleRequest::exact_spec() const {
  const std::int64_t base = simulator == Simulator::affine2 ? 2 : k;
  BigInt k_total = power(base, static_cast<unsigned long>(iterations));
  if (!k_total.fits_slong_p()) throw DomainError("k^iterations overflows 64 bits");
  switch (simulator) {
    case Simulator::gsr:
    case Simulator::inverse_digit: return {Family::riffle, n, k_total.get_si()};
    case Simulator::cut_riffle: return {Family::cut_riffle, n, k_total.get_si()};
    case Simulator::affine2: return {Family::affine, n, k_total.get_si()};
    case Simulator::uniform: return {Family::uniform, n, 1};
  }
  throw ConsistencyError("unhandled simulator");
}

void SampleRequest::validate() const {
  if (iterations < 1) throw DomainError("iterations must be >= 1");
  if (simulator == Simulator::affine2 && (n < 2 || n % 2 != 0))
    throw DomainError("affine2 simulator needs an even deck size n >= 2");
  exact_spec().validate();
  statistic.validate(n);
}

Permutation draw(const SampleRequest& req, Rng& rng) {
  auto one = [&]() {
    switch (req.simulator) {
      case Simulator::gsr: return gsr_shuffle(req.n, req.k, rng);
      case Simulator::inverse_digit: return inverse_digit_shuffle(req.n, req.k, rng);
      case Simulator::cut_riffle: return cut_then_riffle(req.n, req.k, rng);
      case Simulator::affine2: return affine2_inverse_shuffle(req.n, rng);
      case Simulator::uniform: return uniform_shuffle(req.n, rng);
    }
    throw ConsistencyError("unhandled simulator");
  };
  // Arrangement after successive shuffles: sigma_1 o sigma_2 o ... o sigma_m.
  Permutation deck = one();
  for (int i = 1; i < req.iterations; ++i) deck = compose(deck, one());
  return deck;
}

std::map<long, std::uint64_t> sample_counts(const SampleRequest& req) {
  req.validate();
  const unsigned workers = std::max(1u, req.threads);
  std::vector<std::map<long, std::uint64_t>> partial(workers);
  detail::parallel_chunks(workers, workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (auto w = begin; w < end; ++w) {
      const std::uint64_t quota = req.samples * (w + 1) / workers - req.samples * w / workers;
      Rng rng(req.seed, w);
      auto& counts = partial[static_cast<std::size_t>(w)];
      for (std::uint64_t s = 0; s < quota; ++s) ++counts[req.statistic.value(inverse(draw(req, rng)))];
    }
  });
  std::map<long, std::uint64_t> merged;
  for (const auto& part : partial)
    for (const auto& [v, c] : part) merged[v] += c;
  return merged;
}

SampleReport sample_statistic(const SampleRequest& req, const Limits& limits) {
  req.validate();
  SampleReport report;
  report.request = req;
  if (req.samples == 0) return report;

  const auto counts = sample_counts(req);
  std::optional<StatDistribution> exact;
  const auto spec = req.exact_spec();
  if (has_closed_form_marginal(spec, req.statistic) || spec.n <= limits.enum_limit)
    exact = stat_distribution(spec, req.statistic, limits);
  report.exact_available = exact.has_value();

  std::map<long, SampleCell> cells;
  for (const auto& [v, c] : counts) cells[v] = SampleCell{v, c, std::nullopt, std::nullopt};
  if (exact)
    for (const auto& [v, m] : exact->masses) {
      auto& cell = cells[v];
      cell.value = v;
      cell.exact = m;
    }

  const double n_samples = static_cast<double>(req.samples);
  const double inf = std::numeric_limits<double>::infinity();
  for (auto& [v, cell] : cells) {
    if (exact && !cell.exact) cell.exact = BigRational(0);
    if (cell.exact) {
      const double p = cell.exact->to_double();
      const double expected = n_samples * p;
      const double sd = std::sqrt(n_samples * p * (1.0 - p));
      const double diff = static_cast<double>(cell.count) - expected;
      double sigma = 0.0;
      if (sd > 0.0)
        sigma = diff / sd;
      else if (std::abs(diff) > 0.5)
        sigma = diff > 0 ? inf : -inf;
      cell.sigma = sigma;
      report.max_abs_sigma = std::max(report.max_abs_sigma, std::abs(sigma));
      if (std::abs(sigma) > report.flag_threshold) report.flagged.push_back(v);
      if (p > 0.0) {
        report.chi_square += diff * diff / expected;
        ++report.degrees_of_freedom;
      }
    }
    report.cells.push_back(std::move(cell));
  }
  if (report.degrees_of_freedom > 0) --report.degrees_of_freedom;
  return report;
}

double two_sample_max_sigma(const std::map<long, std::uint64_t>& a, const std::map<long, std::uint64_t>& b) {
  std::map<long, std::pair<std::uint64_t, std::uint64_t>> joint;
  for (const auto& [v, c] : a) joint[v].first = c;
  for (const auto& [v, c] : b) joint[v].second = c;
  double worst = 0.0;
  for (const auto& [v, cc] : joint) {
    const double total = static_cast<double>(cc.first + cc.second);
    if (total == 0) continue;
    const double z = (static_cast<double>(cc.first) - static_cast<double>(cc.second)) / std::sqrt(total);
    worst = std::max(worst, std::abs(z));
  }
  return worst;
}

}  // namespace shufflemix
