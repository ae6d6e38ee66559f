#include "shufflemix/measures.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <tuple>

#include "parallel.hpp"
#include "shufflemix/error.hpp"

namespace shufflemix {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::riffle: return "riffle";
    case Family::cut_riffle: return "cut-riffle";
    case Family::affine: return "affine";
    case Family::uniform: return "uniform";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "riffle") return Family::riffle;
  if (name == "cut-riffle") return Family::cut_riffle;
  if (name == "affine") return Family::affine;
  if (name == "uniform") return Family::uniform;
  throw DomainError("unknown family '" + std::string(name) + "' (expected riffle, cut-riffle, affine or uniform)");
}

void MeasureSpec::validate() const {
  if (n < 1) throw DomainError("deck size n must be >= 1");
  if (family == Family::uniform) return;
  if (k < 1) throw DomainError("shuffle parameter k must be >= 1");
  if ((family == Family::cut_riffle || family == Family::affine) && n < 2)
    throw DomainError(std::string(to_string(family)) + " requires n >= 2");
}

std::string MeasureSpec::describe() const {
  std::string out(to_string(family));
  out += " n=" + std::to_string(n);
  if (family != Family::uniform) out += " k=" + std::to_string(k);
  return out;
}

// ---------------------------------------------------------------------------
// Mass functions

namespace {

BigRational ratio(const BigInt& num, const BigInt& den) { return BigRational(num, den); }

}  // namespace

BigRational riffle_mass(int n, std::int64_t k, int d) {
  MeasureSpec{Family::riffle, n, k}.validate();
  if (d < 0 || d > n - 1) throw DomainError("riffle_mass: descent count must lie in 0..n-1");
  return ratio(binomial(n + k - d - 1, n), power(k, static_cast<unsigned long>(n)));
}

BigRational cut_riffle_mass(int n, std::int64_t k, int cd) {
  MeasureSpec{Family::cut_riffle, n, k}.validate();
  if (cd < 1 || cd > n - 1) throw DomainError("cut_riffle_mass: cyclic descent count must lie in 1..n-1");
  return ratio(binomial(n + k - cd - 1, n - 1), n * power(k, static_cast<unsigned long>(n - 1)));
}

BigRational affine_mass(int n, std::int64_t k, int cd, int maj) {
  MeasureSpec{Family::affine, n, k}.validate();
  if (cd < 1 || cd > n - 1) throw DomainError("affine_mass: cyclic descent count must lie in 1..n-1");
  if (maj < 0) throw DomainError("affine_mass: major index must be >= 0");
  const BigInt k_pow = power(k, static_cast<unsigned long>(n - 1));
  const std::int64_t gap = k - cd;
  if (gap > 0) {
    BigInt sum = 0;
    for (const auto r : divisors(std::gcd(static_cast<std::int64_t>(n), gap))) {
      const std::int64_t c_r = ramanujan_sum(r, -static_cast<std::int64_t>(maj));
      if (c_r == 0) continue;
      sum += binomial((n + gap - r) / r, (n - r) / r) * BigInt(static_cast<long>(c_r));
    }
    if (sum < 0)
      throw ConsistencyError("affine_mass: negative mass for n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " cd=" + std::to_string(cd) + " maj=" + std::to_string(maj));
    return ratio(sum, n * k_pow);
  }
  if (gap == 0 && maj % n == 0) return ratio(1, k_pow);
  return BigRational(0);
}

BigRational uniform_mass(int n) {
  if (n < 1) throw DomainError("deck size n must be >= 1");
  return ratio(1, factorial(n));
}

BigRational mass(const MeasureSpec& spec, const PermStats& stats) {
  switch (spec.family) {
    case Family::riffle: return riffle_mass(spec.n, spec.k, stats.descents);
    case Family::cut_riffle: return cut_riffle_mass(spec.n, spec.k, stats.cyclic_descents);
    case Family::affine: return affine_mass(spec.n, spec.k, stats.cyclic_descents, stats.major_index);
    case Family::uniform: return uniform_mass(spec.n);
  }
  throw ConsistencyError("unhandled family");
}

BigRational mass(const MeasureSpec& spec, const Permutation& p) {
  if (p.size() != spec.n)
    throw DomainError("permutation has " + std::to_string(p.size()) + " symbols but n = " + std::to_string(spec.n));
  return mass(spec, stats_of(p));
}

// ---------------------------------------------------------------------------
// Full distributions

FullDistribution::FullDistribution(int n) : n_(n) {
  masses_.resize(static_cast<std::size_t>(factorial_u64(n)));
}

FullDistribution::FullDistribution(int n, std::vector<BigRational> masses) : n_(n), masses_(std::move(masses)) {
  if (masses_.size() != factorial_u64(n)) throw DomainError("distribution size does not match n!");
}

BigRational FullDistribution::total() const {
  mpq_class acc = 0;
  for (const auto& m : masses_) acc += m.mpq();
  return BigRational::from_mpq(acc);
}

FullDistribution full_distribution(const MeasureSpec& spec, const Limits& limits) {
  spec.validate();
  require_enumerable(spec.n, limits);
  FullDistribution out(spec.n);
  const std::uint64_t count = factorial_u64(spec.n);
  detail::parallel_chunks(count, limits.threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    // Masses depend only on (d, cd, maj); memoize per worker.
    std::map<std::tuple<int, int, int>, BigRational> memo;
    for_each_permutation(spec.n, begin, end, [&](const Permutation& p, std::uint64_t r) {
      const auto s = stats_of(p);
      const auto key = std::make_tuple(s.descents, s.cyclic_descents, s.major_index);
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, mass(spec, s)).first;
      out.at_rank(r) = it->second;
    });
  });
  return out;
}

FullDistribution point_mass(const Permutation& p, const Limits& limits) {
  require_enumerable(p.size(), limits);
  FullDistribution out(p.size());
  out.at_rank(rank(p)) = 1;
  return out;
}

FullDistribution cut_measure(int n, const Limits& limits) {
  require_enumerable(n, limits);
  FullDistribution out(n);
  const BigRational share(1, n);
  for (int j = 1; j <= n; ++j) out.at_rank(rank(cyclic_shift_power(n, j))) += share;
  return out;
}

FullDistribution convolve(const FullDistribution& p, const FullDistribution& q, const Limits& limits) {
  if (p.n() != q.n())
    throw DomainError("convolve: size mismatch (" + std::to_string(p.n()) + " vs " + std::to_string(q.n()) + ")");
  const int n = p.n();
  require_enumerable(n, limits);
  const auto perms = enumerate(n, limits);
  std::vector<std::uint64_t> q_support;
  for (std::uint64_t r = 0; r < q.size(); ++r)
    if (!q.at_rank(r).is_zero()) q_support.push_back(r);

  const unsigned workers = std::max(1u, limits.threads);
  std::vector<std::vector<mpq_class>> partial(workers);
  detail::parallel_chunks(p.size(), workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& acc = partial[w];
    acc.assign(p.size(), mpq_class(0));
    mpq_class term;
    for (std::uint64_t t = begin; t < end; ++t) {
      const auto& pt = p.at_rank(t).mpq();
      if (sgn(pt) == 0) continue;
      const auto& tau = perms[static_cast<std::size_t>(t)];
      for (const auto s : q_support) {
        const auto target = rank(compose(perms[static_cast<std::size_t>(s)], tau));
        term = pt * q.at_rank(s).mpq();
        acc[static_cast<std::size_t>(target)] += term;
      }
    }
  });
  FullDistribution out(n);
  for (std::size_t r = 0; r < out.size(); ++r) {
    mpq_class sum = 0;
    for (const auto& acc : partial)
      if (!acc.empty()) sum += acc[r];
    out.at_rank(r) = BigRational::from_mpq(sum);
  }
  return out;
}

FullDistribution riffle_oracle(int n, std::int64_t k, const Limits& limits) {
  MeasureSpec{Family::riffle, n, k}.validate();
  require_enumerable(n, limits);
  const BigInt words = power(k, static_cast<unsigned long>(n));
  if (words > BigInt(std::to_string(limits.word_limit)))
    throw ResourceError("riffle oracle needs k^n = " + words.get_str() + " words, above the word limit (" +
                        std::to_string(limits.word_limit) + "); raise --word-limit");
  const std::uint64_t word_count = words.get_ui();
  const unsigned workers = std::max(1u, limits.threads);
  std::vector<std::vector<std::uint64_t>> counts(workers);

  detail::parallel_chunks(word_count, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& hits = counts[w];
    hits.assign(factorial_u64(n), 0);
    std::vector<int> digits(static_cast<std::size_t>(n));
    std::vector<int> sorted(static_cast<std::size_t>(n));
    std::vector<int> start(static_cast<std::size_t>(k) + 1);
    for (std::uint64_t index = begin; index < end; ++index) {
      std::uint64_t x = index;
      for (int i = n - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::uint64_t>(k));
        x /= static_cast<std::uint64_t>(k);
      }
      // Stable counting sort of positions 1..n by digit.
      std::fill(start.begin(), start.end(), 0);
      for (const int dgt : digits) ++start[static_cast<std::size_t>(dgt) + 1];
      std::partial_sum(start.begin(), start.end(), start.begin());
      for (int i = 0; i < n; ++i) sorted[static_cast<std::size_t>(start[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])]++)] = i + 1;
      ++hits[static_cast<std::size_t>(rank(Permutation(sorted)))];
    }
  });

  FullDistribution out(n);
  for (std::size_t r = 0; r < out.size(); ++r) {
    std::uint64_t total = 0;
    for (const auto& h : counts)
      if (!h.empty()) total += h[r];
    out.at_rank(r) = BigRational(BigInt(std::to_string(total)), words);
  }
  return out;
}

ClassDistribution class_distribution(const FullDistribution& p) {
  ClassDistribution out;
  for_each_permutation(p.n(), 0, p.size(), [&](const Permutation& perm, std::uint64_t r) {
    out[cycle_type(perm)] += p.at_rank(r);
  });
  std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

Statistic Statistic::parse(std::string_view text) {
  if (text == "descents") return {StatisticKind::descents};
  if (text == "cyclic-descents") return {StatisticKind::cyclic_descents};
  if (text == "major-index") return {StatisticKind::major_index};
  if (text == "lis") return {StatisticKind::lis};
  if (text == "permutation") return {StatisticKind::permutation};
  constexpr std::string_view prefix = "card-position";
  if (text.starts_with(prefix)) {
    auto rest = text.substr(prefix.size());
    if (!rest.empty() && (rest.front() == '(' || rest.front() == ':')) {
      const bool paren = rest.front() == '(';
      rest.remove_prefix(1);
      if (paren) {
        if (rest.empty() || rest.back() != ')') throw DomainError("malformed statistic '" + std::string(text) + "'");
        rest.remove_suffix(1);
      }
      int card = 0;
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), card);
      if (ec == std::errc() && ptr == rest.data() + rest.size() && card >= 1)
        return {StatisticKind::card_position, card};
    }
  }
  throw DomainError("unknown statistic '" + std::string(text) +
                    "' (expected descents, cyclic-descents, major-index, lis, permutation or card-position(i))");
}

std::string Statistic::name() const {
  switch (kind) {
    case StatisticKind::descents: return "descents";
    case StatisticKind::cyclic_descents: return "cyclic-descents";
    case StatisticKind::major_index: return "major-index";
    case StatisticKind::lis: return "lis";
    case StatisticKind::permutation: return "permutation";
    case StatisticKind::card_position: return "card-position(" + std::to_string(card) + ")";
  }
  return "?";
}

void Statistic::validate(int n) const {
  if (kind == StatisticKind::cyclic_descents && n < 2)
    throw DomainError("cyclic descents are defined only for n >= 2");
  if (kind == StatisticKind::card_position && (card < 1 || card > n))
    throw DomainError("card-position index must lie in 1..n");
}

long Statistic::value(const Permutation& p) const {
  switch (kind) {
    case StatisticKind::descents: return descents(p);
    case StatisticKind::cyclic_descents: return cyclic_descents(p);
    case StatisticKind::major_index: return major_index(p);
    case StatisticKind::lis: return lis(p);
    case StatisticKind::card_position: return p(card);
    case StatisticKind::permutation: return static_cast<long>(rank(p));
  }
  throw ConsistencyError("unhandled statistic");
}

BigRational StatDistribution::total() const {
  mpq_class acc = 0;
  for (const auto& [v, m] : masses) acc += m.mpq();
  return BigRational::from_mpq(acc);
}

StatDistribution marginal(const FullDistribution& p, const Statistic& stat) {
  stat.validate(p.n());
  StatDistribution out{stat.name(), {}};
  std::map<long, mpq_class> acc;
  for_each_permutation(p.n(), 0, p.size(), [&](const Permutation& perm, std::uint64_t r) {
    acc[stat.value(perm)] += p.at_rank(r).mpq();
  });
  for (auto& [v, m] : acc) out.masses.emplace(v, BigRational::from_mpq(std::move(m)));
  return out;
}

bool has_closed_form_marginal(const MeasureSpec& spec, const Statistic& stat) {
  switch (spec.family) {
    case Family::riffle: return stat.kind == StatisticKind::descents;
    case Family::cut_riffle: return stat.kind == StatisticKind::cyclic_descents;
    case Family::uniform:
      return stat.kind == StatisticKind::descents || stat.kind == StatisticKind::cyclic_descents ||
             stat.kind == StatisticKind::card_position;
    case Family::affine: return false;
  }
  return false;
}

StatDistribution stat_distribution(const MeasureSpec& spec, const Statistic& stat, const Limits& limits) {
  spec.validate();
  stat.validate(spec.n);
  const int n = spec.n;
  if (!has_closed_form_marginal(spec, stat)) return marginal(full_distribution(spec, limits), stat);

  StatDistribution out{stat.name(), {}};
  const bool uniform = spec.family == Family::uniform;
  switch (stat.kind) {
    case StatisticKind::descents: {
      // A_{n,d+1} permutations carry d descents.
      const auto table = eulerian_table(n);
      for (int d = 0; d < n; ++d) {
        const BigRational each = uniform ? uniform_mass(n) : riffle_mass(n, spec.k, d);
        out.masses.emplace(d, BigRational(table->at(d + 1)) * each);
      }
      break;
    }
    case StatisticKind::cyclic_descents: {
      // n A_{n-1,d} permutations carry d cyclic descents.
      const auto table = eulerian_table(n - 1);
      for (int d = 1; d <= n - 1; ++d) {
        const BigRational each = uniform ? uniform_mass(n) : cut_riffle_mass(n, spec.k, d);
        out.masses.emplace(d, BigRational(n * table->at(d)) * each);
      }
      break;
    }
    case StatisticKind::card_position:
      for (int pos = 1; pos <= n; ++pos) out.masses.emplace(pos, BigRational(1, n));
      break;
    default: throw ConsistencyError("closed-form marginal not available");
  }
  return out;
}

}  // namespace shufflemix
