#include "shufflemix/permcore.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include "shufflemix/error.hpp"

namespace shufflemix {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const auto n = images_.size();
  if (n == 0) throw DomainError("permutation must have at least one symbol");
  std::vector<bool> seen(n + 1, false);
  for (const int v : images_) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)])
      throw DomainError("not a permutation of 1.." + std::to_string(n) + ": " + to_string());
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw DomainError("identity: n must be >= 1");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v), Unchecked{});
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> v;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == ',') {
      ++i;
      continue;
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + i)
      throw DomainError("invalid permutation string: '" + std::string(text) + "'");
    v.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return Permutation(std::move(v));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(images_[i]);
  }
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

Word::Word(std::vector<int> letters, int alphabet_size)
    : letters_(std::move(letters)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 1) throw DomainError("word alphabet size must be >= 1");
  for (const int c : letters_)
    if (c < 1 || c > alphabet_size_)
      throw DomainError("word letter " + std::to_string(c) + " outside 1.." + std::to_string(alphabet_size_));
}

// ---------------------------------------------------------------------------
// Statistics

int descents(const Permutation& p) { return stats_of(p).descents; }

int cyclic_descents(const Permutation& p) {
  if (p.size() < 2) throw DomainError("cyclic descents are defined only for n >= 2");
  return stats_of(p).cyclic_descents;
}

int major_index(const Permutation& p) { return stats_of(p).major_index; }

PermStats stats_of(const Permutation& p) {
  const auto v = p.images();
  PermStats s;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] > v[i + 1]) {
      ++s.descents;
      s.major_index += static_cast<int>(i) + 1;
    }
  }
  s.cyclic_descents = s.descents + (v.size() > 1 && v.back() > v.front() ? 1 : 0);
  return s;
}

namespace {

// Patience sorting: tails[l] is the smallest tail of an increasing run of
// length l+1. `strict` selects increasing vs weakly increasing.
int patience_length(std::span<const int> values, bool strict) {
  std::vector<int> tails;
  for (const int v : values) {
    const auto it = strict ? std::lower_bound(tails.begin(), tails.end(), v)
                           : std::upper_bound(tails.begin(), tails.end(), v);
    if (it == tails.end())
      tails.push_back(v);
    else
      *it = v;
  }
  return static_cast<int>(tails.size());
}

}  // namespace

int lis(const Permutation& p) { return patience_length(p.images(), true); }

int longest_weakly_increasing(const Word& w) { return patience_length(w.letters(), false); }

Permutation word_to_permutation(const Word& w) {
  const int k = w.alphabet_size();
  std::vector<int> next(static_cast<std::size_t>(k) + 2, 0);
  for (const int c : w.letters()) ++next[static_cast<std::size_t>(c) + 1];
  next[1] = 1;
  for (int c = 2; c <= k; ++c) next[static_cast<std::size_t>(c)] += next[static_cast<std::size_t>(c) - 1];
  std::vector<int> images;
  images.reserve(w.letters().size());
  for (const int c : w.letters()) images.push_back(next[static_cast<std::size_t>(c)]++);
  return Permutation(std::move(images));
}

// ---------------------------------------------------------------------------
// Group operations

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size())
    throw DomainError("compose: size mismatch (" + std::to_string(p.size()) + " vs " + std::to_string(q.size()) + ")");
  std::vector<int> out(q.images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.images_[static_cast<std::size_t>(q.images_[i] - 1)];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

Permutation inverse(const Permutation& p) {
  std::vector<int> out(p.images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[static_cast<std::size_t>(p.images_[i] - 1)] = static_cast<int>(i) + 1;
  return Permutation(std::move(out), Permutation::Unchecked{});
}

Permutation cyclic_shift_power(int n, std::int64_t j) {
  if (n < 1) throw DomainError("cyclic_shift_power: n must be >= 1");
  const std::int64_t shift = ((j % n) + n) % n;
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = static_cast<int>((i + shift) % n) + 1;
  return Permutation(std::move(out));
}

std::vector<int> cycle_type(const Permutation& p) {
  const auto v = p.images();
  std::vector<bool> seen(v.size(), false);
  std::vector<int> lengths;
  for (std::size_t start = 0; start < v.size(); ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(v[i] - 1)) {
      seen[i] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > 20) throw ResourceError("n! does not fit in 64 bits for n = " + std::to_string(n));
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void require_enumerable(int n, const Limits& limits) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > limits.enum_limit || n > 20)
    throw ResourceError("enumerating S_" + std::to_string(n) + " exceeds the enumeration limit (" +
                        std::to_string(limits.enum_limit) + "); raise --enum-limit or use a closed-form path");
}

std::uint64_t rank(const Permutation& p) {
  const int n = p.size();
  const auto v = p.images();
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < n; ++j)
      if (v[static_cast<std::size_t>(j)] < v[static_cast<std::size_t>(i)]) ++smaller_after;
    r = r * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller_after);
  }
  return r;
}

Permutation unrank(int n, std::uint64_t r) {
  if (r >= factorial_u64(n)) throw DomainError("unrank: rank out of range for S_" + std::to_string(n));
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    const std::uint64_t block = factorial_u64(i - 1);
    const auto idx = static_cast<std::size_t>(r / block);
    r %= block;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(out), Permutation::Unchecked{});
}

PermutationCursor::PermutationCursor(int n, std::uint64_t begin_rank)
    : current_(unrank(n, begin_rank)), rank_(begin_rank) {}

bool PermutationCursor::advance() {
  ++rank_;
  return std::next_permutation(current_.images_.begin(), current_.images_.end());
}

void for_each_permutation(int n, std::uint64_t begin, std::uint64_t end,
                          const std::function<void(const Permutation&, std::uint64_t)>& fn) {
  end = std::min(end, factorial_u64(n));
  if (begin >= end) return;
  PermutationCursor cursor(n, begin);
  while (true) {
    fn(cursor.current(), cursor.rank());
    if (cursor.rank() + 1 >= end || !cursor.advance()) break;
  }
}

std::vector<Permutation> enumerate(int n, const Limits& limits) {
  require_enumerable(n, limits);
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(factorial_u64(n)));
  for_each_permutation(n, 0, factorial_u64(n), [&](const Permutation& p, std::uint64_t) { out.push_back(p); });
  return out;
}

}  // namespace shufflemix
