#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shufflemix/config.hpp"

namespace shufflemix {

/// A permutation of {1..n} in one-line notation: images()[i] = pi(i+1).
/// Positions and symbols are 1-based everywhere in the public interface.
class Permutation {
 public:
  /// Throws DomainError unless `images` is a bijection of {1..n}, n >= 1.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Space-separated one-line notation, e.g. "1 7 2 3 8 4 5 9 6".
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(images_.size()); }
  /// pi(i) for 1 <= i <= n.
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  std::span<const int> images() const { return images_; }
  std::string to_string() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}
  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);
  friend Permutation unrank(int, std::uint64_t);
  friend class PermutationCursor;

  std::vector<int> images_;
};

/// A word of length n over the alphabet {1..k}.
class Word {
 public:
  Word(std::vector<int> letters, int alphabet_size);
  std::span<const int> letters() const { return letters_; }
  int alphabet_size() const { return alphabet_size_; }
  int size() const { return static_cast<int>(letters_.size()); }

 private:
  std::vector<int> letters_;
  int alphabet_size_;
};

/// Number of i in 1..n-1 with pi(i) > pi(i+1).
int descents(const Permutation& p);
/// descents plus one when pi(n) > pi(1). Undefined for n = 1 (DomainError).
int cyclic_descents(const Permutation& p);
/// Sum of descent positions.
int major_index(const Permutation& p);
/// Length of the longest increasing subsequence (patience sorting).
int lis(const Permutation& p);

/// Statistics used by the mass functions, computed in one pass.
struct PermStats {
  int descents = 0;
  int cyclic_descents = 0;  // equals descents when n = 1
  int major_index = 0;
};
PermStats stats_of(const Permutation& p);

/// Splits 1..n into consecutive stacks sized by the letter multiplicities
/// (letter 1 first) and writes stack i, left to right, into the positions of
/// letter i.
Permutation word_to_permutation(const Word& w);
int longest_weakly_increasing(const Word& w);

/// (p o q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
/// zeta^j where zeta maps i -> i+1 (mod n); j may be any integer.
Permutation cyclic_shift_power(int n, std::int64_t j);
/// Cycle lengths in non-increasing order.
std::vector<int> cycle_type(const Permutation& p);

// ---------------------------------------------------------------------------
// Enumeration in lexicographic order.

std::uint64_t factorial_u64(int n);
/// Throws ResourceError when n exceeds limits.enum_limit (or n! would not fit).
void require_enumerable(int n, const Limits& limits);

std::uint64_t rank(const Permutation& p);
Permutation unrank(int n, std::uint64_t r);

/// Walks permutations of S_n in lexicographic order over a rank range.
class PermutationCursor {
 public:
  PermutationCursor(int n, std::uint64_t begin_rank);
  const Permutation& current() const { return current_; }
  std::uint64_t rank() const { return rank_; }
  /// Steps to the next permutation; false after the last one.
  bool advance();

 private:
  Permutation current_;
  std::uint64_t rank_;
};

/// Calls fn(p, rank) for every permutation of S_n with rank in [begin, end).
void for_each_permutation(int n, std::uint64_t begin, std::uint64_t end,
                          const std::function<void(const Permutation&, std::uint64_t)>& fn);

/// All of S_n in lexicographic order, subject to limits.enum_limit.
std::vector<Permutation> enumerate(int n, const Limits& limits);

}  // namespace shufflemix
