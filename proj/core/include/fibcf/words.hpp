#pragma once

#include "fibcf/exact.hpp"
#include "fibcf/mat2.hpp"

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibcf {

/// Word over the abstract two-letter alphabet, letters 'a' and 'b'.
using AbWord = std::string;

/// Word over positive integers (partial-quotient letters).
using IntWord = std::vector<Integer>;

inline AbWord concat(const AbWord& u, const AbWord& v) { return u + v; }
inline IntWord concat(const IntWord& u, const IntWord& v) {
  IntWord w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

/// Fibonacci sequence of words: w_{i+2} = w_{i+1} w_i. Terms are cached.
template <typename W>
class FibWordSeq {
 public:
  FibWordSeq(W w1, W w2) : cache_{std::move(w1), std::move(w2)} {}

  /// k-th term, k >= 1.
  const W& term(std::size_t k) {
    if (k < 1) throw std::invalid_argument("word index starts at 1");
    while (cache_.size() < k)
      cache_.push_back(concat(cache_[cache_.size() - 1], cache_[cache_.size() - 2]));
    return cache_[k - 1];
  }

  const W& w1() const { return cache_[0]; }
  const W& w2() const { return cache_[1]; }

 private:
  std::deque<W> cache_;
};

/// Length-n prefix of the infinite word f_ab = abaababa..., the limit of the
/// Fibonacci word sequence started by w1 = b, w2 = a.
AbWord fib_prefix(std::size_t n);

/// Length-n prefix of the limit of the Fibonacci word sequence started by
/// w1, w2 (the limit extends w2). Throws when both starters are empty and
/// n > 0.
template <typename W>
W limit_word_prefix(const W& w1, const W& w2, std::size_t n) {
  W out{};
  if (n == 0) return out;
  if (w1.empty() && w2.empty())
    throw std::invalid_argument("empty starters have no infinite limit");
  FibWordSeq<W> seq(w1, w2);
  std::size_t k = 2;
  while (seq.term(k).size() < n) ++k;
  const W& w = seq.term(k);
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(n));
  return out;
}

template <typename W>
bool words_commute(const W& u, const W& v) {
  return concat(u, v) == concat(v, u);
}

/// [[x, 1], [1, 0]], the matrix of a single partial-quotient letter.
Mat2Z cf_atom(const Integer& x);

/// Monoid morphism from positive-integer words into the cone S (empty word
/// -> identity): the product of cf_atom(letter) left to right.
Mat2Z word_to_matrix(const IntWord& w);

/// Inverse of word_to_matrix on S (and the identity). Dispatches the three
/// cases: d = 0; d = 1 with det = -1; generic via factor_gl2.
IntWord matrix_to_word(const Mat2Z& A);

/// Factorization of A in GL2(Z) with d >= 1 into cf atoms:
/// A = atom(a0) atom(a1) ... atom(as), s >= 1, a1..a_{s-1} >= 1.
/// The choice is unique; it satisfies b/d = [a0..a_{s-1}],
/// c/d = [as..a1] and det(A) = (-1)^{s+1}.
std::vector<Integer> factor_gl2(const Mat2Z& A);

/// Decomposition of a split w_k = u v against the scale-ell terms:
/// u = w_{i1} ... w_{is} u0 and u0 v = w_{jt} ... w_{j1}, with u0 a prefix
/// of w_ell and both index lists strictly decreasing (i1 > ... > is,
/// j1 > ... > jt; the j product is written smallest index first).
/// Indices stay >= ell for ell in {2, 3}; for ell >= 4 boundary splits can
/// force a single j-index of ell - 1 (no >= ell decomposition exists then).
struct PrefixDecomposition {
  std::vector<std::size_t> i_indices;  // decreasing; u = w_{i1}...w_{is} u0
  AbWord u0;
  std::vector<std::size_t> j_indices;  // decreasing; u0 v = w_{jt}...w_{j1}
};

PrefixDecomposition fib_prefix_decomposition(std::size_t k, std::size_t split,
                                             std::size_t ell);

/// Length of the longest palindromic factor, exact. max_check > 0 restricts
/// the scan to factors of at most that length.
template <typename W>
std::size_t palindrome_factor_scan(const W& w, std::size_t max_check = 0) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  const std::size_t cap = max_check == 0 ? n : max_check;
  std::size_t best = cap >= 1 ? 1 : 0;
  // expand around each center (odd then even lengths)
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = 1;
    while (c >= r && c + r < n && 2 * r + 1 <= cap && w[c - r] == w[c + r]) ++r;
    std::size_t len = 2 * (r - 1) + 1;
    if (len <= cap && len > best) best = len;
  }
  for (std::size_t c = 0; c + 1 < n; ++c) {
    if (w[c] != w[c + 1]) continue;
    std::size_t r = 1;
    while (c >= r && c + 1 + r < n && 2 * r + 2 <= cap && w[c - r] == w[c + 1 + r]) ++r;
    std::size_t len = 2 * r;
    if (len <= cap && len > best) best = len;
  }
  return best;
}

}  // namespace fibcf
