#include "fibcf/words.hpp"

#include <stdexcept>

namespace fibcf {

AbWord fib_prefix(std::size_t n) {
  if (n == 0) return {};
  FibWordSeq<AbWord> f(AbWord("b"), AbWord("a"));
  std::size_t k = 2;  // the limit extends w2, not w1
  while (f.term(k).size() < n) ++k;
  return f.term(k).substr(0, n);
}

Mat2Z cf_atom(const Integer& x) { return Mat2Z(x, 1, 1, 0); }

Mat2Z word_to_matrix(const IntWord& w) {
  Mat2Z m = mat2_identity();
  for (const Integer& letter : w) {
    if (letter < 1) throw std::invalid_argument("word letters must be >= 1");
    m = m * cf_atom(letter);  // dets are +-1, products stay primitive
  }
  return m;
}

std::vector<Integer> factor_gl2(const Mat2Z& A) {
  Integer dt = det(A);
  if (dt != 1 && dt != -1) throw std::invalid_argument("factor_gl2 needs |det| = 1");
  if (A.d < 1) throw std::invalid_argument("factor_gl2 needs entry d >= 1");

  // Expansion of c/d, read as [a_s, ..., a_1]; the term count s is pinned
  // by det(A) = (-1)^{s+1}.
  Rational cd = make_rational(A.c, A.d);
  std::vector<Integer> exp = rational_cf(cd);
  const bool want_odd = (dt == 1);
  if ((exp.size() % 2 == 1) != want_odd) exp = rational_cf(cd, /*variant=*/true);
  const std::size_t s = exp.size();

  // a0 is the integer with |b/d - [a0, a1, ..., a_{s-1}]| <= 1/2.
  Rational target = make_rational(A.b, A.d);
  if (s >= 2) {
    std::vector<Integer> inner(exp.rbegin(), exp.rend());  // [a1, ..., a_s]
    inner.pop_back();                                      // [a1, ..., a_{s-1}]
    target -= 1 / cf_value(inner);
  }
  std::vector<Integer> candidates{nearest_int(target)};
  if (target - Rational(candidates[0]) == Rational(-1, 2))
    candidates.push_back(candidates[0] - 1);  // exact half tie: try both

  for (const Integer& a0 : candidates) {
    std::vector<Integer> letters;
    letters.reserve(s + 1);
    letters.push_back(a0);
    for (auto it = exp.rbegin(); it != exp.rend(); ++it) letters.push_back(*it);
    Mat2Z prod = mat2_identity();
    for (const Integer& x : letters) prod = prod * cf_atom(x);
    if (prod == A) return letters;
  }
  throw std::runtime_error("factor_gl2: no candidate reproduced the matrix");
}

IntWord matrix_to_word(const Mat2Z& A) {
  if (A == mat2_identity()) return {};
  if (!in_S(A)) throw std::invalid_argument("matrix not in S");
  if (A.d == 0) return {A.a};  // here a >= b = c = 1
  if (A.d == 1 && det(A) == -1) {
    // s = 2 with a0 = b - 1, a1 = 1, a2 = c - 1; b, c >= 2 in this case
    return {A.b - 1, Integer(1), A.c - 1};
  }
  std::vector<Integer> letters = factor_gl2(A);
  for (const Integer& x : letters)
    if (x < 1) throw std::runtime_error("factorization left the positive cone");
  return letters;
}

PrefixDecomposition fib_prefix_decomposition(std::size_t k, std::size_t split,
                                             std::size_t ell) {
  if (ell < 2 || k < ell) throw std::invalid_argument("need 2 <= ell <= k");
  FibWordSeq<AbWord> f(AbWord("b"), AbWord("a"));
  const AbWord wk = f.term(k);
  if (split > wk.size()) throw std::invalid_argument("split exceeds |w_k|");

  PrefixDecomposition out;
  AbWord u = wk.substr(0, split);
  AbWord v = wk.substr(split);
  std::size_t kk = k;

  // Invariant: u v = w_kk, u a prefix of w_kk. Each step peels either
  // w_{kk-1} off the front of u or w_{kk-2} off the back of v.
  while (true) {
    const AbWord& wl = f.term(ell);
    if (u.size() <= wl.size() && wl.compare(0, u.size(), u) == 0) {
      out.u0 = u;
      out.j_indices.push_back(kk);  // u0 v = w_kk, smallest factor index
      break;
    }
    if (v.empty() && kk < ell + 2) {
      // u is all of w_kk and peeling w_{kk-1} would dip below scale ell
      out.i_indices.push_back(kk);
      out.u0.clear();
      break;
    }
    const AbWord& wk1 = f.term(kk - 1);
    if (u.size() >= wk1.size()) {
      out.i_indices.push_back(kk - 1);
      u.erase(0, wk1.size());
      kk -= 2;
    } else {
      const AbWord& wk2 = f.term(kk - 2);
      out.j_indices.push_back(kk - 2);
      v.erase(v.size() - wk2.size());
      kk -= 1;
    }
  }
  return out;
}

}  // namespace fibcf
