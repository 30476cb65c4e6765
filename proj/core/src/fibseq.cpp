#include "fibcf/fibseq.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace fibcf {

FibMatrixSeq::FibMatrixSeq(Mat2Z W1, Mat2Z W2, SignPolicy policy, std::string label)
    : policy_(policy), label_(std::move(label)) {
  if (is_zero(W1) || is_zero(W2) || det(W1) == 0 || det(W2) == 0)
    throw std::invalid_argument("not in P");
  if (!is_primitive(W1)) {
    W1 = reduce(W1);
    inputs_reduced_ = true;
  }
  if (!is_primitive(W2)) {
    W2 = reduce(W2);
    inputs_reduced_ = true;
  }
  cache_.push_back(std::move(W1));
  cache_.push_back(std::move(W2));
}

const Mat2Z& FibMatrixSeq::term(std::size_t k) const {
  if (k < 1) throw std::invalid_argument("sequence index starts at 1");
  while (cache_.size() < k) {
    Mat2Z next = star(cache_[cache_.size() - 1], cache_[cache_.size() - 2]);
    if (policy_ == SignPolicy::Canonical) next = canonical_sign(next);
    cache_.push_back(std::move(next));
  }
  return cache_[k - 1];
}

namespace {

// Exact kernel of an r x 4 rational matrix, as primitive integer vectors.
std::vector<std::array<Integer, 4>> integer_kernel(
    std::vector<std::array<Rational, 4>> rows) {
  const std::size_t m = 4;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < m && rank < rows.size(); ++c) {
    std::size_t pr = rank;
    while (pr < rows.size() && rows[pr][c] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[rank], rows[pr]);
    Rational piv = rows[rank][c];
    for (std::size_t j = c; j < m; ++j) rows[rank][j] /= piv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < m; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }

  std::vector<bool> is_pivot(m, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  std::vector<std::array<Integer, 4>> basis;
  for (std::size_t fc = 0; fc < m; ++fc) {
    if (is_pivot[fc]) continue;
    std::array<Rational, 4> x{Rational(0), Rational(0), Rational(0), Rational(0)};
    x[fc] = 1;
    for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = -rows[i][fc];
    // clear denominators, then divide by the gcd
    Integer l(1);
    for (const Rational& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    std::array<Integer, 4> z;
    Integer g(0);
    for (std::size_t j = 0; j < m; ++j) {
      Rational scaled = x[j] * Rational(l);
      z[j] = scaled.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[j].get_mpz_t());
    }
    if (g > 1)
      for (Integer& v : z) v /= g;
    // sign: first nonzero entry positive
    for (const Integer& v : z) {
      if (v == 0) continue;
      if (v < 0)
        for (Integer& w : z) w = -w;
      break;
    }
    basis.push_back(std::move(z));
  }
  return basis;
}

Mat2Z witness_parity_matrix(const Mat2Z& N, std::size_t i) {
  return (i % 2 == 1) ? transpose(N) : N;
}

}  // namespace

WitnessSolve solve_admissibility_witness(const Mat2Z& W1, const Mat2Z& W2,
                                         std::size_t verify_depth) {
  WitnessSolve out;
  FibMatrixSeq seq(W1, W2);
  const Mat2Z& T1 = seq.w1();
  const Mat2Z& T2 = seq.w2();
  const Mat2Z& T3 = seq.term(3);

  // W * tN symmetric: -c n0 - d n1 + a n2 + b n3 = 0
  // W * N  symmetric: -c n0 + a n1 - d n2 + b n3 = 0
  std::vector<std::array<Rational, 4>> rows;
  for (const Mat2Z* w : {&T1, &T3}) {
    Integer nc = -w->c, nd = -w->d;
    rows.push_back({Rational(nc), Rational(nd), Rational(w->a), Rational(w->b)});
  }
  Integer n2c = -T2.c, n2d = -T2.d;
  rows.push_back({Rational(n2c), Rational(T2.a), Rational(n2d), Rational(T2.b)});

  auto basis = integer_kernel(std::move(rows));
  for (const auto& z : basis)
    out.kernel_basis.push_back(Mat2Z(z[0], z[1], z[2], z[3]));

  if (basis.empty()) {
    out.status = WitnessSolve::Status::None;
    out.reason = "kernel is trivial";
    return out;
  }
  if (basis.size() >= 2) {
    out.status = WitnessSolve::Status::Ambiguous;
    out.reason = "kernel dimension " + std::to_string(basis.size());
    return out;
  }

  Mat2Z N = out.kernel_basis.front();
  if (det(N) == 0) {
    out.status = WitnessSolve::Status::None;
    out.reason = "witness candidate is singular";
    return out;
  }
  if (is_symmetric(N) || is_skew_symmetric(N)) {
    out.status = WitnessSolve::Status::None;
    out.reason = "witness candidate equals +-transpose";
    return out;
  }
  for (std::size_t i = 1; i <= verify_depth; ++i) {
    if (!is_symmetric(seq.term(i) * witness_parity_matrix(N, i))) {
      out.status = WitnessSolve::Status::None;
      out.reason = "symmetry fails at index " + std::to_string(i);
      return out;
    }
  }
  out.status = WitnessSolve::Status::Found;
  out.witness = AdmissibilityWitness{N, 1, verify_depth};
  return out;
}

EigenDirections rational_eigen_directions(const Mat2Z& x) {
  EigenDirections out;
  Integer tr = x.a + x.d;
  Integer disc = tr * tr - 4 * det(x);
  if (disc < 0) return out;
  if (!mpz_perfect_square_p(disc.get_mpz_t())) return out;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());

  auto add_dir = [&out](Integer u, Integer v) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    if (g > 1) {
      u /= g;
      v /= g;
    }
    if (u < 0 || (u == 0 && v < 0)) {
      u = -u;
      v = -v;
    }
    for (const auto& d : out.dirs)
      if (d.first == u && d.second == v) return;
    out.dirs.emplace_back(std::move(u), std::move(v));
  };

  for (int sign : {1, -1}) {
    Integer num = tr + sign * s;
    if (num % 2 != 0) continue;  // eigenvalue not an integer
    Integer lambda = num / 2;
    Mat2Z B(x.a - lambda, x.b, x.c, x.d - lambda);
    if (is_zero(B)) {
      out.all = true;
      return out;
    }
    if (B.a != 0 || B.b != 0)
      add_dir(B.b, -B.a);
    else
      add_dir(B.d, -B.c);
  }
  return out;
}

bool have_common_rational_eigenvector(const Mat2Z& W1, const Mat2Z& W2) {
  EigenDirections e1 = rational_eigen_directions(W1);
  EigenDirections e2 = rational_eigen_directions(W2);
  if (e1.all) return e2.all || !e2.dirs.empty();
  if (e2.all) return !e1.dirs.empty();
  for (const auto& d1 : e1.dirs)
    for (const auto& d2 : e2.dirs)
      if (d1.first * d2.second - d1.second * d2.first == 0) return true;
  return false;
}

bool check_admissibility_hypotheses(const Mat2Z& W1, const Mat2Z& W2) {
  if (have_common_rational_eigenvector(W1, W2)) return false;
  Mat2Z p = W1 * W2;
  Mat2Z q = W2 * W1;
  return p != q && p != -q;
}

SymmetricCompanion symmetric_companion(const FibMatrixSeq& seq,
                                       const AdmissibilityWitness& witness,
                                       std::size_t k) {
  Mat2Z y = seq.term(k) * witness_parity_matrix(witness.N, k);
  if (!is_symmetric(y))
    throw std::runtime_error("witness invalid at " + std::to_string(k));
  return SymmetricCompanion{std::move(y)};
}

bool check_symmetric_recurrence(const FibMatrixSeq& seq,
                                const AdmissibilityWitness& witness,
                                std::size_t lo, std::size_t hi,
                                std::size_t* first_fail) {
  Mat2Z M = witness.M();
  auto companion = [&](std::size_t i) {
    return seq.term(i) * witness_parity_matrix(witness.N, i);
  };
  for (std::size_t i = lo; i <= hi; ++i) {
    Mat2Z yi = companion(i);
    Mat2Z yi1 = companion(i + 1);
    Mat2Z yi2 = companion(i + 2);
    // the recurrence is over symmetric companions; an asymmetric product
    // already falsifies the witness at this index
    if (!is_symmetric(yi) || !is_symmetric(yi1) || !is_symmetric(yi2)) {
      if (first_fail) *first_fail = i;
      return false;
    }
    Mat2Z Mi = (i % 2 == 1) ? M : transpose(M);
    Mat2Z rhs = star(star(reduce(yi1), Mi), reduce(yi));
    Mat2Z lhs = reduce(yi2);
    if (lhs != rhs && lhs != -rhs) {
      if (first_fail) *first_fail = i;
      return false;
    }
  }
  return true;
}

Mat2Z eval_ab_word(const AbWord& w, const Mat2Z& W1, const Mat2Z& W2) {
  Mat2Z m = mat2_identity();
  for (char ch : w) {
    if (ch == 'b')
      m = star(m, W1);
    else if (ch == 'a')
      m = star(m, W2);
    else
      throw std::invalid_argument("word letters must be 'a' or 'b'");
  }
  return m;
}

namespace {

bool congruent_mod(const Mat2Z& x, const Mat2Z& y, const Integer& m) {
  Mat2Z d(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
  for (const Integer* e : {&d.a, &d.b, &d.c, &d.d})
    if (!mpz_divisible_p(e->get_mpz_t(), m.get_mpz_t())) return false;
  return true;
}

}  // namespace

DetPatternReport det_pattern_check(const Mat2Z& W1, const Mat2Z& W2,
                                   const Integer& m, std::size_t kmax) {
  if (m == 0) throw std::invalid_argument("det pattern hypothesis failed: m must be nonzero");
  if (!is_primitive(W1)) throw std::invalid_argument("det pattern hypothesis failed: W1 not primitive");
  if (!is_primitive(W2)) throw std::invalid_argument("det pattern hypothesis failed: W2 not primitive");
  if (det(W1) != m) throw std::invalid_argument("det pattern hypothesis failed: det W1 != m");
  if (det(W2) != m) throw std::invalid_argument("det pattern hypothesis failed: det W2 != m");
  if (!congruent_mod(W1, W2, m))
    throw std::invalid_argument("det pattern hypothesis failed: W1 != W2 mod m");
  if (!congruent_mod(W1 * W1, Mat2Z(), m))
    throw std::invalid_argument("det pattern hypothesis failed: W^2 != 0 mod m");

  DetPatternReport report;
  auto check_entry = [&](std::vector<DetPatternReport::Entry>& dst,
                         std::size_t index, bool odd_length, const Integer& dt) {
    Integer expected = odd_length ? m : Integer(1);
    bool ok = dt == expected;
    dst.push_back({index, dt, expected, ok});
    if (!ok) {
      report.all_ok = false;
      if (!report.first_violation_length) report.first_violation_length = index;
    }
  };

  AbWord prefix = fib_prefix(kmax);
  Mat2Z U = mat2_identity();
  for (std::size_t i = 1; i <= prefix.size(); ++i) {
    U = star(U, prefix[i - 1] == 'b' ? W1 : W2);
    check_entry(report.prefix_entries, i, i % 2 == 1, det(U));
  }

  // |w_k| parities: odd, odd, then parity(k) = parity(k-1) xor parity(k-2)
  FibMatrixSeq seq(W1, W2);
  bool podd2 = true, podd1 = true;
  for (std::size_t k = 1; k <= kmax; ++k) {
    bool odd = true;
    if (k >= 3) {
      odd = podd1 != podd2;
      podd2 = podd1;
      podd1 = odd;
    }
    check_entry(report.term_entries, k, odd, det(seq.term(k)));
  }
  return report;
}

DetMFamily det_m_family(const Integer& m) {
  if (m == 0) throw std::invalid_argument("m must be nonzero");
  DetMFamily f;
  f.m = m;
  f.W1 = Mat2Z(m, m, m - 1, m);
  f.W2 = Mat2Z(2 * m, m, 2 * m - 1, m);
  f.N = Mat2Z(m, -m, -2 * m, 2 * m - 1);
  f.hypotheses_ok = is_primitive(f.W1) && is_primitive(f.W2) &&
                    det(f.W1) == m && det(f.W2) == m &&
                    congruent_mod(f.W1, f.W2, m) &&
                    congruent_mod(f.W1 * f.W1, Mat2Z(), m) &&
                    check_admissibility_hypotheses(f.W1, f.W2);
  Integer am = abs(m);
  f.conjugacy_obstruction_absent = mpz_perfect_square_p(am.get_mpz_t()) != 0;
  return f;
}

std::optional<std::size_t> detect_period(const FibMatrixSeq& seq, std::size_t max_scan) {
  for (std::size_t p = 1; p + 1 <= max_scan; ++p) {
    for (std::size_t i = 1; i + p + 1 <= max_scan + 1; ++i) {
      Mat2Z a0 = canonical_sign(seq.term(i));
      Mat2Z a1 = canonical_sign(seq.term(i + 1));
      Mat2Z b0 = canonical_sign(seq.term(i + p));
      Mat2Z b1 = canonical_sign(seq.term(i + p + 1));
      if (a0 == b0 && a1 == b1) return p;
    }
  }
  return std::nullopt;
}

}  // namespace fibcf
