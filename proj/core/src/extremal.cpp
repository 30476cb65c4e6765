#include "fibcf/extremal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fibcf {

namespace {

bool strictly_positive(const Mat2Z& m) {
  return m.a > 0 && m.b > 0 && m.c > 0 && m.d > 0;
}

// The sign representative with strictly positive entries, if one exists.
std::optional<Mat2Z> positive_rep(const Mat2Z& m) {
  Mat2Z c = canonical_sign(m);
  if (strictly_positive(c)) return c;
  return std::nullopt;
}

double log_integer(const Integer& z) {
  signed long exp = 0;
  double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(d) + static_cast<double>(exp) * std::log(2.0);
}

// ||(xi, -1) W|| as a certified interval, xi in I.
RationalInterval residual_norm_interval(const RationalInterval& I, const Mat2Z& W) {
  RationalInterval col0 =
      interval_abs(interval_add(interval_scale(I, Rational(W.a)), Rational(-W.c)));
  RationalInterval col1 =
      interval_abs(interval_add(interval_scale(I, Rational(W.b)), Rational(-W.d)));
  return interval_max(col0, col1);
}

Mat2Z parity_matrix(const Mat2Z& N, std::size_t i) {
  return (i % 2 == 1) ? transpose(N) : N;
}

}  // namespace

std::size_t positivity_tail_index(const FibMatrixSeq& seq, std::size_t bound) {
  std::optional<std::size_t> tail;
  for (std::size_t i = 1; i <= bound; ++i) {
    if (positive_rep(seq.term(i))) {
      if (!tail) tail = i;
    } else {
      tail.reset();
    }
  }
  if (!tail) throw std::runtime_error("no positive tail found");
  return *tail;
}

ExtremalNumber::ExtremalNumber(FibMatrixSeq seq, EnclosureConfig cfg)
    : seq_(std::move(seq)),
      cfg_(cfg),
      tail_(positivity_tail_index(seq_, cfg.tail_search_bound)) {}

const RationalInterval& ExtremalNumber::enclosure(std::size_t k) {
  if (k < tail_) throw std::invalid_argument("enclosure depth below positivity tail");
  std::size_t from = tail_;
  if (!enclosures_.empty()) from = enclosures_.rbegin()->first + 1;
  for (std::size_t d = from; d <= k; ++d) {
    std::optional<Mat2Z> rep = positive_rep(seq_.term(d));
    if (!rep)
      throw std::runtime_error("bracketing failed: term " + std::to_string(d) +
                               " has no positive sign");
    Rational r0 = make_rational(rep->c, rep->a);
    Rational r1 = make_rational(rep->d, rep->b);
    RationalInterval I(r0 < r1 ? r0 : r1, r0 < r1 ? r1 : r0);
    if (d > tail_) {
      const RationalInterval& prev = enclosures_.at(d - 1);
      if (!prev.contains(I))
        throw std::runtime_error("bracketing failed: enclosure at depth " +
                                 std::to_string(d) + " is not nested");
    }
    enclosures_.emplace(d, std::move(I));
  }
  return enclosures_.at(k);
}

QuotientRun ExtremalNumber::partial_quotients(std::size_t n) {
  std::size_t k = certified_depth_ == 0 ? tail_ : certified_depth_;
  while (true) {
    CfExtraction ex = interval_cf_extract(enclosure(k), n);
    // A deeper enclosure is contained in the shallower one, so the certified
    // prefix may only extend. Anything else falsifies the bracketing.
    if (ex.quotients.size() >= certified_.size()) {
      for (std::size_t j = 0; j < certified_.size(); ++j)
        if (ex.quotients[j] != certified_[j])
          throw std::runtime_error("bracketing failed: certified quotients changed");
      certified_ = ex.quotients;
      certified_depth_ = k;
    } else if (n >= certified_.size()) {
      throw std::runtime_error("bracketing failed: certified prefix shrank");
    }
    if (certified_.size() >= n) {
      QuotientRun run;
      run.quotients.assign(certified_.begin(), certified_.begin() + static_cast<long>(n));
      run.complete = true;
      run.depth_used = certified_depth_;
      return run;
    }
    if (k >= cfg_.depth_cap) {
      return QuotientRun{certified_, false, certified_depth_};
    }
    ++k;
  }
}

const WitnessSolve& ExtremalNumber::witness_solve() {
  if (!witness_)
    witness_ = solve_admissibility_witness(seq_.w1(), seq_.w2(), cfg_.witness_verify_depth);
  return *witness_;
}

const AdmissibilityWitness& ExtremalNumber::require_witness() {
  const WitnessSolve& s = witness_solve();
  if (s.status != WitnessSolve::Status::Found)
    throw std::runtime_error("admissibility witness unavailable: " + s.reason);
  return *s.witness;
}

DiagnosticsReport verify_associated(ExtremalNumber& x, std::size_t lo, std::size_t hi) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("bad diagnostics range");
  DiagnosticsReport report;
  report.gamma_ref = (1.0 + std::sqrt(5.0)) / 2.0;
  // hi + 2 keeps the enclosure strictly inside the depth-hi interval, so the
  // product intervals stay away from zero.
  std::size_t depth = hi + 2;
  if (depth < x.positivity_tail()) depth = x.positivity_tail();
  const RationalInterval I = x.enclosure(depth);
  report.enclosure_depth = depth;

  const FibMatrixSeq& seq = x.seq();
  bool first = true;
  report.exponent_min = std::numeric_limits<double>::infinity();
  report.exponent_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = lo; i <= hi; ++i) {
    DiagRecord rec;
    rec.i = i;
    Integer ni = norm(seq.term(i));
    Integer ni1 = norm(seq.term(i + 1));
    Integer ni2 = norm(seq.term(i + 2));
    rec.norm_digits = ni.get_str().size();
    double li = log_integer(ni);
    rec.exponent_ratio = li > 0 ? log_integer(ni1) / li
                                : std::numeric_limits<double>::quiet_NaN();
    rec.approx_product =
        interval_scale(residual_norm_interval(I, seq.term(i)), Rational(ni));
    rec.det_value = det(seq.term(i));
    rec.growth_ratio = make_rational(ni2, ni1 * ni);

    if (first) {
      report.product_band = rec.approx_product;
      first = false;
    } else {
      if (rec.approx_product.lo < report.product_band.lo)
        report.product_band = RationalInterval(rec.approx_product.lo, report.product_band.hi);
      if (rec.approx_product.hi > report.product_band.hi)
        report.product_band = RationalInterval(report.product_band.lo, rec.approx_product.hi);
    }
    if (!std::isnan(rec.exponent_ratio)) {
      report.exponent_min = std::min(report.exponent_min, rec.exponent_ratio);
      report.exponent_max = std::max(report.exponent_max, rec.exponent_ratio);
    }
    report.records.push_back(std::move(rec));
  }
  report.product_band_ratio =
      report.product_band.lo > 0 ? Rational(report.product_band.hi / report.product_band.lo)
                                 : Rational(0);

  if (x.witness_solve().status == WitnessSolve::Status::Found) {
    const Mat2Z& N = x.witness_solve().witness->N;
    Mat2Z adj = adjugate(N);
    // (1, xi) N^{-1} t(1, xi) = (adj.a + (adj.b + adj.c) xi + adj.d xi^2) / det N
    RationalInterval quad = interval_add(
        interval_sum(interval_scale(I, Rational(adj.b + adj.c)),
                     interval_scale(interval_mul(I, I), Rational(adj.d))),
        Rational(adj.a));
    RationalInterval absI = interval_abs(I);
    RationalInterval m1 = interval_max(absI, RationalInterval(Rational(1), Rational(1)));
    RationalInterval denom = interval_scale(interval_mul(m1, m1), Rational(det(N)));
    report.theta = interval_mul(quad, interval_reciprocal(denom));
  }
  return report;
}

DetScanReport det_scan(ExtremalNumber& x, std::size_t L, std::size_t split_cap,
                       std::size_t n_quotients) {
  if (L < 1) throw std::invalid_argument("scan length must be positive");
  DetScanReport report;
  report.split_cap = split_cap;

  QuotientRun run = x.partial_quotients(n_quotients);
  report.certified_quotients = run.quotients.size();
  report.max_partial_quotient = 0;
  for (const Integer& q : run.quotients)
    if (q > report.max_partial_quotient) report.max_partial_quotient = q;

  // Depth: two terms past the first w_k covering the scanned prefixes, so
  // the xi interval is far tighter than any scanned column ratio.
  std::size_t klen = 2;
  {
    unsigned long long l1 = 1, l2 = 1;  // |w_1|, |w_2|
    while (l2 < L) {
      unsigned long long next = l1 + l2;
      l1 = l2;
      l2 = next;
      ++klen;
    }
  }
  std::size_t depth = klen + 2;
  if (depth < x.positivity_tail()) depth = x.positivity_tail();
  const RationalInterval I = x.enclosure(depth);
  report.enclosure_depth = depth;

  const Mat2Z W1 = x.seq().w1();
  const Mat2Z W2 = x.seq().w2();
  FibWordSeq<AbWord> fwords(AbWord("b"), AbWord("a"));
  AbWord prefix = fib_prefix(L);
  Mat2Z U = mat2_identity();
  report.max_abs_det = 0;
  report.factorization_ok = true;
  Integer first_half_max = 0;
  bool first = true;
  for (std::size_t i = 1; i <= L; ++i) {
    U = star(U, prefix[i - 1] == 'b' ? W1 : W2);
    DetScanRecord rec;
    rec.i = i;
    rec.det_value = det(U);
    rec.norm_value = norm(U);
    Integer adet = abs(rec.det_value);
    RationalInterval E = residual_norm_interval(I, U);
    rec.rho = interval_scale(E, make_rational(rec.norm_value, adet));
    rec.lower_bound_value = 2 * rec.rho.lo;

    // U_i V_i = m_i W_k where v_i completes the smallest w_k holding u_i
    std::size_t k = 2;
    while (fwords.term(k).size() < i) ++k;
    Mat2Z V = eval_ab_word(fwords.term(k).substr(i), W1, W2);
    Mat2Z UV = U * V;
    rec.m_factor = content(UV);
    Mat2Z red = reduce(UV);
    const Mat2Z& Wk = x.seq().term(k);
    if (red != Wk && red != -Wk) report.factorization_ok = false;

    if (adet > report.max_abs_det) report.max_abs_det = adet;
    if (i <= (L + 1) / 2 && adet > first_half_max) first_half_max = adet;
    if (first) {
      report.rho_band = rec.rho;
      first = false;
    } else {
      if (rec.rho.lo < report.rho_band.lo)
        report.rho_band = RationalInterval(rec.rho.lo, report.rho_band.hi);
      if (rec.rho.hi > report.rho_band.hi)
        report.rho_band = RationalInterval(report.rho_band.lo, rec.rho.hi);
    }
    report.records.push_back(std::move(rec));
  }
  report.dets_bounded = report.max_abs_det == first_half_max;
  report.lower_bound_ok = true;
  for (const DetScanRecord& rec : report.records)
    if (rec.lower_bound_value < 1) report.lower_bound_ok = false;
  report.rho_band_ratio = report.rho_band.lo > 0
                              ? Rational(report.rho_band.hi / report.rho_band.lo)
                              : Rational(0);

  // Split-norm band over all factorizations w_k = u v, k <= split_cap.
  bool first_split = true;
  FibWordSeq<AbWord> words(AbWord("b"), AbWord("a"));
  for (std::size_t k = 2; k <= split_cap; ++k) {
    const AbWord wk = words.term(k);
    for (std::size_t split = 0; split <= wk.size(); ++split) {
      Mat2Z Pu = eval_ab_word(wk.substr(0, split), W1, W2);
      Mat2Z Pv = eval_ab_word(wk.substr(split), W1, W2);
      Rational ratio = make_rational(norm(Pu * Pv), norm(Pu) * norm(Pv));
      if (first_split) {
        report.split_band_lo = report.split_band_hi = ratio;
        first_split = false;
      } else {
        if (ratio < report.split_band_lo) report.split_band_lo = ratio;
        if (ratio > report.split_band_hi) report.split_band_hi = ratio;
      }
    }
  }
  return report;
}

Ternary serret_check(const std::vector<Integer>& q1, const std::vector<Integer>& q2,
                     std::size_t min_overlap) {
  if (min_overlap == 0) min_overlap = 1;
  if (q1.size() < min_overlap || q2.size() < min_overlap) return Ternary::Indeterminate;
  for (std::size_t s1 = 0; s1 + min_overlap <= q1.size(); ++s1) {
    for (std::size_t s2 = 0; s2 + min_overlap <= q2.size(); ++s2) {
      std::size_t overlap = std::min(q1.size() - s1, q2.size() - s2);
      bool equal = true;
      for (std::size_t j = 0; j < overlap && equal; ++j)
        equal = q1[s1 + j] == q2[s2 + j];
      if (equal) return Ternary::True;
    }
  }
  return Ternary::False;
}

ConjugationResult conjugate_action(const Mat2Z& A, ExtremalNumber& x,
                                   std::size_t serret_terms) {
  if (is_zero(A) || det(A) == 0) throw std::invalid_argument("not in P");
  Mat2Z Ar = is_primitive(A) ? A : reduce(A);
  Mat2Z B = inverse_in_P(Ar);
  Mat2Z V1 = canonical_sign(star(star(B, x.seq().w1()), Ar));
  Mat2Z V2 = canonical_sign(star(star(B, x.seq().w2()), Ar));
  FibMatrixSeq conj(V1, V2, x.seq().policy(),
                    x.seq().label().empty() ? "" : x.seq().label() + "-conj");
  ConjugationResult result{ExtremalNumber(std::move(conj), x.config())};

  Integer adet = abs(det(Ar));
  if (adet == 1) {
    result.serret_applicable = true;
    QuotientRun a = x.partial_quotients(serret_terms);
    QuotientRun b = result.number.partial_quotients(serret_terms);
    result.serret =
        serret_check(a.quotients, b.quotients, x.config().serret_min_overlap);
    if (result.serret == Ternary::False)
      throw std::runtime_error("serret tail equivalence failed under a GL2(Z) conjugation");
  }
  return result;
}

std::optional<Mat2Z> find_conjugator_to_S(ExtremalNumber& x,
                                          std::size_t k_lo, std::size_t k_hi,
                                          std::size_t test_lo, std::size_t test_hi) {
  if (k_lo > k_hi) return std::nullopt;
  QuotientRun run = x.partial_quotients(k_hi + 3);
  if (run.quotients.empty()) return std::nullopt;

  // Quotients of 1/xi from those of xi (xi > 0).
  std::vector<Integer> inv;
  if (run.quotients.front() == 0)
    inv.assign(run.quotients.begin() + 1, run.quotients.end());
  else {
    inv.push_back(0);
    inv.insert(inv.end(), run.quotients.begin(), run.quotients.end());
  }

  // Convergent matrices U_k = [[p_k, p_{k-1}], [q_k, q_{k-1}]]; seeds are
  // p_{-2} = 0, p_{-1} = 1 and q_{-2} = 1, q_{-1} = 0, so index k lives at
  // vector position k + 2.
  std::vector<Integer> p{Integer(0), Integer(1)}, q{Integer(1), Integer(0)};
  for (const Integer& a : inv) {
    std::size_t n = p.size();
    p.push_back(a * p[n - 1] + p[n - 2]);
    q.push_back(a * q[n - 1] + q[n - 2]);
  }

  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    if (k + 3 > p.size()) break;  // not enough certified quotients
    Mat2Z Uk(p[k + 2], p[k + 1], q[k + 2], q[k + 1]);
    if (det(Uk) == 0) continue;
    Mat2Z Uinv = inverse_in_P(Uk);
    bool all_ok = true;
    for (std::size_t i = test_lo; i <= test_hi && all_ok; ++i) {
      Mat2Z C = star(star(Uinv, x.seq().term(i)), Uk);
      all_ok = in_S(C) || in_S(-C);
    }
    if (all_ok) return Uk;
  }
  return std::nullopt;
}

namespace {

// Rational bracket for X^{1/gamma}, X >= 1, via Fibonacci-ratio exponents
// 987/1597 < 1/gamma < 1597/2584.
std::pair<Rational, Rational> height_power_bounds(const Integer& X) {
  Integer lo_pow, hi_pow, lo_root, hi_root;
  mpz_pow_ui(lo_pow.get_mpz_t(), X.get_mpz_t(), 987);
  mpz_root(lo_root.get_mpz_t(), lo_pow.get_mpz_t(), 1597);
  mpz_pow_ui(hi_pow.get_mpz_t(), X.get_mpz_t(), 1597);
  mpz_root(hi_root.get_mpz_t(), hi_pow.get_mpz_t(), 2584);
  return {Rational(lo_root), Rational(hi_root + 1)};
}

}  // namespace

ExtremalityWitnessResult extremality_witness(ExtremalNumber& x, const Integer& X,
                                             bool allow_trivial,
                                             const Integer& oracle_cap) {
  if (X < 1) throw std::invalid_argument("height X must be >= 1");

  // Deepen until x0 * width < 1/4 for every height x0 <= X, so roundings
  // are unambiguous and error intervals are meaningful at scale 1/X.
  std::size_t depth = x.positivity_tail() + 2;
  while (depth < x.config().depth_cap &&
         x.enclosure(depth).width() * Rational(4 * X * X) >= 1)
    ++depth;
  RationalInterval I = x.enclosure(depth);
  RationalInterval I2 = interval_mul(I, I);

  ExtremalityWitnessResult result;
  bool have_companion = false;
  Integer best_y0(0);
  if (x.witness_solve().status == WitnessSolve::Status::Found) {
    const Mat2Z& N = x.witness_solve().witness->N;
    std::size_t bound = x.config().depth_cap + 8;
    int past_height = 0;  // companion heights grow with the norms past the tail
    for (std::size_t i = 1; i <= bound && past_height < 3; ++i) {
      Mat2Z y = x.seq().term(i) * parity_matrix(N, i);
      Integer y0 = abs(y.a);
      if (y0 > X) {
        if (i > x.positivity_tail() + 1) ++past_height;
        continue;
      }
      if (y0 >= 1) past_height = 0;
      if (y0 < 1) continue;
      if (!have_companion || y0 > best_y0) {
        have_companion = true;
        best_y0 = y0;
        result.x0 = y.a;
        result.x1 = y.b;
        result.x2 = y.d;
        result.companion_index = i;
      }
    }
  }
  if (have_companion) {
    result.from_companion = true;
    // Normalize the sign so x0 >= 1.
    if (result.x0 < 0) {
      result.x0 = -result.x0;
      result.x1 = -result.x1;
      result.x2 = -result.x2;
    }
  } else {
    if (!allow_trivial) throw std::runtime_error("X below first companion");
    result.x0 = 1;
    result.x1 = nearest_int((I.lo + I.hi) / 2);
    result.x2 = nearest_int((I2.lo + I2.hi) / 2);
    result.from_companion = false;
    result.companion_index = 0;
  }

  auto err_interval = [&](const Integer& x0, const Integer& x1, const Integer& x2) {
    RationalInterval e1 =
        interval_abs(interval_add(interval_scale(I, Rational(x0)), Rational(-x1)));
    RationalInterval e2 =
        interval_abs(interval_add(interval_scale(I2, Rational(x0)), Rational(-x2)));
    return interval_max(e1, e2);
  };
  RationalInterval E = err_interval(result.x0, result.x1, result.x2);
  result.err = E;
  auto [pw_lo, pw_hi] = height_power_bounds(X);
  result.quality = RationalInterval(E.lo * pw_lo, E.hi * pw_hi);

  if (X <= oracle_cap) {
    // Exhaustive oracle: best max-error over all heights x0 in [1, X].
    std::optional<Rational> best;
    for (Integer x0 = 1; x0 <= X; ++x0) {
      RationalInterval t1 = interval_scale(I, Rational(x0));
      RationalInterval t2 = interval_scale(I2, Rational(x0));
      Integer n1 = nearest_int((t1.lo + t1.hi) / 2);
      Integer n2 = nearest_int((t2.lo + t2.hi) / 2);
      RationalInterval e1 = interval_abs(interval_add(t1, Rational(-n1)));
      RationalInterval e2 = interval_abs(interval_add(t2, Rational(-n2)));
      Rational score = e1.hi > e2.hi ? e1.hi : e2.hi;
      if (!best || score < *best) best = score;
    }
    result.oracle_best = best;
  }
  return result;
}

}  // namespace fibcf
