#pragma once

#include "fibcf/exact.hpp"
#include "fibcf/fibseq.hpp"
#include "fibcf/mat2.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fibcf {

struct EnclosureConfig {
  /// Automatic deepening stops here; explicitly requested depths may exceed it.
  std::size_t depth_cap = 22;
  /// positivity_tail_index scans term indices up to this bound.
  std::size_t tail_search_bound = 24;
  std::size_t witness_verify_depth = 12;
  std::size_t serret_min_overlap = 30;
};

/// Smallest i0 <= bound such that every term with i0 <= i <= bound has a
/// sign with strictly positive entries. Throws std::runtime_error
/// ("no positive tail found") when no such index exists.
std::size_t positivity_tail_index(const FibMatrixSeq& seq, std::size_t bound);

struct QuotientRun {
  std::vector<Integer> quotients;
  bool complete = false;     // false: depth cap hit before n were certified
  std::size_t depth_used = 0;
};

/// The real number a matrix Fibonacci sequence converges to, handled through
/// exact rational enclosures.
///
/// At depth k the enclosure is the interval spanned by the two column ratios
/// row1/row0 of the positive-sign representative of W_k. Columns of later
/// terms are positive combinations of earlier columns, so the intervals nest
/// and the limit lies in every one of them; the nesting assertion is the
/// runtime soundness check ("bracketing failed" falsifies positivity or
/// association). Certified partial quotients are extracted from the
/// enclosures and only ever extend (checked).
///
/// Deepening (enclosure, partial_quotients) is single-writer; scans over
/// already-materialized state are pure.
class ExtremalNumber {
 public:
  explicit ExtremalNumber(FibMatrixSeq seq, EnclosureConfig cfg = {});

  const FibMatrixSeq& seq() const { return seq_; }
  const EnclosureConfig& config() const { return cfg_; }
  std::size_t positivity_tail() const { return tail_; }

  /// Enclosure at depth k >= positivity_tail(); materializes and checks the
  /// whole chain from the tail up to k.
  const RationalInterval& enclosure(std::size_t k);

  /// First n certified partial quotients, deepening the enclosure up to the
  /// depth cap. Flagged incomplete when fewer could be certified.
  QuotientRun partial_quotients(std::size_t n);

  /// Admissibility witness solve for the generators (cached).
  const WitnessSolve& witness_solve();
  /// Witness or throw (reason from the solve).
  const AdmissibilityWitness& require_witness();

 private:
  FibMatrixSeq seq_;
  EnclosureConfig cfg_;
  std::size_t tail_;
  std::map<std::size_t, RationalInterval> enclosures_;
  std::vector<Integer> certified_;
  std::size_t certified_depth_ = 0;
  std::optional<WitnessSolve> witness_;
};

struct DiagRecord {
  std::size_t i = 0;
  std::size_t norm_digits = 0;
  double exponent_ratio = 0;        // log||W_{i+1}|| / log||W_i||
  RationalInterval approx_product;  // ||(xi,-1)W_i|| * ||W_i||, certified
  Integer det_value;
  Rational growth_ratio;            // ||W_{i+2}|| / (||W_{i+1}|| ||W_i||)

  DiagRecord() : approx_product(Rational(0), Rational(0)) {}
};

struct DiagnosticsReport {
  std::vector<DiagRecord> records;
  double gamma_ref = 0;  // (1 + sqrt 5) / 2
  double exponent_min = 0, exponent_max = 0;
  RationalInterval product_band{Rational(0), Rational(0)};
  Rational product_band_ratio;  // band hi / band lo, certified upper bound
  std::optional<RationalInterval> theta;
  std::size_t enclosure_depth = 0;
};

/// Empirical growth/approximation diagnostics over term indices [lo, hi].
/// Uses the enclosure at depth hi + 1.
DiagnosticsReport verify_associated(ExtremalNumber& x, std::size_t lo, std::size_t hi);

struct DetScanRecord {
  std::size_t i = 0;  // prefix length of f_ab
  Integer det_value;
  Integer norm_value;
  RationalInterval rho;       // ||(xi,-1)U_i|| * ||U_i|| / |det U_i|
  Rational lower_bound_value; // lo of ||(xi,-1)U_i|| * 2 ||U_i|| / |det U_i|
  Integer m_factor;           // U_i V_i = m_i W_k with v_i completing w_k

  DetScanRecord() : rho(Rational(0), Rational(0)) {}
};

struct DetScanReport {
  std::vector<DetScanRecord> records;
  Integer max_abs_det;
  bool dets_bounded = false;  // no |det| beyond what the early prefixes show
  bool lower_bound_ok = false;  // every lower_bound_value >= 1 (exact fact)
  bool factorization_ok = false;  // reduce(U_i V_i) = +-W_k for every i (exact fact)
  RationalInterval rho_band{Rational(0), Rational(0)};
  Rational rho_band_ratio;
  Rational split_band_lo, split_band_hi;  // ||UV|| / (||U|| ||V||) over splits
  std::size_t split_cap = 0;
  Integer max_partial_quotient;
  std::size_t certified_quotients = 0;
  std::size_t enclosure_depth = 0;
};

/// Determinants and certified approximation ratios of the images of every
/// f_ab prefix up to length L, plus the split-norm band over w_k = uv for
/// k <= split_cap and the certified-quotient summary (n_quotients target).
DetScanReport det_scan(ExtremalNumber& x, std::size_t L, std::size_t split_cap = 8,
                       std::size_t n_quotients = 200);

enum class Ternary { False, Indeterminate, True };

/// True iff some shift alignment makes the two quotient lists agree over an
/// overlap of at least min_overlap terms; Indeterminate when the lists are
/// too short to give any such overlap.
Ternary serret_check(const std::vector<Integer>& q1, const std::vector<Integer>& q2,
                     std::size_t min_overlap = 30);

struct ConjugationResult {
  ExtremalNumber number;
  bool serret_applicable = false;  // |det A| = 1
  Ternary serret = Ternary::Indeterminate;
};

/// The number with matrix sequence A^{-1} W_i A (star-conjugated term-wise).
/// For A in GL2(Z) the continued-fraction tails must agree; that check is
/// run on serret_terms certified quotients and a False verdict throws.
ConjugationResult conjugate_action(const Mat2Z& A, ExtremalNumber& x,
                                   std::size_t serret_terms = 60);

/// Searches k in [k_lo, k_hi] for a convergent matrix
/// U_k = [[p_k, p_{k-1}], [q_k, q_{k-1}]] of 1/xi such that every conjugated
/// term in [test_lo, test_hi] has a sign in the cone S (so in particular
/// |det| stays 1). Returns the first hit.
std::optional<Mat2Z> find_conjugator_to_S(ExtremalNumber& x,
                                          std::size_t k_lo, std::size_t k_hi,
                                          std::size_t test_lo, std::size_t test_hi);

struct ExtremalityWitnessResult {
  Integer x0, x1, x2;
  RationalInterval err;      // max(|x0 xi - x1|, |x0 xi^2 - x2|), certified
  RationalInterval quality;  // err * X^{1/gamma}, rational bracket
  bool from_companion = false;
  std::size_t companion_index = 0;
  std::optional<Rational> oracle_best;  // brute-force min of the max error (upper bound)

  ExtremalityWitnessResult()
      : err(Rational(0), Rational(0)), quality(Rational(0), Rational(0)) {}
};

/// Small integer triple witnessing the simultaneous approximation quality at
/// height X >= 1: the symmetric companion with the largest |y0| <= X, or the
/// trivial (1, round xi, round xi^2) when no companion fits (unless
/// allow_trivial is off, which throws "X below first companion"). A
/// brute-force oracle over all 1 <= x0 <= X runs when X <= oracle_cap.
ExtremalityWitnessResult extremality_witness(ExtremalNumber& x, const Integer& X,
                                             bool allow_trivial = true,
                                             const Integer& oracle_cap = Integer(10000));

}  // namespace fibcf
