#pragma once

#include "fibcf/exact.hpp"
#include "fibcf/mat2.hpp"
#include "fibcf/words.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fibcf {

enum class SignPolicy {
  Canonical,  // each generated term is sign-normalized (canonical_sign)
  Raw,        // terms are the star products as computed
};

/// Fibonacci sequence in the group P: W_{i+2} = W_{i+1} * W_i under the
/// declared sign policy. Terms are primitive with nonzero determinant and
/// cached append-only (single writer, concurrent readers of materialized
/// terms are fine).
class FibMatrixSeq {
 public:
  FibMatrixSeq(Mat2Z W1, Mat2Z W2, SignPolicy policy = SignPolicy::Canonical,
               std::string label = "");

  /// k-th term, k >= 1. Memoized.
  const Mat2Z& term(std::size_t k) const;

  const Mat2Z& w1() const { return cache_[0]; }
  const Mat2Z& w2() const { return cache_[1]; }
  SignPolicy policy() const { return policy_; }
  const std::string& label() const { return label_; }
  bool inputs_were_reduced() const { return inputs_reduced_; }

 private:
  SignPolicy policy_;
  std::string label_;
  bool inputs_reduced_ = false;
  mutable std::deque<Mat2Z> cache_;
};

/// Nonzero N in P with N != +-transpose(N) making every W_i N_i symmetric,
/// where N_i alternates transpose(N) (i odd) / N (i even).
struct AdmissibilityWitness {
  Mat2Z N;
  std::size_t kernel_dimension = 1;
  std::size_t verified_depth = 0;

  Mat2Z M() const { return inverse_in_P(N); }
};

struct WitnessSolve {
  enum class Status { Found, None, Ambiguous };
  Status status = Status::None;
  std::optional<AdmissibilityWitness> witness;
  /// Primitive generators of the solution space of the three symmetry
  /// equations (all of them when the kernel has dimension >= 2).
  std::vector<Mat2Z> kernel_basis;
  std::string reason;
};

/// Solves the three homogeneous symmetry conditions W1*tN, W2*N, W3*tN on
/// the four entries of N exactly over the rationals, clears denominators to
/// primitive integer generators, and — when the kernel is one-dimensional —
/// checks det N != 0, N != +-tN and verifies W_i N_i symmetric for
/// i <= verify_depth.
WitnessSolve solve_admissibility_witness(const Mat2Z& W1, const Mat2Z& W2,
                                         std::size_t verify_depth = 12);

/// Primitive rational-eigenvector directions of x, empty when none exist.
/// A scalar matrix reports the whole plane via the `all` flag.
struct EigenDirections {
  bool all = false;
  std::vector<std::pair<Integer, Integer>> dirs;
};
EigenDirections rational_eigen_directions(const Mat2Z& x);

bool have_common_rational_eigenvector(const Mat2Z& W1, const Mat2Z& W2);

/// True when W1, W2 have no common rational eigenvector and W1 W2 is not
/// +-W2 W1 (the hypotheses under which the witness exists).
bool check_admissibility_hypotheses(const Mat2Z& W1, const Mat2Z& W2);

/// y_k = W_k N_k as an exact, unreduced product. y = [[y0, y1], [y1, y2]].
struct SymmetricCompanion {
  Mat2Z y;
  const Integer& y0() const { return y.a; }
  const Integer& y1() const { return y.b; }
  const Integer& y2() const { return y.d; }
};

/// Throws std::runtime_error("witness invalid at k") when the product is
/// not symmetric.
SymmetricCompanion symmetric_companion(const FibMatrixSeq& seq,
                                       const AdmissibilityWitness& witness,
                                       std::size_t k);

/// Checks the symmetric-companion recurrence
/// y_{i+2} = +- y_{i+1} * M_i * y_i (reduced companions, M_i = M for odd i
/// and transpose(M) for even i, M the inverse of N in P) for every i in
/// [lo, hi]. The recurrence presupposes symmetric companions, so an
/// asymmetric product falsifies the witness at that index. Returns false
/// with the first failing index instead of throwing.
bool check_symmetric_recurrence(const FibMatrixSeq& seq,
                                const AdmissibilityWitness& witness,
                                std::size_t lo, std::size_t hi,
                                std::size_t* first_fail = nullptr);

/// Image of an {a, b}-word under the monoid morphism sending b to W1 and a
/// to W2, folded with star left to right. Empty word -> identity.
Mat2Z eval_ab_word(const AbWord& w, const Mat2Z& W1, const Mat2Z& W2);

/// det pattern of the congruence family: det of every image of an f_ab
/// prefix (length <= kmax) and of every w_k (k <= kmax) must be 1 for even
/// word length and m for odd. Preconditions (primitivity, det = m,
/// W1 = W2 mod m, W1^2 = 0 mod m) are checked first and throw
/// std::invalid_argument naming the failed hypothesis.
struct DetPatternReport {
  struct Entry {
    std::size_t index;  // prefix length, or term index k
    Integer det_value;
    Integer expected;
    bool ok;
  };
  std::vector<Entry> prefix_entries;
  std::vector<Entry> term_entries;
  bool all_ok = true;
  std::optional<std::size_t> first_violation_length;
};
DetPatternReport det_pattern_check(const Mat2Z& W1, const Mat2Z& W2,
                                   const Integer& m, std::size_t kmax);

/// The explicit determinant-m family W1 = [[m, m], [m-1, m]],
/// W2 = [[2m, m], [2m-1, m]] with witness N = [[m, -m], [-2m, 2m-1]].
/// conjugacy_obstruction_absent is set when |m| is a perfect square (the
/// non-conjugacy argument needs |m| non-square).
struct DetMFamily {
  Mat2Z W1, W2, N;
  Integer m;
  bool hypotheses_ok = false;
  bool conjugacy_obstruction_absent = false;
};
DetMFamily det_m_family(const Integer& m);

/// Smallest period p <= max_scan such that (W_{i+p}, W_{i+p+1}) equals
/// (W_i, W_{i+1}) up to sign for some i <= max_scan, if any. A periodic
/// sequence is bounded and therefore not extremal-eligible.
std::optional<std::size_t> detect_period(const FibMatrixSeq& seq,
                                         std::size_t max_scan);

}  // namespace fibcf
