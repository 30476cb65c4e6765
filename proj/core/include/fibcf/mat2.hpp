#pragma once

#include "fibcf/exact.hpp"

namespace fibcf {

/// 2x2 integer matrix [[a, b], [c, d]], row-major, exact entries.
struct Mat2Z {
  Integer a, b, c, d;

  Mat2Z() : a(0), b(0), c(0), d(0) {}
  Mat2Z(Integer a_, Integer b_, Integer c_, Integer d_);

  bool operator==(const Mat2Z& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const Mat2Z& o) const { return !(*this == o); }
};

Mat2Z mat2_identity();
Mat2Z operator*(const Mat2Z& x, const Mat2Z& y);  // plain matrix product
Mat2Z operator-(const Mat2Z& x);

Integer det(const Mat2Z& x);
Integer norm(const Mat2Z& x);  // largest absolute value of the entries
Mat2Z transpose(const Mat2Z& x);
Mat2Z adjugate(const Mat2Z& x);

bool is_zero(const Mat2Z& x);
bool is_symmetric(const Mat2Z& x);
bool is_skew_symmetric(const Mat2Z& x);
bool is_primitive(const Mat2Z& x);

/// gcd of the absolute entries; throws on the zero matrix.
Integer content(const Mat2Z& x);

/// The unique primitive matrix with x = content(x) * reduce(x).
Mat2Z reduce(const Mat2Z& x);

/// Representative of {x, -x} whose first nonzero entry, in (a, b, c, d)
/// order, is positive. Deterministic pick for golden tests; callers that
/// need both signs keep the pair themselves.
Mat2Z canonical_sign(const Mat2Z& x);

/// Group product in P: (xy)^red. Inputs must have nonzero determinant;
/// non-primitive inputs are reduced first and reported through
/// *inputs_reduced when given.
Mat2Z star(const Mat2Z& x, const Mat2Z& y, bool* inputs_reduced = nullptr);

/// Inverse in P: the reduced adjugate, sign-normalized. star(x, inverse)
/// is +-identity.
Mat2Z inverse_in_P(const Mat2Z& x);

/// star-fold power, exponent >= 0.
Mat2Z star_pow(const Mat2Z& x, unsigned long e);

struct ConeParams {
  Rational r;  // 0 < r <= 1
  explicit ConeParams(Rational r_);
};

/// a >= max(b, c) and min(b, c) >= d >= 0.
bool in_S1(const Mat2Z& x);
/// in_S1 and |det| = 1.
bool in_S(const Mat2Z& x);
/// Positive entries; first row >= r * second row, first column >= r * second
/// column, entrywise.
bool in_Sr(const Mat2Z& x, const ConeParams& p);

}  // namespace fibcf
