#include "fibcf/mat2.hpp"

#include <stdexcept>
#include <utility>

namespace fibcf {

Mat2Z::Mat2Z(Integer a_, Integer b_, Integer c_, Integer d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

Mat2Z mat2_identity() { return Mat2Z(1, 0, 0, 1); }

Mat2Z operator*(const Mat2Z& x, const Mat2Z& y) {
  return Mat2Z(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
               x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

Mat2Z operator-(const Mat2Z& x) { return Mat2Z(-x.a, -x.b, -x.c, -x.d); }

Integer det(const Mat2Z& x) { return x.a * x.d - x.b * x.c; }

Integer norm(const Mat2Z& x) {
  Integer n = abs(x.a);
  for (const Integer* e : {&x.b, &x.c, &x.d}) {
    Integer v = abs(*e);
    if (v > n) n = v;
  }
  return n;
}

Mat2Z transpose(const Mat2Z& x) { return Mat2Z(x.a, x.c, x.b, x.d); }

Mat2Z adjugate(const Mat2Z& x) { return Mat2Z(x.d, -x.b, -x.c, x.a); }

bool is_zero(const Mat2Z& x) {
  return x.a == 0 && x.b == 0 && x.c == 0 && x.d == 0;
}

bool is_symmetric(const Mat2Z& x) { return x.b == x.c; }

bool is_skew_symmetric(const Mat2Z& x) {
  return x.a == 0 && x.d == 0 && x.b == -x.c;
}

Integer content(const Mat2Z& x) {
  if (is_zero(x)) throw std::invalid_argument("zero matrix has no content");
  Integer g = abs(x.a);
  for (const Integer* e : {&x.b, &x.c, &x.d}) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e->get_mpz_t());
  }
  return g;
}

bool is_primitive(const Mat2Z& x) { return !is_zero(x) && content(x) == 1; }

Mat2Z reduce(const Mat2Z& x) {
  Integer g = content(x);
  if (g == 1) return x;
  return Mat2Z(x.a / g, x.b / g, x.c / g, x.d / g);
}

Mat2Z canonical_sign(const Mat2Z& x) {
  for (const Integer* e : {&x.a, &x.b, &x.c, &x.d}) {
    if (*e > 0) return x;
    if (*e < 0) return -x;
  }
  return x;  // zero matrix
}

Mat2Z star(const Mat2Z& x, const Mat2Z& y, bool* inputs_reduced) {
  if (is_zero(x) || is_zero(y) || det(x) == 0 || det(y) == 0)
    throw std::invalid_argument("not in P");
  bool reduced_any = false;
  const Mat2Z* px = &x;
  const Mat2Z* py = &y;
  Mat2Z rx, ry;
  if (!is_primitive(x)) {
    rx = reduce(x);
    px = &rx;
    reduced_any = true;
  }
  if (!is_primitive(y)) {
    ry = reduce(y);
    py = &ry;
    reduced_any = true;
  }
  if (inputs_reduced) *inputs_reduced = reduced_any;
  return reduce(*px * *py);
}

Mat2Z inverse_in_P(const Mat2Z& x) {
  if (is_zero(x) || det(x) == 0) throw std::invalid_argument("not in P");
  return canonical_sign(reduce(adjugate(x)));
}

Mat2Z star_pow(const Mat2Z& x, unsigned long e) {
  Mat2Z acc = mat2_identity();
  for (unsigned long i = 0; i < e; ++i) acc = star(acc, x);
  return acc;
}

ConeParams::ConeParams(Rational r_) : r(std::move(r_)) {
  if (r <= 0 || r > 1) throw std::invalid_argument("cone parameter needs 0 < r <= 1");
}

bool in_S1(const Mat2Z& x) {
  return x.a >= x.b && x.a >= x.c && x.b >= x.d && x.c >= x.d && x.d >= 0;
}

bool in_S(const Mat2Z& x) {
  Integer dt = det(x);
  return in_S1(x) && (dt == 1 || dt == -1);
}

bool in_Sr(const Mat2Z& x, const ConeParams& p) {
  if (x.a <= 0 || x.b <= 0 || x.c <= 0 || x.d <= 0) return false;
  const Integer& rn = p.r.get_num();
  const Integer& rd = p.r.get_den();
  // entry >= r * other, compared exactly as rd*entry >= rn*other
  return rd * x.a >= rn * x.c && rd * x.b >= rn * x.d &&
         rd * x.a >= rn * x.b && rd * x.c >= rn * x.d;
}

}  // namespace fibcf
