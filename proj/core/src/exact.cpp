#include "fibcf/exact.hpp"

#include <stdexcept>
#include <utility>

namespace fibcf {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer int_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer string");
  Integer z;
  if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("bad integer string: " + s);
  return z;
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(int_from_string(s));
  return make_rational(int_from_string(s.substr(0, slash)),
                       int_from_string(s.substr(slash + 1)));
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor_rat(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Integer nearest_int(const Rational& r) {
  return floor_rat(r + Rational(1, 2));
}

RationalInterval::RationalInterval(Rational lo_, Rational hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo > hi) throw std::invalid_argument("interval with lo > hi");
}

RationalInterval interval_add(const RationalInterval& x, const Rational& c) {
  return {x.lo + c, x.hi + c};
}

RationalInterval interval_sum(const RationalInterval& x, const RationalInterval& y) {
  return {x.lo + y.lo, x.hi + y.hi};
}

RationalInterval interval_reciprocal(const RationalInterval& x) {
  if (x.lo <= 0 && x.hi >= 0)
    throw std::domain_error("reciprocal of an interval containing zero");
  return {1 / x.hi, 1 / x.lo};
}

RationalInterval interval_scale(const RationalInterval& x, const Rational& c) {
  if (c >= 0) return {x.lo * c, x.hi * c};
  return {x.hi * c, x.lo * c};
}

RationalInterval interval_abs(const RationalInterval& x) {
  if (x.lo >= 0) return x;
  if (x.hi <= 0) return {-x.hi, -x.lo};
  Rational top = -x.lo > x.hi ? -x.lo : x.hi;
  return {Rational(0), top};
}

RationalInterval interval_max(const RationalInterval& x, const RationalInterval& y) {
  return {x.lo > y.lo ? x.lo : y.lo, x.hi > y.hi ? x.hi : y.hi};
}

RationalInterval interval_mul(const RationalInterval& x, const RationalInterval& y) {
  Rational p1 = x.lo * y.lo, p2 = x.lo * y.hi, p3 = x.hi * y.lo, p4 = x.hi * y.hi;
  Rational lo = p1, hi = p1;
  for (const Rational* p : {&p2, &p3, &p4}) {
    if (*p < lo) lo = *p;
    if (*p > hi) hi = *p;
  }
  return {lo, hi};
}

std::vector<Integer> rational_cf(const Rational& r, bool variant) {
  std::vector<Integer> q;
  Integer n = r.get_num(), d = r.get_den();
  while (true) {
    Integer a, rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    q.push_back(a);
    if (rem == 0) break;
    n = d;
    d = rem;
  }
  // Euclid with floor division ends with a last quotient >= 2 whenever the
  // expansion has more than one term, which is the canonical form. The
  // companion expansion is one term longer: [.., as] -> [.., as - 1, 1].
  if (variant) {
    q.back() -= 1;
    q.emplace_back(1);
  }
  return q;
}

Rational cf_value(const std::vector<Integer>& quotients) {
  if (quotients.empty()) throw std::domain_error("empty continued fraction");
  Rational v(quotients.back());
  for (auto it = quotients.rbegin() + 1; it != quotients.rend(); ++it) {
    if (v == 0) throw std::domain_error("continued fraction tail folds to zero");
    v = Rational(*it) + 1 / v;
  }
  return v;
}

Rational cf_fold_tail(const std::vector<Integer>& quotients, const Rational& tail) {
  Rational v = tail;
  for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
    if (v == 0) throw std::domain_error("continued fraction tail folds to zero");
    v = Rational(*it) + 1 / v;
  }
  return v;
}

CfExtraction interval_cf_extract(const RationalInterval& I, std::size_t max_terms) {
  CfExtraction out;
  if (I.is_point()) {
    std::vector<Integer> full = rational_cf(I.lo);
    if (full.size() <= max_terms) {
      out.quotients = std::move(full);
      out.residual = std::nullopt;
      return out;
    }
    out.quotients.assign(full.begin(), full.begin() + static_cast<long>(max_terms));
    std::vector<Integer> rest(full.begin() + static_cast<long>(max_terms), full.end());
    Rational tail = cf_value(rest);
    out.residual = RationalInterval(tail, tail);
    return out;
  }

  Rational lo = I.lo, hi = I.hi;
  while (out.quotients.size() < max_terms) {
    Integer fl = floor_rat(lo);
    if (fl != floor_rat(hi)) break;
    if (lo == Rational(fl)) break;  // integral left endpoint: halt, never guess
    out.quotients.push_back(fl);
    Rational a(fl);
    // Reciprocal of the shifted tail reverses the endpoints.
    Rational nlo = 1 / (hi - a), nhi = 1 / (lo - a);
    lo = std::move(nlo);
    hi = std::move(nhi);
  }
  out.residual = RationalInterval(lo, hi);
  return out;
}

}  // namespace fibcf
