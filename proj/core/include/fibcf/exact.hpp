#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fibcf {

/// Arbitrary-precision signed integer. Exact, canonical zero.
using Integer = mpz_class;

/// Arbitrary-precision rational, kept canonical: den >= 1, gcd(|num|, den) = 1.
/// mpq_class arithmetic preserves canonical form; construct through
/// make_rational when starting from a raw numerator/denominator pair.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

Integer int_from_string(const std::string& s);
Rational rational_from_string(const std::string& s);  // "num/den" or "num"

std::string to_string(const Integer& z);
std::string to_string(const Rational& r);  // always "num/den"

/// floor(r) as an Integer.
Integer floor_rat(const Rational& r);

/// Nearest integer to r; exact .5 ties round up.
Integer nearest_int(const Rational& r);

/// Closed interval [lo, hi] with exact rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval(Rational lo_, Rational hi_);

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  /// other is a subset of *this (endpoints may touch).
  bool contains(const RationalInterval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool operator==(const RationalInterval& o) const {
    return lo == o.lo && hi == o.hi;
  }
};

RationalInterval interval_add(const RationalInterval& x, const Rational& c);
RationalInterval interval_sum(const RationalInterval& x, const RationalInterval& y);
RationalInterval interval_scale(const RationalInterval& x, const Rational& c);
RationalInterval interval_abs(const RationalInterval& x);
RationalInterval interval_max(const RationalInterval& x, const RationalInterval& y);
RationalInterval interval_mul(const RationalInterval& x, const RationalInterval& y);
/// Requires 0 outside x.
RationalInterval interval_reciprocal(const RationalInterval& x);

/// Continued fraction expansion of a rational, total on all rationals.
///
/// Canonical form: [a0] for integers, otherwise [a0, a1, ..., as] with
/// a1..as >= 1 and as >= 2. With variant = true the companion expansion is
/// returned (length differs by exactly one): [.., as - 1, 1], or
/// [a0 - 1, 1] for integers.
std::vector<Integer> rational_cf(const Rational& r, bool variant = false);

/// Value of a finite continued fraction [q0, q1, ...]. Throws
/// std::domain_error if a tail folds to zero (cannot happen when all
/// interior terms are >= 1).
Rational cf_value(const std::vector<Integer>& quotients);

/// Value of [q0, ..., qk, tail] with an explicit rational tail.
Rational cf_fold_tail(const std::vector<Integer>& quotients, const Rational& tail);

struct CfExtraction {
  std::vector<Integer> quotients;
  /// Exact tail interval: every x in the input satisfies
  /// x = [q0, ..., qk, t] for some t in *residual. Empty (nullopt) only
  /// when a point interval was extracted completely.
  std::optional<RationalInterval> residual;
  bool complete() const { return !residual.has_value(); }
};

/// Certified partial quotients common to every x in I.
///
/// Emits a quotient only when all points of the current tail interval share
/// it; halts on floor disagreement, on an exactly-integral left endpoint
/// (tie: the next tail interval would be unbounded), or after max_terms.
CfExtraction interval_cf_extract(const RationalInterval& I, std::size_t max_terms);

}  // namespace fibcf
