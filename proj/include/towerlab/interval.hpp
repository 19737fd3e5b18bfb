#pragma once

#include <optional>
#include <string>

#include "towerlab/bigreal.hpp"

namespace towerlab {

/// Closed interval [lo, hi] with outward-rounded arithmetic: every
/// operation returns an interval containing the exact image of its
/// inputs. Endpoints share one precision.
class Interval {
 public:
  Interval() : lo_(BigReal::kMinPrecision), hi_(BigReal::kMinPrecision) {}
  Interval(BigReal lo, BigReal hi);
  static Interval point(const BigReal& x) { return Interval(x, x); }
  static Interval of_rational(const mpq_class& q, long prec);
  /// Enclosure of ln(p/q) computed from the exact integers p, q > 0.
  static Interval log_rational(const mpq_class& q, long prec);

  const BigReal& lo() const { return lo_; }
  const BigReal& hi() const { return hi_; }
  long precision() const { return lo_.precision(); }

  BigReal width() const { return sub(hi_, lo_, MPFR_RNDU); }
  BigReal mid() const;
  bool contains(const BigReal& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo() && o.hi() <= hi_; }
  bool strictly_below(const Interval& o) const { return hi_ < o.lo(); }
  bool strictly_positive() const { return lo_.sgn() > 0; }

  std::string to_string(long sig_digits = 12) const;

 private:
  BigReal lo_, hi_;
};

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval div(const Interval& a, const Interval& b);
Interval neg(const Interval& a);
Interval exp(const Interval& a);
Interval log(const Interval& a);
/// Intersection; both inputs must overlap.
Interval intersect(const Interval& a, const Interval& b);
/// Smallest interval containing both.
Interval hull(const Interval& a, const Interval& b);

/// Enclosure of {b^e : b in base, e in expo} for base in (0,1) and
/// expo in [0, inf): increasing in the base, decreasing in the exponent,
/// so the lower end comes from (base.lo, expo.hi) and the upper end from
/// (base.hi, expo.lo), each outward-rounded.
Interval pow_unit_interval(const Interval& base, const Interval& expo);

/// Decimal digits on which both outward-rounded endpoints agree.
/// Requires a nonnegative interval; nullopt when the integer parts
/// (or signs) differ, i.e. when not even one digit is certified.
struct CertifiedDecimal {
  std::string integer_part;  // digits before the point
  std::string fraction;      // certified digits after the point
};
std::optional<CertifiedDecimal> certified_decimal(const Interval& x,
                                                  long max_frac_digits);

}  // namespace towerlab
