#include "towerlab/interval.hpp"

#include <algorithm>

#include "towerlab/errors.hpp"

namespace towerlab {

Interval::Interval(BigReal lo, BigReal hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  long p = std::max(lo_.precision(), hi_.precision());
  if (lo_.precision() != p) lo_ = add(lo_, BigReal::of(0L, p), MPFR_RNDD, p);
  if (hi_.precision() != p) hi_ = add(hi_, BigReal::of(0L, p), MPFR_RNDU, p);
  if (lo_.is_nan() || hi_.is_nan() || lo_ > hi_) {
    throw DomainError("invalid interval [" + lo_.decimal(10) + ", " + hi_.decimal(10) + "]");
  }
}

Interval Interval::of_rational(const mpq_class& q, long prec) {
  return Interval(BigReal::of_rational(q, prec, MPFR_RNDD),
                  BigReal::of_rational(q, prec, MPFR_RNDU));
}

Interval Interval::log_rational(const mpq_class& q, long prec) {
  if (sgn(q) <= 0) throw DomainError("log_rational: argument must be positive");
  const mpz_class num = q.get_num(), den = q.get_den();
  // ln(p/q) = ln p - ln q, with each log directed so the difference rounds outward.
  BigReal lp_d = log(BigReal::of_integer(num, prec + 8, MPFR_RNDD), MPFR_RNDD);
  BigReal lp_u = log(BigReal::of_integer(num, prec + 8, MPFR_RNDU), MPFR_RNDU);
  BigReal lq_d = log(BigReal::of_integer(den, prec + 8, MPFR_RNDD), MPFR_RNDD);
  BigReal lq_u = log(BigReal::of_integer(den, prec + 8, MPFR_RNDU), MPFR_RNDU);
  return Interval(sub(lp_d, lq_u, MPFR_RNDD, prec), sub(lp_u, lq_d, MPFR_RNDU, prec));
}

BigReal Interval::mid() const {
  BigReal two = BigReal::of(2L, precision());
  return div(add(lo_, hi_, MPFR_RNDN), two, MPFR_RNDN);
}

std::string Interval::to_string(long sig_digits) const {
  return "[" + lo_.decimal(sig_digits, MPFR_RNDD) + ", " + hi_.decimal(sig_digits, MPFR_RNDU) + "]";
}

Interval add(const Interval& a, const Interval& b) {
  return Interval(add(a.lo(), b.lo(), MPFR_RNDD), add(a.hi(), b.hi(), MPFR_RNDU));
}

Interval sub(const Interval& a, const Interval& b) {
  return Interval(sub(a.lo(), b.hi(), MPFR_RNDD), sub(a.hi(), b.lo(), MPFR_RNDU));
}

Interval mul(const Interval& a, const Interval& b) {
  const BigReal* as[2] = {&a.lo(), &a.hi()};
  const BigReal* bs[2] = {&b.lo(), &b.hi()};
  BigReal lo = mul(*as[0], *bs[0], MPFR_RNDD);
  BigReal hi = mul(*as[0], *bs[0], MPFR_RNDU);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      BigReal d = mul(*as[i], *bs[j], MPFR_RNDD);
      BigReal u = mul(*as[i], *bs[j], MPFR_RNDU);
      if (d < lo) lo = d;
      if (u > hi) hi = u;
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval div(const Interval& a, const Interval& b) {
  if (b.lo().sgn() <= 0 && b.hi().sgn() >= 0) {
    throw DomainError("interval division by an interval containing zero");
  }
  const BigReal* as[2] = {&a.lo(), &a.hi()};
  const BigReal* bs[2] = {&b.lo(), &b.hi()};
  BigReal lo = div(*as[0], *bs[0], MPFR_RNDD);
  BigReal hi = div(*as[0], *bs[0], MPFR_RNDU);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      BigReal d = div(*as[i], *bs[j], MPFR_RNDD);
      BigReal u = div(*as[i], *bs[j], MPFR_RNDU);
      if (d < lo) lo = d;
      if (u > hi) hi = u;
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval neg(const Interval& a) { return Interval(neg(a.hi()), neg(a.lo())); }

Interval exp(const Interval& a) {
  return Interval(exp(a.lo(), MPFR_RNDD), exp(a.hi(), MPFR_RNDU));
}

Interval log(const Interval& a) {
  if (a.lo().sgn() <= 0) throw DomainError("interval log of nonpositive interval");
  return Interval(log(a.lo(), MPFR_RNDD), log(a.hi(), MPFR_RNDU));
}

Interval intersect(const Interval& a, const Interval& b) {
  const BigReal& lo = a.lo() >= b.lo() ? a.lo() : b.lo();
  const BigReal& hi = a.hi() <= b.hi() ? a.hi() : b.hi();
  if (lo > hi) throw DomainError("intersect: disjoint intervals");
  return Interval(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) {
  const BigReal& lo = a.lo() <= b.lo() ? a.lo() : b.lo();
  const BigReal& hi = a.hi() >= b.hi() ? a.hi() : b.hi();
  return Interval(lo, hi);
}

Interval pow_unit_interval(const Interval& base, const Interval& expo) {
  if (base.lo().sgn() <= 0 || base.hi() >= 1L) {
    throw DomainError("pow_unit_interval: base must lie strictly inside (0,1)");
  }
  if (expo.lo().sgn() < 0) {
    throw DomainError("pow_unit_interval: exponent must be nonnegative");
  }
  return Interval(pow(base.lo(), expo.hi(), MPFR_RNDD),
                  pow(base.hi(), expo.lo(), MPFR_RNDU));
}

std::optional<CertifiedDecimal> certified_decimal(const Interval& x, long max_frac_digits) {
  if (x.lo().sgn() < 0) throw DomainError("certified_decimal: negative values unsupported");
  std::string slo = x.lo().decimal_fixed(max_frac_digits, MPFR_RNDD);
  std::string shi = x.hi().decimal_fixed(max_frac_digits, MPFR_RNDU);
  auto dot_lo = slo.find('.');
  auto dot_hi = shi.find('.');
  std::string int_lo = slo.substr(0, dot_lo), int_hi = shi.substr(0, dot_hi);
  if (int_lo != int_hi) return std::nullopt;
  std::string frac_lo = slo.substr(dot_lo + 1), frac_hi = shi.substr(dot_hi + 1);
  CertifiedDecimal out;
  out.integer_part = int_lo;
  size_t n = std::min(frac_lo.size(), frac_hi.size());
  for (size_t i = 0; i < n && frac_lo[i] == frac_hi[i]; ++i) out.fraction.push_back(frac_lo[i]);
  return out;
}

}  // namespace towerlab
