#include "towerlab/bigreal.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "towerlab/errors.hpp"

namespace towerlab {

BigReal BigReal::of(long value, long prec) {
  BigReal r(prec);
  mpfr_set_si(r.v_, value, MPFR_RNDN);
  return r;
}

BigReal BigReal::of(double value, long prec) {
  BigReal r(prec);
  mpfr_set_d(r.v_, value, MPFR_RNDN);
  return r;
}

BigReal BigReal::of_rational(const mpq_class& q, long prec, mpfr_rnd_t rnd) {
  BigReal r(prec);
  mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
  return r;
}

BigReal BigReal::of_integer(const mpz_class& z, long prec, mpfr_rnd_t rnd) {
  BigReal r(prec);
  mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
  return r;
}

BigReal BigReal::parse(std::string_view dec, long prec, mpfr_rnd_t rnd) {
  BigReal r(prec);
  std::string s(dec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, rnd) != 0) {
    throw UsageError("not a decimal number: '" + s + "'");
  }
  return r;
}

BigReal BigReal::pi(long prec, mpfr_rnd_t rnd) {
  BigReal r(prec);
  mpfr_const_pi(r.v_, rnd);
  return r;
}

std::string BigReal::decimal_fixed(long frac_digits, mpfr_rnd_t rnd) const {
  char* out = nullptr;
  if (mpfr_asprintf(&out, "%.*R*f", static_cast<int>(frac_digits), rnd, v_) < 0) {
    throw Error("mpfr_asprintf failed");
  }
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::string BigReal::decimal(long sig_digits, mpfr_rnd_t rnd) const {
  if (sig_digits < 2) sig_digits = 2;
  char* out = nullptr;
  if (mpfr_asprintf(&out, "%.*R*e", static_cast<int>(sig_digits - 1), rnd, v_) < 0) {
    throw Error("mpfr_asprintf failed");
  }
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::string BigReal::serialize() const {
  // ceil(prec * log10(2)) + 2 significant digits round-trips exactly.
  long digits = static_cast<long>(precision() * 0.3010299956639812) + 3;
  return decimal(digits);
}

namespace {
long out_prec(const BigReal& a, const BigReal& b, long prec) {
  if (prec > 0) return BigReal::clamp_prec(prec);
  return std::max(a.precision(), b.precision());
}
long out_prec(const BigReal& a, long prec) {
  if (prec > 0) return BigReal::clamp_prec(prec);
  return a.precision();
}
}  // namespace

BigReal add(const BigReal& a, const BigReal& b, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(a, b, prec));
  mpfr_add(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigReal sub(const BigReal& a, const BigReal& b, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(a, b, prec));
  mpfr_sub(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigReal mul(const BigReal& a, const BigReal& b, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(a, b, prec));
  mpfr_mul(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigReal div(const BigReal& a, const BigReal& b, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(a, b, prec));
  mpfr_div(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigReal pow(const BigReal& base, const BigReal& e, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(base, e, prec));
  mpfr_pow(r.get(), base.get(), e.get(), rnd);
  return r;
}

BigReal exp(const BigReal& a, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(a, prec));
  mpfr_exp(r.get(), a.get(), rnd);
  return r;
}

BigReal log(const BigReal& a, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(a, prec));
  mpfr_log(r.get(), a.get(), rnd);
  return r;
}

BigReal sin(const BigReal& a, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(a, prec));
  mpfr_sin(r.get(), a.get(), rnd);
  return r;
}

BigReal cos(const BigReal& a, mpfr_rnd_t rnd, long prec) {
  BigReal r(out_prec(a, prec));
  mpfr_cos(r.get(), a.get(), rnd);
  return r;
}

BigReal neg(const BigReal& a) {
  BigReal r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& a) {
  BigReal r(a.precision());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

BigReal floor(const BigReal& a) {
  BigReal r(a.precision());
  mpfr_floor(r.get(), a.get());
  return r;
}

}  // namespace towerlab
