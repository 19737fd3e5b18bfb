#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>

namespace towerlab {

/// Arbitrary-precision binary floating point value (MPFR-backed).
///
/// Every value carries its own precision (>= 64 bits). Operations are
/// deterministic: identical inputs and precisions give bit-identical
/// results. Directed-rounding entry points are provided for building
/// outward-rounded interval arithmetic on top.
class BigReal {
 public:
  static constexpr long kMinPrecision = 64;
  static constexpr long kDefaultPrecision = 256;

  explicit BigReal(long prec = kDefaultPrecision) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_zero(v_, 1);
  }
  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, kMinPrecision);
    mpfr_swap(v_, o.v_);
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  static BigReal of(long value, long prec);
  static BigReal of(double value, long prec);
  static BigReal of_rational(const mpq_class& q, long prec,
                             mpfr_rnd_t rnd = MPFR_RNDN);
  static BigReal of_integer(const mpz_class& z, long prec,
                            mpfr_rnd_t rnd = MPFR_RNDN);
  /// Parses a decimal string ("0.8588", "1e-30", ...).
  static BigReal parse(std::string_view dec, long prec,
                       mpfr_rnd_t rnd = MPFR_RNDN);
  static BigReal pi(long prec, mpfr_rnd_t rnd = MPFR_RNDN);

  long precision() const { return mpfr_get_prec(v_); }
  int sgn() const { return mpfr_sgn(v_); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Fixed-point rendering with `frac_digits` digits after the point,
  /// rounded in the given direction.
  std::string decimal_fixed(long frac_digits, mpfr_rnd_t rnd = MPFR_RNDN) const;
  /// Scientific rendering with `sig_digits` significant digits.
  std::string decimal(long sig_digits, mpfr_rnd_t rnd = MPFR_RNDN) const;
  /// Decimal string with enough digits that parsing it at the same
  /// precision recovers the value exactly.
  std::string serialize() const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  friend int cmp(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_);
  }
  friend bool operator<(const BigReal& a, const BigReal& b) { return cmp(a, b) < 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const BigReal& a, const BigReal& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigReal& a, const BigReal& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  static long clamp_prec(long prec) {
    return prec < kMinPrecision ? kMinPrecision : prec;
  }

 private:
  mpfr_t v_;
};

// Rounded arithmetic. Result precision is `prec` when nonzero, otherwise
// the larger of the operand precisions.
BigReal add(const BigReal& a, const BigReal& b, mpfr_rnd_t rnd, long prec = 0);
BigReal sub(const BigReal& a, const BigReal& b, mpfr_rnd_t rnd, long prec = 0);
BigReal mul(const BigReal& a, const BigReal& b, mpfr_rnd_t rnd, long prec = 0);
BigReal div(const BigReal& a, const BigReal& b, mpfr_rnd_t rnd, long prec = 0);
BigReal pow(const BigReal& base, const BigReal& e, mpfr_rnd_t rnd, long prec = 0);
BigReal exp(const BigReal& a, mpfr_rnd_t rnd = MPFR_RNDN, long prec = 0);
BigReal log(const BigReal& a, mpfr_rnd_t rnd = MPFR_RNDN, long prec = 0);
BigReal sin(const BigReal& a, mpfr_rnd_t rnd = MPFR_RNDN, long prec = 0);
BigReal cos(const BigReal& a, mpfr_rnd_t rnd = MPFR_RNDN, long prec = 0);
BigReal neg(const BigReal& a);
BigReal abs(const BigReal& a);
BigReal floor(const BigReal& a);

inline BigReal operator+(const BigReal& a, const BigReal& b) { return add(a, b, MPFR_RNDN); }
inline BigReal operator-(const BigReal& a, const BigReal& b) { return sub(a, b, MPFR_RNDN); }
inline BigReal operator*(const BigReal& a, const BigReal& b) { return mul(a, b, MPFR_RNDN); }
inline BigReal operator/(const BigReal& a, const BigReal& b) { return div(a, b, MPFR_RNDN); }
inline BigReal operator-(const BigReal& a) { return neg(a); }

}  // namespace towerlab
