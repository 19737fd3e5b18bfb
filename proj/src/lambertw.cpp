#include "towerlab/lambertw.hpp"

#include "towerlab/errors.hpp"

namespace towerlab {

namespace {
constexpr int kMaxIterations = 200;
}

BigReal lambert_w0(const BigReal& x, const BigReal& tol) {
  if (x.is_nan() || x.sgn() < 0) {
    throw DomainError("lambert_w0: argument must be nonnegative");
  }
  if (x.sgn() == 0) return BigReal::of(0L, x.precision());

  const long prec = x.precision() + 32;
  const BigReal one = BigReal::of(1L, prec);
  const BigReal two = BigReal::of(2L, prec);

  // Initial guess: w = x below 1; asymptotic ln x - ln(ln x + 1) with a
  // small rational correction above.
  BigReal w(prec);
  if (x < 1L) {
    w = add(x, BigReal(prec), MPFR_RNDN, prec);
  } else {
    BigReal lx = log(x, MPFR_RNDN, prec);
    BigReal lx1 = log(lx + one, MPFR_RNDN, prec);
    w = lx - lx1 + lx1 / (lx + two);
  }

  BigReal bound = tol * (x > 1L ? x : one);
  for (int i = 0; i < kMaxIterations; ++i) {
    BigReal ew = exp(w, MPFR_RNDN, prec);
    BigReal f = w * ew - x;
    if (abs(f) <= bound) {
      if (w.sgn() < 0) w = BigReal::of(0L, prec);  // tiny negative round-off near 0
      return add(w, BigReal(x.precision()), MPFR_RNDN, x.precision());
    }
    // Halley step on f(w) = w e^w - x.
    BigReal wp1 = w + one;
    BigReal denom = ew * wp1 - (w + two) * f / (two * wp1);
    w = w - f / denom;
  }
  throw ConvergenceError("lambert_w0: no convergence within 200 iterations (tolerance too tight for precision?)");
}

BigReal lambert_w0(const BigReal& x) {
  BigReal tol = BigReal::of(2L, x.precision());
  mpfr_pow_si(tol.get(), tol.get(), 16 - x.precision(), MPFR_RNDN);
  return lambert_w0(x, tol);
}

}  // namespace towerlab
