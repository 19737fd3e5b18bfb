#include "towerlab/interpolation.hpp"

#include "towerlab/errors.hpp"

namespace towerlab {

StepValue smooth_step(const BigReal& x, long prec) {
  StepValue out{BigReal(prec), BigReal(prec)};
  if (x < 0L) {
    out.value = BigReal::of(1L, prec);
    return out;
  }
  if (x >= 1L) return out;  // 0, 0 (exact at x = 1: cos(pi) = -1, sin(pi) = 0)
  if (x == 0L) {
    out.value = BigReal::of(1L, prec);
    return out;
  }
  BigReal pix = BigReal::pi(prec) * x;
  BigReal two = BigReal::of(2L, prec);
  out.value = (cos(pix) + BigReal::of(1L, prec)) / two;
  out.derivative = neg(BigReal::pi(prec) * sin(pix) / two);
  return out;
}

namespace {

void require_zi(const BaseSequence& seq, const char* what) {
  if (seq.kind() != SeqKind::ZeraouliaI) {
    throw DomainError(std::string(what) + " interpolates the ZeraouliaI sequence");
  }
}

}  // namespace

InterpState interp_state(const BaseSequence& seq, const BigReal& x, long prec) {
  require_zi(seq, "interp_state");
  if (x < 1L) throw DomainError("interpolation needs x >= 1");

  InterpState st;
  st.x = add(x, BigReal(prec), MPFR_RNDN, prec);
  st.depth = floor(x).to_long() + 2;
  st.A.assign(static_cast<size_t>(st.depth) + 2, BigReal(prec));
  st.b.assign(static_cast<size_t>(st.depth) + 2, BigReal(prec));
  st.A[static_cast<size_t>(st.depth) + 1] = BigReal::of(1L, prec);
  for (long n = st.depth; n >= 1; --n) {
    BigReal h = smooth_step(BigReal::of(n, prec) - st.x, prec).value;
    // a_n(x) = u_n^{H(n-x)}; exponent 0 gives exactly 1 above the cutoff
    BigReal an = h.sgn() == 0
                     ? BigReal::of(1L, prec)
                     : exp(h * seq.log_base_point(n, prec), MPFR_RNDN, prec);
    st.A[static_cast<size_t>(n)] =
        pow(an, st.A[static_cast<size_t>(n) + 1], MPFR_RNDN, prec);
    mpz_class nn(n);
    st.b[static_cast<size_t>(n)] =
        log(BigReal::of_integer(nn * (nn + 1), prec), MPFR_RNDN, prec);
  }
  return st;
}

BigReal interp_value(const BaseSequence& seq, const BigReal& x, long prec) {
  return interp_state(seq, x, prec).A[1];
}

BigReal interp_derivative(const BaseSequence& seq, const BigReal& x, long prec) {
  require_zi(seq, "interp_derivative");
  if (x < 1L) throw DomainError("interpolation needs x >= 1");
  BigReal fl = floor(x);
  BigReal frac = x - fl;
  if (frac.sgn() == 0) return BigReal(prec);  // sine factor vanishes exactly

  InterpState st = interp_state(seq, x, prec);
  long top = fl.to_long() + 1;
  BigReal prod = BigReal::of(1L, prec);
  for (long k = 1; k <= top; ++k) {
    prod = prod * neg(st.A[static_cast<size_t>(k)] * st.b[static_cast<size_t>(k)]);
  }
  BigReal half_pi = BigReal::pi(prec) / BigReal::of(2L, prec);
  BigReal sine = sin(BigReal::pi(prec) * add(frac, BigReal(prec), MPFR_RNDN, prec),
                     MPFR_RNDN, prec);
  return st.A[static_cast<size_t>(top) + 1] * prod * half_pi * sine;
}

std::vector<ProductRow> product_diagnostic(const BaseSequence& seq, long m_max, long prec) {
  require_zi(seq, "product_diagnostic");
  if (m_max < 1) throw DomainError("product_diagnostic: m_max must be >= 1");
  std::vector<ProductRow> rows;
  rows.reserve(static_cast<size_t>(m_max));
  const BigReal half = BigReal::parse("0.5", prec);
  for (long m = 1; m <= m_max; ++m) {
    InterpState st = interp_state(seq, BigReal::of(m, prec) + half, prec);
    ProductRow row;
    row.m = m;
    row.product = BigReal::of(1L, prec);
    for (long k = 1; k <= m; ++k) {
      row.term = st.A[static_cast<size_t>(k)] * st.b[static_cast<size_t>(k)];
      row.product = row.product * row.term;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace towerlab
