#pragma once

#include <vector>

#include "towerlab/bigreal.hpp"
#include "towerlab/towers.hpp"

namespace towerlab {

struct StepValue {
  BigReal value;
  BigReal derivative;
};

/// Once-differentiable step kernel: 1 for x < 0, (cos(pi x)+1)/2 on [0,1],
/// 0 for x > 1; derivative -pi sin(pi x)/2 on (0,1) and 0 elsewhere.
StepValue smooth_step(const BigReal& x, long prec);

/// Evaluation state of the interpolant at x: depth = floor(x)+2,
/// A[n] = a_n(x)^{A[n+1]} with a_n(x) = u_n^{H(n-x)} and A[depth+1] = 1,
/// b[n] = ln(n(n+1)). A[1] is the interpolant value.
struct InterpState {
  BigReal x;
  long depth = 0;
  std::vector<BigReal> A;  // 1-based; A[depth+1] == 1 exactly
  std::vector<BigReal> b;  // 1-based; b[n] = ln(n(n+1))
};

InterpState interp_state(const BaseSequence& seq, const BigReal& x, long prec);

/// A_1(x); equals the depth-n tower value at integer x = n. ZeraouliaI only.
BigReal interp_value(const BaseSequence& seq, const BigReal& x, long prec);

/// Closed-form derivative
///   A_1'(x) = A_{floor(x)+2} * prod_{k=1}^{floor(x)+1} (-A_k b_k)
///             * (pi/2) * sin(pi(x - floor(x))),
/// exactly 0 at integers. Matches central finite differences of
/// interp_value to relative 1e-6 and alternates sign between consecutive
/// unit intervals.
BigReal interp_derivative(const BaseSequence& seq, const BigReal& x, long prec);

struct ProductRow {
  long m = 0;
  BigReal term;     // A_m(x_m) * b_m
  BigReal product;  // prod_{k=1}^m A_k(x_m) * b_k
};

/// Magnitude diagnostic for the derivative's product at the half-integer
/// sample points x_m = m + 1/2, where the sine factor is 1.
std::vector<ProductRow> product_diagnostic(const BaseSequence& seq, long m_max, long prec);

}  // namespace towerlab
