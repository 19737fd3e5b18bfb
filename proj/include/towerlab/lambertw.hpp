#pragma once

#include "towerlab/bigreal.hpp"
#include "towerlab/interval.hpp"

namespace towerlab {

/// Principal branch of the Lambert W function on x >= 0: the w >= 0 with
/// w*e^w = x. Halley iteration; the result satisfies
/// |w*e^w - x| <= tol * max(x, 1).
///
/// Throws DomainError for x < 0 and ConvergenceError if the iteration cap
/// (200) is reached before the tolerance — a tolerance/precision mismatch.
BigReal lambert_w0(const BigReal& x, const BigReal& tol);

/// Same, with tol = 2^(16 - precision(x)) * max(x, 1).
BigReal lambert_w0(const BigReal& x);

}  // namespace towerlab
