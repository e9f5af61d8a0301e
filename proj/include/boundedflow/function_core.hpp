#pragma once

#include <optional>

#include "boundedflow/bounded_function.hpp"
#include "boundedflow/quadrature.hpp"

namespace boundedflow {

/// Convolution at a single point following the convention
/// (x * alpha)(t) = integral of x(s) * alpha(s - t) ds, evaluated over the
/// kernel support [t - R, t + R]. Note the reflected argument: this is the
/// formula used throughout, which differs by a reflection of alpha from the
/// more common convention.
Real convolve(const BoundedFunction& x, const L1Kernel& alpha, Real t, Real quad_tol);

/// ||x||_{0,1} = integral over [0,1] of |x|.
Real seminorm_01(const BoundedFunction& x, Real quad_tol);

/// (1/2r) * integral over [-r, r] of |g|; tends to 0 for ergodic g.
Real ergodic_mean(const BoundedFunction& g, Real r, Real quad_tol);

/// Scans tau in [scan_lo, scan_hi] by scan_step and returns the first tau for
/// which max over `samples` points t in [-window, window] of |f(t+tau)-f(t)|
/// stays below eps. A sampled necessary-condition check only: the almost
/// periodicity definition quantifies over all real t, which no finite scan
/// can certify.
std::optional<Real> epsilon_period_search(const BoundedFunction& f, Real eps,
                                          Real scan_lo, Real scan_hi, Real scan_step,
                                          Real window, Index samples);

}  // namespace boundedflow
