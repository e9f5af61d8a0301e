#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace boundedflow {

using Real = double;
using Index = Eigen::Index;
using Array = Eigen::ArrayXd;

/// Uniform sampling window [t0, t1] with n nodes, h = (t1-t0)/(n-1).
struct Grid {
    Real t0 = 0.0;
    Real t1 = 1.0;
    Index n = 2;

    Real step() const { return (t1 - t0) / static_cast<Real>(n - 1); }
    Real node(Index i) const { return t0 + step() * static_cast<Real>(i); }
    Array nodes() const { return Array::LinSpaced(n, t0, t1); }
    bool valid() const { return n >= 2 && t0 < t1; }
};

/// Error budget knobs shared across the pipeline.
struct Tolerances {
    Real tail_tol = 1e-7;      // truncation of the improper integral
    Real quad_tol = 1e-7;      // quadrature error per evaluated point
    Real step_tol = 1e-8;      // fixed-point iteration stopping criterion
    Real residual_tol = 1e-4;  // ODE residual gate
    Real slack = 1e-3;         // relative slack on inequality checks
};

}  // namespace boundedflow
