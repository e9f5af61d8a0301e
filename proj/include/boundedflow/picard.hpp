#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boundedflow/exp_kernel.hpp"
#include "boundedflow/map_descriptor.hpp"

namespace boundedflow {

/// Which equation the problem encodes: x' + G(x,t) x = F(x,t) (PlusG) or the
/// reverse-time variant x' - G(x,t) x = F(x,t) (MinusG).
enum class EquationSign { PlusG, MinusG };

struct Problem {
    MapDescriptor F;
    MapDescriptor G;
    HypothesisConstants constants;
    EquationSign sign = EquationSign::PlusG;
    std::string id;  // catalog id or "inline"
};

struct SolverOptions {
    Tolerances tol;
    int max_iter = 200;
    Real damping = 1.0;  // theta in (0, 1]
    std::optional<GridFunction> x0;
    Real map_quad_tol = 1e-8;  // quadrature for convolution / seminorm terms
};

struct SolveReport {
    GridFunction solution;         // restricted to the requested grid
    GridFunction padded_solution;  // iterate on the padded working grid
    int iterations = 0;
    std::vector<Real> step_norms;
    Real residual = 0.0;
    Real box_violation = 0.0;  // max excursion of any iterate outside [k, M]
    std::optional<Real> certified_error;
    bool converged = false;
    Real q = 0.0;
    Real damping_used = 1.0;
    std::string warning;
};

/// One application of the fixed-point operator Gamma(x) = T(F(x), G(x))
/// (or its reverse-time mirror for MinusG problems) sampled on the grid.
GridFunction gamma(const Problem& p, const GridFunction& x, const Grid& grid,
                   const Tolerances& tol, Real map_quad_tol = 1e-8);

/// Picard iteration x_{n+1} = (1-theta) x_n + theta Gamma(x_n) from
/// x_0 = (k+M)/2 until the grid sup-norm step drops below step_tol. With a
/// contraction certificate (q < 1) the step norms decrease geometrically and
/// an a-posteriori error bound is attached; otherwise the iteration is a
/// damped search and non-convergence is reported, not thrown. Without a
/// certificate the damping falls back to theta/2 when the step norm grows
/// twice in a row.
SolveReport solve_picard(const Problem& p, const Grid& grid, const SolverOptions& opts);

/// Max over interior nodes of |D_h[x](t) +- G(x,t) x(t) - F(x,t)| with the
/// fourth-order central difference (sign per p.sign).
Real residual(const Problem& p, const GridFunction& x, Real map_quad_tol = 1e-8);

/// A-posteriori bound q/(1-q) * (last step norm); absent when q >= 1 or no
/// steps were taken.
std::optional<Real> certify(const SolveReport& report, const HypothesisConstants& c);

}  // namespace boundedflow
