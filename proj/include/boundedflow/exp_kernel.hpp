#pragma once

#include <optional>

#include "boundedflow/bounded_function.hpp"

namespace boundedflow {

// The integral operator
//     T(f,g)(t) = integral_{-inf}^{t} exp(-integral_s^t g(u) du) f(s) ds
// for g bounded below by l > 0, its reverse-time variant
//     Trev(f,g)(t) = integral_t^{+inf} exp(integral_s^t g(u) du) f(s) ds,
// and the machine checks that go with them. The improper integral is
// truncated at depth A chosen so the discarded tail
// ||f||_inf * exp(-l A) / l is below tail_tol; the kernel is evaluated from a
// precomputed cumulative integral of g so each output point costs one O(m)
// pass over the truncated range.

/// Left-truncation depth for the improper integral.
struct TruncationPlan {
    Real l = 1.0;
    Real tail_tol = 1e-7;
    Real depth = 0.0;  // A

    static TruncationPlan for_bound(Real sup_f, Real l, Real tail_tol);
};

/// Cumulative integral Gcum(t_i) = integral from the left edge to t_i of g,
/// held on a uniform fine grid; each cell is integrated by Simpson with the
/// cell midpoint. Strictly increasing whenever g >= l > 0.
class CumulativeIntegral {
public:
    /// Samples g on [left, left + cells*step]; throws PreconditionViolation
    /// naming the offending t if g dips below l*(1 - 1e-9).
    CumulativeIntegral(const BoundedFunction& g, Real left, Real step, Index cells, Real l);

    Index cells() const { return values_.size() - 1; }
    Real step() const { return step_; }
    Real node(Index i) const { return left_ + step_ * static_cast<Real>(i); }
    const Array& values() const { return values_; }
    const Array& g_samples() const { return g_nodes_; }

private:
    Real left_;
    Real step_;
    Array values_;   // Gcum at fine nodes
    Array g_nodes_;  // g at fine nodes
};

/// Resolved discretization for one (f, g, grid) triple: padding in coarse
/// cells plus the accepted inner refinement factor.
struct OperatorPlan {
    Index pad_cells = 0;
    int refine = 2;
    Real depth = 0.0;
};

/// Picks the refinement by computing T at refinements r and 2r until the
/// sup-norm Richardson estimate drops below quad_tol * safety. Reusable
/// across Picard iterations so the discrete operator stays a fixed map.
OperatorPlan plan_apply_T(const BoundedFunction& f, const BoundedFunction& g, Real l,
                          const Grid& grid, Real tail_tol, Real quad_tol,
                          Real safety = 0.5);

/// Samples of T(f,g) on the grid; total error per point is at most
/// tail_tol + quad_tol, and |T(f,g)| <= sup_bound(f)/l + tail_tol.
GridFunction apply_T(const BoundedFunction& f, const BoundedFunction& g, Real l,
                     const Grid& grid, Real tail_tol, Real quad_tol);
GridFunction apply_T(const BoundedFunction& f, const BoundedFunction& g, Real l,
                     const Grid& grid, Real tail_tol, const OperatorPlan& plan);

/// Reverse-time variant; requires the mirrored (right) padding and satisfies
/// Trev(f,g)'(t) = g(t) Trev(f,g)(t) - f(t).
GridFunction apply_T_reverse(const BoundedFunction& f, const BoundedFunction& g, Real l,
                             const Grid& grid, Real tail_tol, Real quad_tol);
GridFunction apply_T_reverse(const BoundedFunction& f, const BoundedFunction& g, Real l,
                             const Grid& grid, Real tail_tol, const OperatorPlan& plan);

/// Numerical mass of integral_{-inf}^t g(s) exp(-integral_s^t g) ds, equal to
/// 1 for every admissible g; |result - 1| <= tail_tol + quad_tol.
Real check_unit_mass(const BoundedFunction& g, Real l, Real t, Real tail_tol, Real quad_tol);

/// Max over interior grid nodes of |D_h[Tfg](t) + g(t) Tfg(t) - f(t)| where
/// D_h is the fourth-order central difference. Decays like h^4 on smooth
/// inputs until the quadrature floor.
Real derivative_identity_residual(const GridFunction& Tfg, const BoundedFunction& f,
                                  const BoundedFunction& g);

struct LipschitzReport {
    Real lhs = 0.0;  // sampled ||T(f1,g1) - T(f2,g2)||_inf
    Real rhs = 0.0;  // max(r/l^2, 1/l) * (||f1-f2||_inf + ||g1-g2||_inf), sampled
    bool pass = false;
};

/// Checks the operator Lipschitz bound
///   ||T(f1,g1)-T(f2,g2)|| <= max(r/l^2, 1/l) (||g1-g2|| + ||f1-f2||)
/// on sampled sup-norms; pass allows relative slack for quadrature error.
LipschitzReport lipschitz_bound_check(const BoundedFunction& f1, const BoundedFunction& g1,
                                      const BoundedFunction& f2, const BoundedFunction& g2,
                                      Real l, Real r, const Grid& grid,
                                      Real tail_tol, Real quad_tol, Real slack = 1e-3);

/// Max difference quotient |T(t+h)-T(t)|/h over adjacent nodes; bounded by
/// ||f||_inf (||g||_inf / l + 1).
Real equicontinuity_modulus(const BoundedFunction& f, const BoundedFunction& g, Real l,
                            const Grid& grid, Real tail_tol, Real quad_tol);

}  // namespace boundedflow
