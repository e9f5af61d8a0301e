#include "boundedflow/exp_kernel.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "boundedflow/parallel.hpp"

namespace boundedflow {

namespace {

constexpr int kMaxRefine = 256;

void require_valid(const Grid& grid, Real l, Real tail_tol) {
    if (!grid.valid()) throw ArgumentError("apply_T: invalid grid");
    if (!(l > 0.0)) throw PreconditionViolation("apply_T: requires l > 0");
    if (!(tail_tol > 0.0)) throw ArgumentError("apply_T: requires tail_tol > 0");
}

/// Simpson weights for one truncated window of `intervals` fine cells,
/// scaled by hf/3. intervals must be even.
Array simpson_weights(Index intervals, Real hf) {
    Array w = Array::Constant(intervals + 1, 2.0);
    w[0] = 1.0;
    w[intervals] = 1.0;
    for (Index j = 1; j < intervals; j += 2) w[j] = 4.0;
    return w * (hf / 3.0);
}

/// One full evaluation of T(f,g) on the grid at a fixed refinement.
Array evaluate_T(const BoundedFunction& f, const BoundedFunction& g, Real l,
                 const Grid& grid, Index pad, int refine) {
    const Real h = grid.step();
    const Real hf = h / static_cast<Real>(refine);
    const Index window = pad * refine;             // fine cells per output
    const Index total = (pad + grid.n - 1) * refine;  // fine cells overall
    const Real left = grid.t0 - static_cast<Real>(pad) * h;

    const CumulativeIntegral cum(g, left, hf, total, l);
    const Array& gcum = cum.values();

    Array fv(total + 1);
    for (Index j = 0; j <= total; ++j) fv[j] = f(cum.node(j));

    if (window == 0) return Array::Zero(grid.n);

    const Array w = simpson_weights(window, hf);
    Array out(grid.n);
    parallel_for(0, grid.n, [&](Index i) {
        const Index hi = (pad + i) * refine;
        const Index lo = hi - window;
        const Real base = gcum[hi];
        Real acc = 0.0;
        for (Index j = lo; j <= hi; ++j) {
            acc += w[j - lo] * fv[j] * std::exp(gcum[j] - base);
        }
        out[i] = acc;
    });
    return out;
}

Index pad_cells_for(const BoundedFunction& f, Real l, Real tail_tol, Real h) {
    const Real depth = TruncationPlan::for_bound(f.sup_bound(), l, tail_tol).depth;
    return static_cast<Index>(std::ceil(depth / h - 1e-12));
}

GridFunction run_apply_T(const BoundedFunction& f, const BoundedFunction& g, Real l,
                         const Grid& grid, Real tail_tol, Real quad_tol,
                         const OperatorPlan* plan) {
    require_valid(grid, l, tail_tol);
    if (plan) {
        Array out = evaluate_T(f, g, l, grid, plan->pad_cells, plan->refine);
        return GridFunction(grid, std::move(out));
    }
    if (!(quad_tol > 0.0)) throw ArgumentError("apply_T: requires quad_tol > 0");
    const Index pad = pad_cells_for(f, l, tail_tol, grid.step());
    if (pad == 0) {
        // sup(f) <= l * tail_tol, so |T| <= tail_tol already
        return GridFunction(grid, Array::Zero(grid.n));
    }
    Array prev = evaluate_T(f, g, l, grid, pad, 2);
    Real estimate = 0.0;
    for (int refine = 4; refine <= kMaxRefine; refine *= 2) {
        Array cur = evaluate_T(f, g, l, grid, pad, refine);
        estimate = (cur - prev).abs().maxCoeff();
        if (estimate <= quad_tol) return GridFunction(grid, std::move(cur));
        prev = std::move(cur);
    }
    throw ToleranceError("apply_T: quadrature tolerance unreachable", estimate);
}

/// Shared mirror for the reverse operator:
/// Trev(f,g)(t) = T(f(-.), g(-.))(-t).
GridFunction mirror_reverse(const BoundedFunction& f, const BoundedFunction& g, Real l,
                            const Grid& grid, Real tail_tol, Real quad_tol,
                            const OperatorPlan* plan) {
    const Grid mirrored{-grid.t1, -grid.t0, grid.n};
    const GridFunction fwd = plan
        ? run_apply_T(reflected(f), reflected(g), l, mirrored, tail_tol, 0.0, plan)
        : run_apply_T(reflected(f), reflected(g), l, mirrored, tail_tol, quad_tol, nullptr);
    return GridFunction(grid, fwd.values().reverse());
}

}  // namespace

TruncationPlan TruncationPlan::for_bound(Real sup_f, Real l, Real tail_tol) {
    if (!(l > 0.0) || !(tail_tol > 0.0)) {
        throw ArgumentError("TruncationPlan: requires l > 0 and tail_tol > 0");
    }
    TruncationPlan plan{l, tail_tol, 0.0};
    if (sup_f > l * tail_tol) {
        plan.depth = std::log(sup_f / (l * tail_tol)) / l;
    }
    return plan;
}

CumulativeIntegral::CumulativeIntegral(const BoundedFunction& g, Real left, Real step,
                                       Index cells, Real l)
    : left_(left), step_(step) {
    if (cells < 1 || !(step > 0.0)) {
        throw ArgumentError("CumulativeIntegral: needs cells >= 1 and step > 0");
    }
    const Real floor = l * (1.0 - 1e-9);
    g_nodes_.resize(cells + 1);
    values_.resize(cells + 1);
    Array mids(cells);

    auto checked_g = [&](Real t) {
        const Real v = g(t);
        if (v < floor) {
            std::ostringstream msg;
            msg << "g(t) = " << v << " dips below l = " << l << " at t = " << t;
            throw PreconditionViolation(msg.str());
        }
        return v;
    };

    for (Index j = 0; j <= cells; ++j) g_nodes_[j] = checked_g(node(j));
    for (Index j = 0; j < cells; ++j) mids[j] = checked_g(node(j) + step / 2.0);

    values_[0] = 0.0;
    for (Index j = 0; j < cells; ++j) {
        const Real cell = step / 6.0 * (g_nodes_[j] + 4.0 * mids[j] + g_nodes_[j + 1]);
        values_[j + 1] = values_[j] + cell;
    }
}

OperatorPlan plan_apply_T(const BoundedFunction& f, const BoundedFunction& g, Real l,
                          const Grid& grid, Real tail_tol, Real quad_tol, Real safety) {
    require_valid(grid, l, tail_tol);
    if (!(quad_tol > 0.0)) throw ArgumentError("plan_apply_T: requires quad_tol > 0");
    const Real target = quad_tol * safety;
    const Index pad = pad_cells_for(f, l, tail_tol, grid.step());
    OperatorPlan plan{pad, 2, TruncationPlan::for_bound(f.sup_bound(), l, tail_tol).depth};
    if (pad == 0) return plan;
    Array prev = evaluate_T(f, g, l, grid, pad, 2);
    Real estimate = 0.0;
    for (int refine = 4; refine <= kMaxRefine; refine *= 2) {
        Array cur = evaluate_T(f, g, l, grid, pad, refine);
        estimate = (cur - prev).abs().maxCoeff();
        if (estimate <= target) {
            plan.refine = refine;
            return plan;
        }
        prev = std::move(cur);
    }
    throw ToleranceError("plan_apply_T: quadrature tolerance unreachable", estimate);
}

GridFunction apply_T(const BoundedFunction& f, const BoundedFunction& g, Real l,
                     const Grid& grid, Real tail_tol, Real quad_tol) {
    return run_apply_T(f, g, l, grid, tail_tol, quad_tol, nullptr);
}

GridFunction apply_T(const BoundedFunction& f, const BoundedFunction& g, Real l,
                     const Grid& grid, Real tail_tol, const OperatorPlan& plan) {
    return run_apply_T(f, g, l, grid, tail_tol, 0.0, &plan);
}

GridFunction apply_T_reverse(const BoundedFunction& f, const BoundedFunction& g, Real l,
                             const Grid& grid, Real tail_tol, Real quad_tol) {
    return mirror_reverse(f, g, l, grid, tail_tol, quad_tol, nullptr);
}

GridFunction apply_T_reverse(const BoundedFunction& f, const BoundedFunction& g, Real l,
                             const Grid& grid, Real tail_tol, const OperatorPlan& plan) {
    return mirror_reverse(f, g, l, grid, tail_tol, 0.0, &plan);
}

Real check_unit_mass(const BoundedFunction& g, Real l, Real t, Real tail_tol, Real quad_tol) {
    if (!(l > 0.0)) throw PreconditionViolation("check_unit_mass: requires l > 0");
    if (!(tail_tol > 0.0) || !(quad_tol > 0.0)) {
        throw ArgumentError("check_unit_mass: tolerances must be > 0");
    }
    // Tail of the mass integral below t - A is exp(-int_{t-A}^t g) <= e^{-lA}.
    const Real depth = std::log(1.0 / tail_tol) / l;
    if (depth <= 0.0) return 0.0;

    auto mass_at = [&](Index cells) {
        const Real hf = depth / static_cast<Real>(cells);
        const CumulativeIntegral cum(g, t - depth, hf, cells, l);
        const Array& gcum = cum.values();
        const Array& gv = cum.g_samples();
        const Real base = gcum[cells];
        const Array w = simpson_weights(cells, hf);
        Real acc = 0.0;
        for (Index j = 0; j <= cells; ++j) acc += w[j] * gv[j] * std::exp(gcum[j] - base);
        return acc;
    };

    Index cells = static_cast<Index>(std::ceil(depth / 0.25));
    if (cells % 2 != 0) ++cells;
    if (cells < 8) cells = 8;
    Real prev = mass_at(cells);
    Real estimate = 0.0;
    for (int level = 0; level < 16; ++level) {
        cells *= 2;
        const Real cur = mass_at(cells);
        estimate = std::abs(cur - prev);
        if (estimate <= quad_tol) return cur;
        prev = cur;
    }
    throw ToleranceError("check_unit_mass: quadrature tolerance unreachable", estimate);
}

Real derivative_identity_residual(const GridFunction& Tfg, const BoundedFunction& f,
                                  const BoundedFunction& g) {
    const Grid& grid = Tfg.grid();
    if (grid.n < 5) {
        throw ArgumentError("derivative_identity_residual: needs at least 5 nodes");
    }
    const Array& v = Tfg.values();
    const Real h = grid.step();
    Real worst = 0.0;
    for (Index i = 2; i + 2 < grid.n; ++i) {
        const Real d =
            (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / (12.0 * h);
        const Real t = grid.node(i);
        worst = std::max(worst, std::abs(d + g(t) * v[i] - f(t)));
    }
    return worst;
}

LipschitzReport lipschitz_bound_check(const BoundedFunction& f1, const BoundedFunction& g1,
                                      const BoundedFunction& f2, const BoundedFunction& g2,
                                      Real l, Real r, const Grid& grid, Real tail_tol,
                                      Real quad_tol, Real slack) {
    const Real bound_r = r * (1.0 + 1e-9);
    const Index probes = 2001;
    const Real depth = TruncationPlan::for_bound(std::max(f1.sup_bound(), f2.sup_bound()), l,
                                                 tail_tol)
                           .depth;
    const Real lo = grid.t0 - depth;
    if (sup_norm_estimate(f1, lo, grid.t1, probes) > bound_r ||
        sup_norm_estimate(f2, lo, grid.t1, probes) > bound_r) {
        throw PreconditionViolation("lipschitz_bound_check: ||f||_inf exceeds r");
    }

    const GridFunction T1 = apply_T(f1, g1, l, grid, tail_tol, quad_tol);
    const GridFunction T2 = apply_T(f2, g2, l, grid, tail_tol, quad_tol);

    LipschitzReport report;
    report.lhs = (T1.values() - T2.values()).abs().maxCoeff();
    const Real df = sup_norm_estimate(sum(f1, scaled(-1.0, f2)), lo, grid.t1, probes);
    const Real dg = sup_norm_estimate(sum(g1, scaled(-1.0, g2)), lo, grid.t1, probes);
    report.rhs = std::max(r / (l * l), 1.0 / l) * (df + dg);
    report.pass = report.lhs <= report.rhs * (1.0 + slack) + 1e-15;
    return report;
}

Real equicontinuity_modulus(const BoundedFunction& f, const BoundedFunction& g, Real l,
                            const Grid& grid, Real tail_tol, Real quad_tol) {
    const GridFunction T = apply_T(f, g, l, grid, tail_tol, quad_tol);
    const Array& v = T.values();
    const Real h = grid.step();
    Real worst = 0.0;
    for (Index i = 0; i + 1 < grid.n; ++i) {
        worst = std::max(worst, std::abs(v[i + 1] - v[i]) / h);
    }
    return worst;
}

}  // namespace boundedflow
