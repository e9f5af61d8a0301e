#include "boundedflow/picard.hpp"

#include <cmath>
#include <sstream>

namespace boundedflow {

namespace {

/// Working grid padded on the side the kernel integrates over: left for
/// x' + Gx = F, right for the reverse-time variant.
struct PaddedLayout {
    Grid padded;
    Index pad = 0;       // extra cells
    Index origin = 0;    // index of the requested grid's first node
};

PaddedLayout make_layout(const Problem& p, const Grid& grid, Real tail_tol) {
    const Real h = grid.step();
    const Real depth =
        TruncationPlan::for_bound(p.F.sup_bound(), p.constants.l, tail_tol).depth;
    const Index pad = static_cast<Index>(std::ceil(depth / h - 1e-12));
    PaddedLayout layout;
    layout.pad = pad;
    if (p.sign == EquationSign::PlusG) {
        layout.padded = Grid{grid.t0 - static_cast<Real>(pad) * h, grid.t1, grid.n + pad};
        layout.origin = pad;
    } else {
        layout.padded = Grid{grid.t0, grid.t1 + static_cast<Real>(pad) * h, grid.n + pad};
        layout.origin = 0;
    }
    return layout;
}

GridFunction apply_gamma(const Problem& p, const BoundedFunction& x_fn, const Grid& grid,
                         const Tolerances& tol, Real map_quad_tol,
                         const OperatorPlan* plan) {
    const BoundedFunction fx = apply_map(p.F, x_fn, map_quad_tol);
    const BoundedFunction gx = apply_map(p.G, x_fn, map_quad_tol);
    if (p.sign == EquationSign::PlusG) {
        return plan ? apply_T(fx, gx, p.constants.l, grid, tol.tail_tol, *plan)
                    : apply_T(fx, gx, p.constants.l, grid, tol.tail_tol, tol.quad_tol);
    }
    // Fixed points of x' - Gx = F are x = -Trev(F(x), G(x)).
    const BoundedFunction neg_fx = scaled(-1.0, fx);
    return plan ? apply_T_reverse(neg_fx, gx, p.constants.l, grid, tol.tail_tol, *plan)
                : apply_T_reverse(neg_fx, gx, p.constants.l, grid, tol.tail_tol,
                                  tol.quad_tol);
}

OperatorPlan make_plan(const Problem& p, const BoundedFunction& x_fn, const Grid& grid,
                       const Tolerances& tol, Real map_quad_tol) {
    const BoundedFunction fx = apply_map(p.F, x_fn, map_quad_tol);
    const BoundedFunction gx = apply_map(p.G, x_fn, map_quad_tol);
    if (p.sign == EquationSign::PlusG) {
        return plan_apply_T(fx, gx, p.constants.l, grid, tol.tail_tol, tol.quad_tol);
    }
    const Grid mirrored{-grid.t1, -grid.t0, grid.n};
    return plan_apply_T(reflected(scaled(-1.0, fx)), reflected(gx), p.constants.l, mirrored,
                        tol.tail_tol, tol.quad_tol);
}

}  // namespace

GridFunction gamma(const Problem& p, const GridFunction& x, const Grid& grid,
                   const Tolerances& tol, Real map_quad_tol) {
    return apply_gamma(p, x.as_bounded(), grid, tol, map_quad_tol, nullptr);
}

SolveReport solve_picard(const Problem& p, const Grid& grid, const SolverOptions& opts) {
    if (!grid.valid()) throw ArgumentError("solve_picard: invalid grid");
    if (!(opts.damping > 0.0) || opts.damping > 1.0) {
        throw ArgumentError("solve_picard: damping must lie in (0, 1]");
    }
    const HypothesisConstants& c = p.constants;
    if (!(c.l > 0.0) || !(c.k <= c.M)) {
        throw ArgumentError("solve_picard: requires l > 0 and k <= M");
    }

    const PaddedLayout layout = make_layout(p, grid, opts.tol.tail_tol);
    const Grid& P = layout.padded;
    const Real q = contraction_factor(c);
    const bool certified = q < 1.0;

    Array x(P.n);
    if (opts.x0) {
        for (Index i = 0; i < P.n; ++i) x[i] = (*opts.x0)(P.node(i));
    } else {
        x = Array::Constant(P.n, (c.k + c.M) / 2.0);
    }

    SolveReport report{GridFunction(grid, Array::Zero(grid.n)),
                       GridFunction(P, x)};
    report.q = q;

    Real theta = opts.damping;
    report.damping_used = theta;
    std::optional<OperatorPlan> plan;
    Real box_low = x.segment(layout.origin, grid.n).minCoeff();
    Real box_high = x.segment(layout.origin, grid.n).maxCoeff();
    bool converged_step = false;

    for (int it = 0; it < opts.max_iter; ++it) {
        const GridFunction current(P, x);
        const BoundedFunction x_fn = current.as_bounded();
        if (!plan) plan = make_plan(p, x_fn, P, opts.tol, opts.map_quad_tol);
        const GridFunction image =
            apply_gamma(p, x_fn, P, opts.tol, opts.map_quad_tol, &*plan);
        Array next = (1.0 - theta) * x + theta * image.values();
        const Real step = (next - x).abs().maxCoeff();
        report.step_norms.push_back(step);
        x = std::move(next);
        box_low = std::min(box_low, x.segment(layout.origin, grid.n).minCoeff());
        box_high = std::max(box_high, x.segment(layout.origin, grid.n).maxCoeff());

        // Damped fallback for problems without a contraction certificate:
        // two consecutive step-norm increases signal oscillation.
        if (!certified && theta == opts.damping && report.step_norms.size() >= 3) {
            const auto& s = report.step_norms;
            const size_t m = s.size();
            if (s[m - 1] > s[m - 2] && s[m - 2] > s[m - 3]) {
                theta = opts.damping / 2.0;
                report.damping_used = theta;
            }
        }

        if (step <= opts.tol.step_tol) {
            converged_step = true;
            break;
        }
    }

    report.iterations = static_cast<int>(report.step_norms.size());
    report.padded_solution = GridFunction(P, x);
    report.solution = report.padded_solution.restrict(layout.origin, grid.n);
    report.box_violation =
        std::max(0.0, std::max(c.k - box_low, box_high - c.M));
    report.residual = residual(p, report.padded_solution, opts.map_quad_tol);
    report.converged = converged_step && report.residual <= opts.tol.residual_tol;
    if (certified && !report.step_norms.empty()) {
        report.certified_error = q / (1.0 - q) * report.step_norms.back();
    }

    const Real eta = opts.tol.tail_tol * std::max({std::abs(c.k), std::abs(c.M), 1.0}) +
                     opts.tol.quad_tol;
    if (report.box_violation > eta) {
        std::ostringstream w;
        w << "box hypothesis violated: iterates reached [" << box_low << ", " << box_high
          << "] vs declared [" << c.k << ", " << c.M << "] (excursion "
          << report.box_violation << " > slack " << eta << ")";
        report.warning = w.str();
    }
    return report;
}

Real residual(const Problem& p, const GridFunction& x, Real map_quad_tol) {
    const Grid& grid = x.grid();
    if (grid.n < 5) throw ArgumentError("residual: needs at least 5 nodes");
    const BoundedFunction x_fn = x.as_bounded();
    const BoundedFunction fx = apply_map(p.F, x_fn, map_quad_tol);
    const BoundedFunction gx = apply_map(p.G, x_fn, map_quad_tol);
    const Real sign = p.sign == EquationSign::PlusG ? 1.0 : -1.0;
    const Array& v = x.values();
    const Real h = grid.step();
    Real worst = 0.0;
    for (Index i = 2; i + 2 < grid.n; ++i) {
        const Real d =
            (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / (12.0 * h);
        const Real t = grid.node(i);
        worst = std::max(worst, std::abs(d + sign * gx(t) * v[i] - fx(t)));
    }
    return worst;
}

std::optional<Real> certify(const SolveReport& report, const HypothesisConstants& c) {
    const Real q = contraction_factor(c);
    if (q >= 1.0 || report.step_norms.empty()) return std::nullopt;
    return q / (1.0 - q) * report.step_norms.back();
}

}  // namespace boundedflow
