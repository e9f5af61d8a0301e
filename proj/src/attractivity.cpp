#include "boundedflow/attractivity.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace boundedflow {

namespace {

void require_pointwise(const Problem& p) {
    if (!p.F.is_pointwise_only() || !p.G.is_pointwise_only()) {
        throw UnsupportedProblem(
            "attractivity: problem '" + p.id +
            "' has nonlocal maps; the pointwise IVP is not defined for them");
    }
}

}  // namespace

Trajectory integrate_ivp(const Problem& p, Real t_start, Real x_start, Real t_end, Real h) {
    require_pointwise(p);
    if (!(h > 0.0) || !(t_end > t_start)) {
        throw ArgumentError("integrate_ivp: requires h > 0 and t_end > t_start");
    }
    const Real sign = p.sign == EquationSign::PlusG ? -1.0 : 1.0;
    auto rhs = [&](Real t, Real v) {
        return sign * eval_pointwise(p.G, v, t) * v + eval_pointwise(p.F, v, t);
    };

    const Index steps = static_cast<Index>(std::ceil((t_end - t_start) / h - 1e-9));
    Trajectory traj;
    traj.t_start = t_start;
    traj.h = h;
    traj.a_priori_bound = p.constants.r / p.constants.l + std::abs(x_start) + 1e-9;
    traj.states.resize(steps + 1);
    traj.states[0] = x_start;

    for (Index i = 0; i < steps; ++i) {
        const Real t = traj.time(i);
        const Real v = traj.states[i];
        const Real k1 = rhs(t, v);
        const Real k2 = rhs(t + h / 2.0, v + h / 2.0 * k1);
        const Real k3 = rhs(t + h / 2.0, v + h / 2.0 * k2);
        const Real k4 = rhs(t + h, v + h * k3);
        const Real next = v + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next)) {
            std::ostringstream msg;
            msg << "integrate_ivp: non-finite state at t = " << t + h;
            throw EvaluationError(msg.str());
        }
        traj.states[i + 1] = next;
        if (std::abs(next) > traj.a_priori_bound) traj.bound_violated = true;
    }
    return traj;
}

DecayReport lyapunov_decay_check(const Trajectory& traj, const GridFunction& x_star,
                                 Real lambda, Real slack, Real noise_floor) {
    const Grid& window = x_star.grid();
    const Real eps = 1e-9 * std::max(1.0, std::abs(window.t1));
    std::vector<Index> overlap;
    overlap.reserve(static_cast<size_t>(traj.size()));
    for (Index i = 0; i < traj.size(); ++i) {
        const Real t = traj.time(i);
        if (t >= window.t0 - eps && t <= window.t1 + eps) overlap.push_back(i);
    }
    if (overlap.size() < 3 || overlap.front() != 0) {
        throw ArgumentError(
            "lyapunov_decay_check: trajectory start must lie inside the solution window "
            "with at least three overlapping samples");
    }

    DecayReport report;
    report.lambda_used = lambda;
    report.W0 = std::abs(traj.states[0] - x_star(traj.time(0)));

    Real max_ratio = 0.0;
    bool envelope_ok = true;
    Real integral = 0.0;
    for (Index i : overlap) {
        const Real t = traj.time(i);
        const Real W = std::abs(traj.states[i] - x_star(t));
        integral += W * traj.h;
        if (i < 2) continue;  // transient exemption: first-step differencing noise
        const Real envelope = report.W0 * std::exp(-lambda * (t - traj.t_start));
        if (W > envelope * (1.0 + slack) + noise_floor) envelope_ok = false;
        if (envelope > 0.0) max_ratio = std::max(max_ratio, W / envelope);
    }
    report.max_ratio = max_ratio;
    report.pass = envelope_ok;
    report.integral_W = integral;
    const Real horizon =
        traj.time(overlap.back()) - traj.t_start;
    report.integral_bound = lambda > 0.0
        ? report.W0 / lambda * (1.0 + slack) + noise_floor * horizon
        : std::numeric_limits<Real>::infinity();
    report.integral_ok = integral <= report.integral_bound;
    return report;
}

AttractExperiment attract_experiment(const Problem& p, const Grid& solve_grid,
                                     std::span<const Real> perturbations, Real horizon,
                                     Real h, const SolverOptions& opts, Real slack,
                                     std::optional<Real> t_start_opt) {
    const Real lambda = attractivity_rate(p.constants);
    if (!(lambda > 0.0)) {
        std::ostringstream msg;
        msg << "attract_experiment: condition fails, lambda = " << lambda << " <= 0";
        throw ConditionViolation(msg.str());
    }
    require_pointwise(p);

    const Real t_start = t_start_opt.value_or(solve_grid.t0);
    if (t_start < solve_grid.t0 - 1e-12 ||
        t_start + horizon > solve_grid.t1 + 1e-12) {
        throw ArgumentError(
            "attract_experiment: [t_start, t_start + horizon] must lie inside the solve "
            "window");
    }

    AttractExperiment exp{solve_picard(p, solve_grid, opts)};
    exp.lambda = lambda;
    exp.t_start = t_start;
    const GridFunction& x_star = exp.solve.solution;
    for (Real delta : perturbations) {
        Trajectory traj =
            integrate_ivp(p, t_start, x_star(t_start) + delta, t_start + horizon, h);
        DecayReport report = lyapunov_decay_check(traj, x_star, lambda, slack);
        report.delta = delta;
        exp.reports.push_back(report);
        exp.trajectories.push_back(std::move(traj));
    }
    return exp;
}

}  // namespace boundedflow
