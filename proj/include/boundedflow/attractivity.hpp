#pragma once

#include <span>
#include <string>
#include <vector>

#include "boundedflow/picard.hpp"

namespace boundedflow {

/// A forward-in-time state history produced by the classical fourth-order
/// one-step method.
struct Trajectory {
    Real t_start = 0.0;
    Real h = 1e-3;
    Array states;
    std::string method = "rk4";
    Real a_priori_bound = 0.0;  // sup|F|/l + initial excursion
    bool bound_violated = false;

    Real time(Index i) const { return t_start + h * static_cast<Real>(i); }
    Index size() const { return states.size(); }
};

/// Integrates x' = -G(x(t),t) x + F(x(t),t) (sign per p.sign) with RK4.
/// Requires Pointwise-only descriptors: nonlocal maps have no pointwise IVP.
Trajectory integrate_ivp(const Problem& p, Real t_start, Real x_start, Real t_end, Real h);

struct DecayReport {
    Real delta = 0.0;        // the perturbation that produced the trajectory
    Real W0 = 0.0;           // |x(t_start) - x*(t_start)|
    Real lambda_used = 0.0;
    Real max_ratio = 0.0;    // max over t of W(t) / (W0 e^{-lambda (t - t_start)})
    bool pass = false;
    Real integral_W = 0.0;      // h * sum of W(t_i)
    Real integral_bound = 0.0;  // W0 / lambda * (1 + slack) + noise floor
    bool integral_ok = false;
};

/// Checks the Lyapunov decay W(t) = |x(t) - x*(t)| <= W0 e^{-lambda (t-t0)}
/// on the overlap of the trajectory with x*'s window. The envelope check
/// starts at t_start + 2h (first-step differencing noise) and carries an
/// absolute noise floor for the trivial-perturbation case W0 ~ 0, where the
/// relative envelope is meaningless. Also reports the integrated bound
/// h * sum W <= W0 / lambda.
DecayReport lyapunov_decay_check(const Trajectory& traj, const GridFunction& x_star,
                                 Real lambda, Real slack, Real noise_floor = 1e-5);

struct AttractExperiment {
    SolveReport solve;
    std::vector<Trajectory> trajectories;
    std::vector<DecayReport> reports;
    Real lambda = 0.0;
    Real t_start = 0.0;
};

/// Solves for x*, then integrates one perturbed trajectory per delta with
/// x_start = x*(t_start) + delta and checks the decay envelope. Requires
/// lambda > 0 (ConditionViolation otherwise, before any integration) and a
/// Pointwise-only problem.
AttractExperiment attract_experiment(const Problem& p, const Grid& solve_grid,
                                     std::span<const Real> perturbations, Real horizon,
                                     Real h, const SolverOptions& opts,
                                     Real slack = 0.05,
                                     std::optional<Real> t_start = std::nullopt);

}  // namespace boundedflow
