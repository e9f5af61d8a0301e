#include "boundedflow/commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "boundedflow/attractivity.hpp"
#include "boundedflow/catalog.hpp"
#include "boundedflow/exp_kernel.hpp"
#include "boundedflow/io.hpp"

namespace boundedflow {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Trig = BoundedFunction::TrigTerm;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void write_manifest(const RunConfig& config, const std::string& command,
                    nlohmann::json timings, nlohmann::json checks) {
    RunManifest manifest;
    manifest.config_echo = config.to_json();
    manifest.command = command;
    manifest.timings_ms = std::move(timings);
    manifest.checks = std::move(checks);
    write_file_atomic(fs::path(config.out_dir) / "manifest.json",
                      manifest.to_json().dump(2) + "\n");
}

nlohmann::json solve_report_json(const Problem& p, const SolveReport& r,
                                 const RunConfig& config) {
    nlohmann::json j;
    j["problem"] = p.id;
    j["grid"] = {{"t0", config.grid.t0}, {"t1", config.grid.t1}, {"n", config.grid.n}};
    j["contraction_factor"] = r.q;
    j["iterations"] = r.iterations;
    j["step_norms"] = r.step_norms;
    j["residual"] = r.residual;
    j["box_violation"] = r.box_violation;
    if (r.certified_error) {
        j["certified_error"] = *r.certified_error;
    } else {
        j["certified_error"] = nullptr;
    }
    j["converged"] = r.converged;
    j["damping_used"] = r.damping_used;
    j["warning"] = r.warning;
    j["solution_min"] = r.solution.values().minCoeff();
    j["solution_max"] = r.solution.values().maxCoeff();
    return j;
}

std::string solution_csv(const GridFunction& solution) {
    std::ostringstream csv;
    csv << "t,x\n";
    const Grid& grid = solution.grid();
    const Array& v = solution.values();
    for (Index i = 0; i < grid.n; ++i) {
        csv << format_real(grid.node(i)) << "," << format_real(v[i]) << "\n";
    }
    return csv.str();
}

struct Check {
    std::string name;
    Real measured;
    Real bound;
    bool pass;
};

nlohmann::json checks_json(const std::vector<Check>& checks) {
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"measured", c.measured},
                       {"bound", c.bound},
                       {"pass", c.pass}});
    }
    return arr;
}

/// The fixed corpus driven by cmd_verify; returns one entry per lemma check.
std::vector<Check> run_verify_corpus(const Tolerances& tol, std::uint64_t seed) {
    std::vector<Check> checks;
    auto push = [&checks](std::string name, Real measured, Real bound) {
        checks.push_back({std::move(name), measured, bound, measured <= bound});
    };

    const BoundedFunction sine = BoundedFunction::trig(0.0, {Trig{1.0, 1.0, 0.0}});
    const BoundedFunction one = BoundedFunction::constant(1.0);
    const BoundedFunction zero = BoundedFunction::constant(0.0);

    // Lemma: unit kernel mass for admissible g at randomized t.
    {
        std::mt19937_64 rng(seed);
        auto uniform_t = [&rng] {
            return -50.0 + 100.0 * (static_cast<Real>(rng() >> 11) * 0x1.0p-53);
        };
        const std::vector<std::pair<std::string, BoundedFunction>> corpus = {
            {"const_1", one},
            {"const_3", BoundedFunction::constant(3.0)},
            {"sin_shift", BoundedFunction::trig(3.0, {Trig{1.0, 2.0, 0.0}})},
            {"ex0_G_at_zero",
             sum(BoundedFunction::trig(3.0, {Trig{1.0, 2.0, 0.0}}),
                 BoundedFunction::runge(1.0))},
        };
        Real worst = 0.0;
        for (const auto& [name, g] : corpus) {
            const Real l = name == "const_1" ? 1.0 : 2.0;
            for (int i = 0; i < 20; ++i) {
                const Real mass =
                    check_unit_mass(g, l, uniform_t(), tol.tail_tol, tol.quad_tol);
                worst = std::max(worst, std::abs(mass - 1.0));
            }
        }
        push("unit_mass_deviation", worst, tol.tail_tol + tol.quad_tol);
    }

    // Operator oracles against closed forms.
    {
        const Grid grid{-10.0, 10.0, 2001};
        const GridFunction T = apply_T(sine, one, 1.0, grid, tol.tail_tol, tol.quad_tol);
        Real worst = 0.0;
        for (Index i = 0; i < grid.n; ++i) {
            const Real t = grid.node(i);
            worst = std::max(worst,
                             std::abs(T.values()[i] - (std::sin(t) - std::cos(t)) / 2.0));
        }
        push("apply_T_sin_oracle", worst, 2.0 * (tol.tail_tol + tol.quad_tol));

        const BoundedFunction cosine = BoundedFunction::trig(0.0, {Trig{1.0, 1.0, 1.5707963267948966}});
        const GridFunction R = apply_T_reverse(cosine, BoundedFunction::constant(2.0), 2.0,
                                               grid, tol.tail_tol, tol.quad_tol);
        worst = 0.0;
        for (Index i = 0; i < grid.n; ++i) {
            const Real t = grid.node(i);
            worst = std::max(
                worst, std::abs(R.values()[i] - (2.0 * std::cos(t) - std::sin(t)) / 5.0));
        }
        push("apply_T_reverse_cos_oracle", worst, 2.0 * (tol.tail_tol + tol.quad_tol));
    }

    // Lemma: operator Lipschitz bound on random trig pairs (r = 2, l = 1).
    {
        std::mt19937_64 rng(seed ^ 0xabcdef1234567890ull);
        auto uni = [&rng](Real lo, Real hi) {
            return lo + (hi - lo) * (static_cast<Real>(rng() >> 11) * 0x1.0p-53);
        };
        auto random_f = [&](Real r) {
            std::vector<Trig> terms;
            Real total = 0.0;
            for (int j = 0; j < 3; ++j) {
                terms.push_back({uni(-1.0, 1.0), uni(0.1, 5.0), uni(0.0, 6.28318)});
                total += std::abs(terms.back().amp);
            }
            const Real scale_to = r * uni(0.3, 1.0) / total;
            for (auto& term : terms) term.amp *= scale_to;
            return BoundedFunction::trig(0.0, terms);
        };
        auto random_g = [&](Real l) {
            // l + sum b_j (1 + sin(...)), b_j >= 0 keeps g >= l
            std::vector<Trig> terms;
            Real offset = l;
            for (int j = 0; j < 2; ++j) {
                const Real b = uni(0.0, 1.0);
                terms.push_back({b, uni(0.1, 5.0), uni(0.0, 6.28318)});
                offset += b;
            }
            return BoundedFunction::trig(offset, terms);
        };
        const Grid grid{-5.0, 5.0, 201};
        Real worst_ratio = 0.0;
        bool all_pass = true;
        for (int trial = 0; trial < 20; ++trial) {
            const auto report = lipschitz_bound_check(random_f(2.0), random_g(1.0),
                                                      random_f(2.0), random_g(1.0), 1.0, 2.0,
                                                      grid, tol.tail_tol, tol.quad_tol,
                                                      tol.slack);
            all_pass = all_pass && report.pass;
            if (report.rhs > 0.0) {
                worst_ratio = std::max(worst_ratio, report.lhs / report.rhs);
            }
        }
        checks.push_back({"lipschitz_T_worst_ratio", worst_ratio, 1.0 + tol.slack, all_pass});
    }

    // Lemma: equicontinuity modulus bounds.
    {
        const Grid grid{-10.0, 10.0, 2001};
        const Real mod =
            equicontinuity_modulus(sine, one, 1.0, grid, tol.tail_tol, tol.quad_tol);
        push("equicontinuity_sin", mod, 1.0 * (1.0 / 1.0 + 1.0) * (1.0 + tol.slack));
        const Real mod0 =
            equicontinuity_modulus(zero, one, 1.0, grid, tol.tail_tol, tol.quad_tol);
        push("equicontinuity_zero_f", mod0, 1e-12);
    }

    // Differentiability identity and its fourth-order decay.
    {
        auto residual_at = [&](Real h) {
            const Index n = static_cast<Index>(std::llround(10.0 / h)) + 1;
            const Grid grid{-5.0, 5.0, n};
            const GridFunction T = apply_T(sine, one, 1.0, grid, 1e-10, 1e-10);
            return derivative_identity_residual(T, sine, one);
        };
        const Real r1 = residual_at(0.2);
        const Real r2 = residual_at(0.1);
        const Real r3 = residual_at(0.05);
        push("derivative_identity_sin", r3,
             10.0 * (tol.tail_tol + tol.quad_tol) + std::pow(0.05, 4));
        const Real worst_factor = std::min(r1 / r2, r2 / r3);
        checks.push_back(
            {"derivative_identity_order", worst_factor, 12.0, worst_factor >= 12.0});
    }

    // Periodicity preservation on a period-commensurate grid.
    {
        const Real period = 2.0 * std::numbers::pi;
        const Index half = 800;
        const Grid grid{0.0, 2.0 * period, 2 * half + 1};
        const BoundedFunction f =
            BoundedFunction::trig(0.0, {Trig{0.5, 1.0, 0.0}, Trig{0.3, 2.0, 0.7}});
        const BoundedFunction g =
            BoundedFunction::trig(2.5, {Trig{0.5, 1.0, 0.3}, Trig{0.5, 3.0, 0.0}});
        const GridFunction T = apply_T(f, g, 1.5, grid, tol.tail_tol, tol.quad_tol);
        Real worst = 0.0;
        for (Index i = 0; i <= half; ++i) {
            worst = std::max(worst, std::abs(T.values()[i + half] - T.values()[i]));
        }
        push("periodicity_preservation", worst, 10.0 * (tol.tail_tol + tol.quad_tol));
    }

    // f = 0 maps to the zero function exactly.
    {
        const Grid grid{-5.0, 5.0, 201};
        const GridFunction T = apply_T(zero, one, 1.0, grid, tol.tail_tol, tol.quad_tol);
        push("zero_f_maps_to_zero", T.values().abs().maxCoeff(), 1e-15);
    }

    return checks;
}

}  // namespace

int cmd_solve(const RunConfig& config) {
    config.validate();
    const auto start = Clock::now();
    const Problem problem = config.resolve_problem();
    const SolveReport report = solve_picard(problem, config.grid, config.solver_options());
    const double solve_ms = ms_since(start);

    write_file_atomic(fs::path(config.out_dir) / "solution.csv",
                      solution_csv(report.solution));
    write_file_atomic(fs::path(config.out_dir) / "report.json",
                      solve_report_json(problem, report, config).dump(2) + "\n");

    const bool residual_ok = report.residual <= config.tol.residual_tol;
    write_manifest(config, "solve", {{"solve", solve_ms}},
                   {{"converged", report.converged},
                    {"residual_ok", residual_ok},
                    {"box_ok", report.warning.empty()}});
    if (!report.warning.empty()) std::cerr << "warning: " << report.warning << "\n";
    return report.converged && residual_ok ? kExitOk : kExitNoConvergence;
}

int cmd_verify(const RunConfig& config) {
    config.validate();
    const auto start = Clock::now();
    const auto checks = run_verify_corpus(config.tol, config.seed);
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;

    nlohmann::json j{{"checks", checks_json(checks)}, {"pass", all}};
    write_file_atomic(fs::path(config.out_dir) / "verify.json", j.dump(2) + "\n");
    write_manifest(config, "verify", {{"verify", ms_since(start)}}, {{"all_checks", all}});
    return all ? kExitOk : kExitHypothesis;
}

int cmd_attract(const RunConfig& config) {
    config.validate();
    const Problem problem = config.resolve_problem();
    const Real lambda = attractivity_rate(problem.constants);
    if (!(lambda > 0.0)) {
        std::cerr << "attract: condition fails, lambda = " << lambda << " <= 0\n";
        return kExitHypothesis;
    }

    const auto start = Clock::now();
    const AttractExperiment exp = attract_experiment(
        problem, config.grid, config.attract.perturbations, config.attract.horizon,
        config.attract.h, config.solver_options(), config.attract.slack,
        config.attract.t_start);
    const double total_ms = ms_since(start);

    // trajectories.csv: t, x_star, then one column per perturbation
    std::ostringstream csv;
    csv << "t,x_star";
    for (size_t k = 0; k < exp.reports.size(); ++k) csv << ",x_delta_" << k;
    csv << "\n";
    if (!exp.trajectories.empty()) {
        const Index rows = exp.trajectories.front().size();
        for (Index i = 0; i < rows; ++i) {
            const Real t = exp.trajectories.front().time(i);
            csv << format_real(t) << "," << format_real(exp.solve.solution(t));
            for (const auto& traj : exp.trajectories) csv << "," << format_real(traj.states[i]);
            csv << "\n";
        }
    }
    write_file_atomic(fs::path(config.out_dir) / "trajectories.csv", csv.str());

    bool all = true;
    auto reports = nlohmann::json::array();
    for (const auto& r : exp.reports) {
        all = all && r.pass;
        reports.push_back({{"delta", r.delta},
                           {"W0", r.W0},
                           {"lambda", r.lambda_used},
                           {"max_ratio", r.max_ratio},
                           {"pass", r.pass},
                           {"integral_W", r.integral_W},
                           {"integral_bound", r.integral_bound},
                           {"integral_ok", r.integral_ok}});
    }
    nlohmann::json j{{"problem", problem.id},
                     {"lambda", exp.lambda},
                     {"t_start", exp.t_start},
                     {"horizon", config.attract.horizon},
                     {"reports", reports},
                     {"solve_converged", exp.solve.converged},
                     {"pass", all}};
    write_file_atomic(fs::path(config.out_dir) / "attract.json", j.dump(2) + "\n");
    write_manifest(config, "attract", {{"attract", total_ms}},
                   {{"all_decays", all}, {"solve_converged", exp.solve.converged}});
    return all ? kExitOk : kExitHypothesis;
}

int cmd_hypotheses(const RunConfig& config) {
    config.validate();
    const auto start = Clock::now();
    const Problem problem = config.resolve_problem();
    const HypothesisConstants& c = problem.constants;

    EstimatorConfig est;
    est.t_lo = config.grid.t0;
    est.t_hi = config.grid.t1;
    est.n_samples = 201;
    est.n_probes = 24;
    est.seed = config.seed;
    est.quad_tol = 1e-6;

    const Real inf_G = estimate_inf(problem.G, c.k, c.M, est);
    const Real lip_F = estimate_lipschitz(problem.F, c.k, c.M, 200, est);
    const Real lip_G = estimate_lipschitz(problem.G, c.k, c.M, 200, est);
    const BoxReport box = verify_box(problem.F, problem.G, c.k, c.M, est);

    // empirical sup of |F(x)| over the probe family
    Real sup_F = 0.0;
    {
        const auto probes = make_probes(c.k, c.M, est.n_probes, est.t_lo, est.t_hi, est.seed);
        const Real dt = (est.t_hi - est.t_lo) / static_cast<Real>(est.n_samples - 1);
        for (const auto& x : probes) {
            const BoundedFunction fx = apply_map(problem.F, x, est.quad_tol);
            for (Index i = 0; i < est.n_samples; ++i) {
                sup_F = std::max(sup_F, std::abs(fx(est.t_lo + dt * static_cast<Real>(i))));
            }
        }
    }

    const bool l_ok = inf_G >= c.l * (1.0 - 1e-9) - 1e-12;
    const bool lf_ok = lip_F <= c.L_F * (1.0 + 1e-6) + 1e-12;
    const bool lg_ok = lip_G <= c.L_G * (1.0 + 1e-6) + 1e-12;
    const bool r_ok = sup_F <= c.r * (1.0 + 1e-6) + 1e-12;
    const bool all = l_ok && lf_ok && lg_ok && r_ok && box.pass;

    nlohmann::json j{
        {"problem", problem.id},
        {"declared",
         {{"l", c.l},
          {"k", c.k},
          {"M", c.M},
          {"r", c.r},
          {"L_F", c.L_F},
          {"L_G", c.L_G},
          {"q", contraction_factor(c)},
          {"lambda", attractivity_rate(c)}}},
        {"estimated",
         {{"inf_G", inf_G},
          {"lip_F", lip_F},
          {"lip_G", lip_G},
          {"sup_F", sup_F},
          {"ratio_min", box.ratio_min},
          {"ratio_max", box.ratio_max}}},
        {"dominance",
         {{"l_ok", l_ok},
          {"L_F_ok", lf_ok},
          {"L_G_ok", lg_ok},
          {"r_ok", r_ok},
          {"box_ok", box.pass}}},
        {"pass", all}};
    write_file_atomic(fs::path(config.out_dir) / "hypotheses.json", j.dump(2) + "\n");
    write_manifest(config, "hypotheses", {{"hypotheses", ms_since(start)}},
                   {{"dominance", all}});
    return all ? kExitOk : kExitHypothesis;
}

}  // namespace boundedflow
