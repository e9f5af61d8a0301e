#include "boundedflow/run_config.hpp"

#include "boundedflow/catalog.hpp"
#include "boundedflow/io.hpp"

namespace boundedflow {

namespace {

nlohmann::json constants_to_json(const HypothesisConstants& c) {
    return {{"l", c.l},   {"k", c.k},     {"M", c.M},
            {"r", c.r},   {"L_F", c.L_F}, {"L_G", c.L_G}};
}

HypothesisConstants constants_from_json(const nlohmann::json& j) {
    HypothesisConstants c;
    c.l = j.at("l").get<Real>();
    c.k = j.at("k").get<Real>();
    c.M = j.at("M").get<Real>();
    c.r = j.at("r").get<Real>();
    c.L_F = j.at("L_F").get<Real>();
    c.L_G = j.at("L_G").get<Real>();
    return c;
}

}  // namespace

nlohmann::json problem_to_json(const Problem& p) {
    return {{"F", p.F.to_json()},
            {"G", p.G.to_json()},
            {"constants", constants_to_json(p.constants)},
            {"sign", p.sign == EquationSign::PlusG ? "plus_G" : "minus_G"},
            {"id", p.id}};
}

Problem problem_from_json(const nlohmann::json& j) {
    const std::string sign = j.value("sign", "plus_G");
    if (sign != "plus_G" && sign != "minus_G") {
        throw ConfigError("problem sign must be plus_G or minus_G");
    }
    return Problem{MapDescriptor::from_json(j.at("F")), MapDescriptor::from_json(j.at("G")),
                   constants_from_json(j.at("constants")),
                   sign == "plus_G" ? EquationSign::PlusG : EquationSign::MinusG,
                   j.value("id", std::string("inline"))};
}

void RunConfig::validate() const {
    if (!(grid.t0 < grid.t1)) throw ConfigError("grid: requires t0 < t1");
    if (grid.n < 9) throw ConfigError("grid: requires n >= 9");
    if (!(tol.tail_tol > 0.0) || !(tol.quad_tol > 0.0) || !(tol.step_tol > 0.0) ||
        !(tol.residual_tol > 0.0) || !(tol.slack > 0.0)) {
        throw ConfigError("tolerances must all be > 0");
    }
    if (!(damping > 0.0) || damping > 1.0) throw ConfigError("damping must lie in (0, 1]");
    if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
    if (!(attract.h > 0.0) || !(attract.horizon > 0.0)) {
        throw ConfigError("attract: requires h > 0 and horizon > 0");
    }
    if (!problem_inline) {
        // resolves or throws ConfigError for unknown ids
        (void)make_problem(problem);
    }
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    if (problem_inline) {
        j["problem_inline"] = *problem_inline;
    } else {
        j["problem"] = problem;
    }
    j["grid"] = {{"t0", grid.t0}, {"t1", grid.t1}, {"n", grid.n}};
    j["tolerances"] = {{"tail", tol.tail_tol},
                       {"quad", tol.quad_tol},
                       {"step", tol.step_tol},
                       {"residual", tol.residual_tol},
                       {"slack", tol.slack}};
    j["max_iter"] = max_iter;
    j["damping"] = damping;
    nlohmann::json a{{"perturbations", attract.perturbations},
                     {"horizon", attract.horizon},
                     {"h", attract.h},
                     {"slack", attract.slack}};
    if (attract.t_start) a["t_start"] = *attract.t_start;
    j["attract"] = a;
    j["out"] = out_dir;
    j["seed"] = seed;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    try {
        if (j.contains("problem_inline")) {
            cfg.problem_inline = j.at("problem_inline");
            cfg.problem = "inline";
        } else if (j.contains("problem")) {
            cfg.problem = j.at("problem").get<std::string>();
        }
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            cfg.grid.t0 = g.value("t0", cfg.grid.t0);
            cfg.grid.t1 = g.value("t1", cfg.grid.t1);
            cfg.grid.n = g.value("n", cfg.grid.n);
        }
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            cfg.tol.tail_tol = t.value("tail", cfg.tol.tail_tol);
            cfg.tol.quad_tol = t.value("quad", cfg.tol.quad_tol);
            cfg.tol.step_tol = t.value("step", cfg.tol.step_tol);
            cfg.tol.residual_tol = t.value("residual", cfg.tol.residual_tol);
            cfg.tol.slack = t.value("slack", cfg.tol.slack);
        }
        cfg.max_iter = j.value("max_iter", cfg.max_iter);
        cfg.damping = j.value("damping", cfg.damping);
        if (j.contains("attract")) {
            const auto& a = j.at("attract");
            if (a.contains("perturbations")) {
                cfg.attract.perturbations =
                    a.at("perturbations").get<std::vector<Real>>();
            }
            cfg.attract.horizon = a.value("horizon", cfg.attract.horizon);
            cfg.attract.h = a.value("h", cfg.attract.h);
            cfg.attract.slack = a.value("slack", cfg.attract.slack);
            if (a.contains("t_start")) cfg.attract.t_start = a.at("t_start").get<Real>();
        }
        cfg.out_dir = j.value("out", cfg.out_dir);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

Problem RunConfig::resolve_problem() const {
    if (problem_inline) {
        try {
            return problem_from_json(*problem_inline);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("malformed inline problem: ") + e.what());
        }
    }
    return make_problem(problem);
}

SolverOptions RunConfig::solver_options() const {
    SolverOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.damping = damping;
    return opts;
}

nlohmann::json RunManifest::to_json() const {
    return {{"command", command},
            {"config", config_echo},
            {"versions", {{"boundedflow", kVersion}, {"eigen", EIGEN_WORLD_VERSION * 10000 +
                                                                   EIGEN_MAJOR_VERSION * 100 +
                                                                   EIGEN_MINOR_VERSION}}},
            {"timings_ms", timings_ms},
            {"checks", checks}};
}

}  // namespace boundedflow
