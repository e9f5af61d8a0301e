#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "boundedflow/picard.hpp"

namespace boundedflow {

/// Attractivity experiment settings.
struct AttractConfig {
    std::vector<Real> perturbations = {0.1, -0.1, 0.3};
    Real horizon = 20.0;
    Real h = 1e-3;
    Real slack = 0.05;
    std::optional<Real> t_start;  // defaults to grid.t0
};

/// Full run configuration; serializes to/from JSON and echoes into the
/// manifest so a run can be reproduced from its own output.
struct RunConfig {
    std::string problem = "c2pi";             // catalog id
    std::optional<nlohmann::json> problem_inline;  // inline Problem JSON
    Grid grid{-20.0, 20.0, 2001};
    Tolerances tol;
    int max_iter = 200;
    Real damping = 1.0;
    AttractConfig attract;
    std::string out_dir = "out";
    std::uint64_t seed = 12345;

    /// Throws ConfigError on invariant violations (t0 < t1, n >= 9,
    /// tolerances > 0, damping in (0,1]).
    void validate() const;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);

    Problem resolve_problem() const;
    SolverOptions solver_options() const;
};

nlohmann::json problem_to_json(const Problem& p);
Problem problem_from_json(const nlohmann::json& j);

/// Execution record: config echo, versions, stage timings, pass/fail per check.
struct RunManifest {
    nlohmann::json config_echo;
    std::string command;
    nlohmann::json timings_ms;
    nlohmann::json checks;

    nlohmann::json to_json() const;
};

}  // namespace boundedflow
