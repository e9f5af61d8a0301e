#pragma once

#include "boundedflow/run_config.hpp"

namespace boundedflow {

// Exit codes shared by the CLI: 0 success, 2 config error, 3 hypothesis or
// condition violation, 4 non-convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr int kExitNoConvergence = 4;

/// Solves the fixed-point problem and writes solution.csv + report.json
/// (plus manifest.json). Returns 0 iff converged and residual within budget.
int cmd_solve(const RunConfig& config);

/// Runs the lemma-check corpus (unit mass, operator oracles, Lipschitz bound,
/// equicontinuity, derivative identity, periodicity preservation) and writes
/// verify.json. Returns 0 iff every check passes.
int cmd_verify(const RunConfig& config);

/// Solves, integrates perturbed trajectories and writes trajectories.csv +
/// attract.json. Returns 0 iff every decay report passes; 3 when lambda <= 0.
int cmd_attract(const RunConfig& config);

/// Compares declared hypothesis constants against probe estimates and writes
/// hypotheses.json. Returns 0 iff declared constants dominate the estimates
/// in the correct directions.
int cmd_hypotheses(const RunConfig& config);

}  // namespace boundedflow
