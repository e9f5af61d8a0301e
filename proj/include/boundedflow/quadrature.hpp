#pragma once

#include <functional>

#include "boundedflow/types.hpp"

namespace boundedflow {

using ScalarFn = std::function<Real(Real)>;

/// Composite Simpson with a fixed number of (even) intervals.
Real simpson(const ScalarFn& f, Real a, Real b, Index intervals);

/// Composite Simpson on uniform subgrids, halving the step until the
/// Richardson-style estimate |I_h - I_{h/2}| drops below quad_tol.
/// Throws ToleranceError (carrying the achieved estimate) if the budget of
/// halvings is exhausted first.
Real integrate_adaptive(const ScalarFn& f, Real a, Real b, Real quad_tol,
                        int max_halvings = 18, Index initial_intervals = 8);

}  // namespace boundedflow
