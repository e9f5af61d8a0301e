#include "boundedflow/quadrature.hpp"

#include <cmath>

#include "boundedflow/errors.hpp"

namespace boundedflow {

Real simpson(const ScalarFn& f, Real a, Real b, Index intervals) {
    if (intervals < 2 || intervals % 2 != 0) {
        throw ArgumentError("simpson: interval count must be even and >= 2");
    }
    const Real h = (b - a) / static_cast<Real>(intervals);
    Real odd = 0.0;
    Real even = 0.0;
    for (Index i = 1; i < intervals; ++i) {
        const Real v = f(a + h * static_cast<Real>(i));
        if (i % 2 == 1) {
            odd += v;
        } else {
            even += v;
        }
    }
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

Real integrate_adaptive(const ScalarFn& f, Real a, Real b, Real quad_tol,
                        int max_halvings, Index initial_intervals) {
    if (!(a <= b)) throw ArgumentError("integrate_adaptive: requires a <= b");
    if (a == b) return 0.0;

    Index n = initial_intervals;
    if (n % 2 != 0) ++n;
    Real prev = simpson(f, a, b, n);
    Real estimate = std::abs(prev);
    for (int level = 0; level < max_halvings; ++level) {
        n *= 2;
        const Real cur = simpson(f, a, b, n);
        estimate = std::abs(cur - prev);
        if (!std::isfinite(cur)) {
            throw EvaluationError("integrate_adaptive: non-finite integral value");
        }
        if (estimate <= quad_tol) return cur;
        prev = cur;
    }
    throw ToleranceError("integrate_adaptive: tolerance " + std::to_string(quad_tol) +
                             " unreachable within subdivision budget",
                         estimate);
}

}  // namespace boundedflow
