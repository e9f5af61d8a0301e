#include "boundedflow/function_core.hpp"

#include <cmath>
#include <vector>

namespace boundedflow {

Real convolve(const BoundedFunction& x, const L1Kernel& alpha, Real t, Real quad_tol) {
    if (!std::isfinite(alpha.radius) || !(alpha.radius > 0.0)) {
        throw ArgumentError("convolve: kernel radius must be finite and > 0");
    }
    return integrate_adaptive(
        [&x, &alpha, t](Real s) { return x(s) * alpha.evaluator(s - t); },
        t - alpha.radius, t + alpha.radius, quad_tol);
}

Real seminorm_01(const BoundedFunction& x, Real quad_tol) {
    return integrate_adaptive([&x](Real s) { return std::abs(x(s)); }, 0.0, 1.0, quad_tol);
}

Real ergodic_mean(const BoundedFunction& g, Real r, Real quad_tol) {
    if (!(r > 0.0)) throw ArgumentError("ergodic_mean: r must be > 0");
    const Real integral = integrate_adaptive([&g](Real s) { return std::abs(g(s)); }, -r, r,
                                             quad_tol * 2.0 * r);
    return integral / (2.0 * r);
}

std::optional<Real> epsilon_period_search(const BoundedFunction& f, Real eps, Real scan_lo,
                                          Real scan_hi, Real scan_step, Real window,
                                          Index samples) {
    if (!(eps > 0.0) || !(scan_lo < scan_hi) || !(window > 0.0) || !(scan_step > 0.0) ||
        samples < 2) {
        throw ArgumentError("epsilon_period_search: invalid arguments");
    }
    const Real dt = 2.0 * window / static_cast<Real>(samples - 1);
    std::vector<Real> base(static_cast<size_t>(samples));
    for (Index i = 0; i < samples; ++i) {
        base[static_cast<size_t>(i)] = f(-window + dt * static_cast<Real>(i));
    }
    for (Real tau = scan_lo; tau <= scan_hi; tau += scan_step) {
        Real worst = 0.0;
        for (Index i = 0; i < samples && worst < eps; ++i) {
            const Real t = -window + dt * static_cast<Real>(i);
            worst = std::max(worst, std::abs(f(t + tau) - base[static_cast<size_t>(i)]));
        }
        if (worst < eps) return tau;
    }
    return std::nullopt;
}

}  // namespace boundedflow
