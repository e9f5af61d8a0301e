#include "boundedflow/bounded_function.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "boundedflow/quadrature.hpp"

namespace boundedflow {

namespace {

constexpr Real kSupSlack = 1e-12;

[[noreturn]] void throw_eval_error(const char* what, Real t, Real value) {
    std::ostringstream msg;
    msg << what << " at t = " << t << " (value " << value << ")";
    throw EvaluationError(msg.str());
}

}  // namespace

BoundedFunction::BoundedFunction()
    : eval_([](Real) { return 0.0; }), sup_(0.0), kind_(FunctionKind::ClosedForm) {}

BoundedFunction::BoundedFunction(std::function<Real(Real)> fn, Real sup_bound,
                                 FunctionKind kind)
    : eval_(std::move(fn)), sup_(sup_bound), kind_(kind) {
    if (!(sup_ >= 0.0) || !std::isfinite(sup_)) {
        throw ArgumentError("BoundedFunction: sup bound must be finite and >= 0");
    }
}

BoundedFunction BoundedFunction::closed_form(std::function<Real(Real)> fn, Real sup_bound) {
    return BoundedFunction(std::move(fn), sup_bound, FunctionKind::ClosedForm);
}

BoundedFunction BoundedFunction::constant(Real c) {
    return BoundedFunction([c](Real) { return c; }, std::abs(c), FunctionKind::ClosedForm);
}

BoundedFunction BoundedFunction::trig(Real offset, std::vector<TrigTerm> terms) {
    Real sup = std::abs(offset);
    for (const auto& term : terms) sup += std::abs(term.amp);
    auto fn = [offset, terms = std::move(terms)](Real t) {
        Real v = offset;
        for (const auto& term : terms) v += term.amp * std::sin(term.freq * t + term.phase);
        return v;
    };
    return BoundedFunction(std::move(fn), sup, FunctionKind::ClosedForm);
}

BoundedFunction BoundedFunction::runge(Real amp) {
    return BoundedFunction([amp](Real t) { return amp / (1.0 + t * t); }, std::abs(amp),
                           FunctionKind::ClosedForm);
}

Real BoundedFunction::operator()(Real t) const {
    const Real v = eval_(t);
    if (!std::isfinite(v)) throw_eval_error("non-finite evaluation", t, v);
    if (std::abs(v) > sup_ * (1.0 + kSupSlack)) {
        throw_eval_error("sup bound exceeded", t, v);
    }
    return v;
}

BoundedFunction sum(const BoundedFunction& a, const BoundedFunction& b) {
    auto ea = a.eval_;
    auto eb = b.eval_;
    return BoundedFunction([ea = std::move(ea), eb = std::move(eb)](
                               Real t) { return ea(t) + eb(t); },
                           a.sup_ + b.sup_, FunctionKind::Sum);
}

BoundedFunction product(const BoundedFunction& a, const BoundedFunction& b) {
    auto ea = a.eval_;
    auto eb = b.eval_;
    return BoundedFunction([ea = std::move(ea), eb = std::move(eb)](
                               Real t) { return ea(t) * eb(t); },
                           a.sup_ * b.sup_, FunctionKind::Product);
}

BoundedFunction scaled(Real c, const BoundedFunction& f) {
    auto ef = f.eval_;
    return BoundedFunction([c, ef = std::move(ef)](Real t) { return c * ef(t); },
                           std::abs(c) * f.sup_, FunctionKind::Scaled);
}

BoundedFunction reflected(const BoundedFunction& f) {
    auto ef = f.eval_;
    return BoundedFunction([ef = std::move(ef)](Real t) { return ef(-t); }, f.sup_, f.kind_);
}

Real sup_norm_estimate(const BoundedFunction& f, Real t0, Real t1, Index n) {
    if (!(t0 < t1) || n < 2) {
        throw ArgumentError("sup_norm_estimate: requires t0 < t1 and n >= 2");
    }
    const Real h = (t1 - t0) / static_cast<Real>(n - 1);
    Real best = 0.0;
    for (Index i = 0; i < n; ++i) {
        best = std::max(best, std::abs(f(t0 + h * static_cast<Real>(i))));
    }
    return best;
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(Grid grid, Array values, ExtensionRule extension, Real period)
    : grid_(grid), extension_(extension), period_(period) {
    if (!grid_.valid()) throw ArgumentError("GridFunction: invalid grid");
    if (values.size() != grid_.n) {
        throw ArgumentError("GridFunction: value count does not match grid");
    }
    if (!values.isFinite().all()) {
        throw EvaluationError("GridFunction: non-finite sample");
    }
    if (extension_ == ExtensionRule::Periodic) {
        if (!(period_ > 0.0)) throw ArgumentError("GridFunction: period must be > 0");
        if (grid_.t1 - grid_.t0 < period_ * (1.0 - 1e-12)) {
            throw ArgumentError("GridFunction: window shorter than the declared period");
        }
    }

    const Index n = grid_.n;
    const Real h = grid_.step();
    Array slopes(n);
    if (n == 2) {
        slopes[0] = slopes[1] = (values[1] - values[0]) / h;
    } else {
        for (Index i = 0; i < n; ++i) {
            if (i >= 2 && i + 2 < n) {
                slopes[i] = (-values[i + 2] + 8.0 * values[i + 1] - 8.0 * values[i - 1] +
                             values[i - 2]) /
                            (12.0 * h);
            } else if (i >= 1 && i + 1 < n) {
                slopes[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
            } else if (i == 0) {
                slopes[i] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
            } else {
                slopes[i] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) /
                            (2.0 * h);
            }
        }
    }
    values_ = std::make_shared<const Array>(std::move(values));
    slopes_ = std::make_shared<const Array>(std::move(slopes));
}

Real GridFunction::eval_inside(Real t) const {
    const Array& v = *values_;
    const Array& m = *slopes_;
    const Real h = grid_.step();
    Index i = static_cast<Index>(std::floor((t - grid_.t0) / h));
    if (i < 0) i = 0;
    if (i > grid_.n - 2) i = grid_.n - 2;
    const Real theta = (t - grid_.node(i)) / h;
    if (theta == 0.0) return v[i];
    const Real th2 = theta * theta;
    const Real th3 = th2 * theta;
    const Real h00 = 2.0 * th3 - 3.0 * th2 + 1.0;
    const Real h10 = th3 - 2.0 * th2 + theta;
    const Real h01 = -2.0 * th3 + 3.0 * th2;
    const Real h11 = th3 - th2;
    return h00 * v[i] + h10 * h * m[i] + h01 * v[i + 1] + h11 * h * m[i + 1];
}

Real GridFunction::operator()(Real t) const {
    if (t >= grid_.t0 && t <= grid_.t1) return eval_inside(t);
    if (extension_ == ExtensionRule::ClampEndpoint) {
        return t < grid_.t0 ? (*values_)[0] : (*values_)[grid_.n - 1];
    }
    // periodic wrap into [t0, t0 + period)
    const Real u = std::floor((t - grid_.t0) / period_);
    Real reduced = t - u * period_;
    if (reduced > grid_.t1) reduced = grid_.t1;  // FP guard at the wrap seam
    if (reduced < grid_.t0) reduced = grid_.t0;
    return eval_inside(reduced);
}

BoundedFunction GridFunction::as_bounded() const {
    // Hermite basis: |h10|, |h11| <= 4/27 on [0,1] and h00 + h01 = 1 with both
    // nonnegative, so within a cell the interpolant stays within the node
    // range plus h * 4/27 * (|m_i| + |m_{i+1}|).
    const Array& v = *values_;
    const Array& m = *slopes_;
    Real bound = 0.0;
    const Real h = grid_.step();
    for (Index i = 0; i + 1 < grid_.n; ++i) {
        const Real cell = std::max(std::abs(v[i]), std::abs(v[i + 1])) +
                          h * 0.15 * (std::abs(m[i]) + std::abs(m[i + 1]));
        bound = std::max(bound, cell);
    }
    auto self = *this;
    return BoundedFunction::closed_form([self = std::move(self)](Real t) { return self(t); },
                                        bound);
}

GridFunction GridFunction::restrict(Index lo_index, Index count) const {
    if (lo_index < 0 || count < 2 || lo_index + count > grid_.n) {
        throw ArgumentError("GridFunction::restrict: range out of bounds");
    }
    Grid sub{grid_.node(lo_index), grid_.node(lo_index + count - 1), count};
    return GridFunction(sub, values_->segment(lo_index, count), extension_, period_);
}

// ---------------------------------------------------------------------------
// L1Kernel

L1Kernel L1Kernel::checked(std::function<Real(Real)> evaluator, Real l1_norm, Real radius,
                           Real tail_tol, const std::string& name) {
    if (!(radius > 0.0)) throw ArgumentError("L1Kernel: radius must be > 0");
    if (!(l1_norm >= 0.0)) throw ArgumentError("L1Kernel: l1 norm must be >= 0");
    L1Kernel k{std::move(evaluator), l1_norm, radius, tail_tol};
    const Real inner = integrate_adaptive(
        [&k](Real u) { return std::abs(k.evaluator(u)); }, -radius, radius,
        std::max(1e-10, tail_tol * 1e-2));
    const Real eps = 1e-9 * std::max(1.0, l1_norm);
    if (inner > l1_norm + eps || l1_norm - inner > 2.0 * tail_tol + eps) {
        throw ArgumentError("L1Kernel '" + name + "': declared l1 norm " +
                            std::to_string(l1_norm) + " inconsistent with integral " +
                            std::to_string(inner));
    }
    return k;
}

L1Kernel L1Kernel::triangular(Real radius) {
    return checked(
        [radius](Real u) { return std::max(0.0, 1.0 - std::abs(u) / radius) / radius; }, 1.0,
        radius, 0.0, "triangular");
}

L1Kernel L1Kernel::box(Real radius) {
    const Real height = 1.0 / (2.0 * radius);
    return checked([radius, height](Real u) { return std::abs(u) <= radius ? height : 0.0; },
                   1.0, radius, 0.0, "box");
}

L1Kernel L1Kernel::gaussian(Real sigma, Real tail_tol) {
    if (!(sigma > 0.0)) throw ArgumentError("L1Kernel: sigma must be > 0");
    if (!(tail_tol > 0.0)) throw ArgumentError("L1Kernel: gaussian needs tail_tol > 0");
    // two-sided tail of the unit-mass gaussian: erfc(R / (sigma sqrt 2))
    Real radius = sigma;
    while (std::erfc(radius / (sigma * std::sqrt(2.0))) > tail_tol) radius += sigma * 0.5;
    const Real norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    return checked(
        [sigma, norm](Real u) { return norm * std::exp(-u * u / (2.0 * sigma * sigma)); },
        1.0, radius, tail_tol, "gaussian");
}

}  // namespace boundedflow
