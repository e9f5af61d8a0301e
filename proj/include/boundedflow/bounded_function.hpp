#pragma once

#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "boundedflow/errors.hpp"
#include "boundedflow/types.hpp"

namespace boundedflow {

enum class FunctionKind { ClosedForm, Grid, Sum, Product, Scaled };

/// An evaluable real function on the whole line together with a claimed
/// sup-norm bound. Evaluation is pure and deterministic; every call checks
/// finiteness and the declared bound.
class BoundedFunction {
public:
    BoundedFunction();  // the zero function

    static BoundedFunction closed_form(std::function<Real(Real)> fn, Real sup_bound);
    static BoundedFunction constant(Real c);
    /// offset + sum of amp*sin(freq*t + phase) terms; sup bound |offset| + sum|amp|.
    struct TrigTerm {
        Real amp;
        Real freq;
        Real phase;
    };
    static BoundedFunction trig(Real offset, std::vector<TrigTerm> terms);
    /// amp / (1 + t^2)
    static BoundedFunction runge(Real amp);

    /// Checked evaluation; throws EvaluationError on non-finite values or
    /// sup-bound violations beyond 1e-12 relative.
    Real operator()(Real t) const;

    Real sup_bound() const { return sup_; }
    FunctionKind kind() const { return kind_; }

    friend BoundedFunction sum(const BoundedFunction& a, const BoundedFunction& b);
    friend BoundedFunction product(const BoundedFunction& a, const BoundedFunction& b);
    friend BoundedFunction scaled(Real c, const BoundedFunction& f);
    /// f(-t), same bound.
    friend BoundedFunction reflected(const BoundedFunction& f);

private:
    BoundedFunction(std::function<Real(Real)> fn, Real sup_bound, FunctionKind kind);

    std::function<Real(Real)> eval_;
    Real sup_;
    FunctionKind kind_;
};

/// Spec-level alias for checked evaluation.
inline Real eval(const BoundedFunction& f, Real t) { return f(t); }

/// Max of |f| over n uniform samples on [t0, t1]; a lower bound for the true
/// sup-norm on the window.
Real sup_norm_estimate(const BoundedFunction& f, Real t0, Real t1, Index n);

enum class ExtensionRule { ClampEndpoint, Periodic };

/// Uniform samples on [t0, t1] with cubic Hermite interpolation
/// (finite-difference slopes, fourth order in the interior) and a documented
/// extension rule outside the window.
class GridFunction {
public:
    GridFunction(Grid grid, Array values,
                 ExtensionRule extension = ExtensionRule::ClampEndpoint,
                 Real period = 0.0);

    Real operator()(Real t) const;

    const Grid& grid() const { return grid_; }
    const Array& values() const { return *values_; }
    ExtensionRule extension() const { return extension_; }
    Real period() const { return period_; }
    Real max_abs() const { return values_->abs().maxCoeff(); }

    /// Wraps the interpolant as a BoundedFunction; the bound covers the
    /// Hermite overshoot between nodes.
    BoundedFunction as_bounded() const;

    /// Samples restricted to [lo_index, lo_index + count) as a new GridFunction.
    GridFunction restrict(Index lo_index, Index count) const;

private:
    Real eval_inside(Real t) const;

    Grid grid_;
    std::shared_ptr<const Array> values_;
    std::shared_ptr<const Array> slopes_;
    ExtensionRule extension_;
    Real period_;
};

/// An L1 kernel with explicit finite support radius; tail mass outside
/// [-radius, radius] is at most tail_tol. Construction verifies the declared
/// l1_norm against a numerical integral of |alpha|.
struct L1Kernel {
    std::function<Real(Real)> evaluator;
    Real l1_norm = 0.0;
    Real radius = 1.0;
    Real tail_tol = 0.0;

    static L1Kernel triangular(Real radius);       // hat kernel, mass 1
    static L1Kernel box(Real radius);              // indicator / (2 radius), mass 1
    static L1Kernel gaussian(Real sigma, Real tail_tol);  // mass 1 up to tail_tol

    static L1Kernel checked(std::function<Real(Real)> evaluator, Real l1_norm,
                            Real radius, Real tail_tol, const std::string& name);
};

}  // namespace boundedflow
