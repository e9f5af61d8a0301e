#include "boundedflow/catalog.hpp"

#include <cmath>

namespace boundedflow {

namespace {

using Trig = BoundedFunction::TrigTerm;

constexpr Real kPiHalf = 1.5707963267948966;
const Real kSqrt2 = std::sqrt(2.0);

// F(x,t) = (1/3)(sin t + sin(sqrt2 t) + (1+t^2)^{-1} (x*alpha)(t))
// G(x,t) = 3 + sin 2t + (1+t^2)^{-1} cos((x*beta)(t))
// box [-1, 1] for ||alpha||_1 = 1; existence via compactness, no contraction.
Problem make_ex0() {
    auto alpha = KernelSpec::triangular(1.0);
    auto beta = KernelSpec::triangular(1.0);
    // |x * alpha| <= box_abs * ||alpha||_1 = 1; sup declared with headroom
    // so slightly out-of-box iterates stay evaluable.
    auto F = MapDescriptor::scale(
        1.0 / 3.0,
        MapDescriptor::sum(
            {MapDescriptor::constant(
                 FunctionSpec::trig(0.0, {Trig{1.0, 1.0, 0.0}, Trig{1.0, kSqrt2, 0.0}})),
             MapDescriptor::convolution(alpha, PostFn::Identity, 1.5,
                                        FunctionSpec::runge(1.0))}));
    auto G = MapDescriptor::sum(
        {MapDescriptor::constant(FunctionSpec::trig(3.0, {Trig{1.0, 2.0, 0.0}})),
         MapDescriptor::convolution(beta, PostFn::Cos, 1.0, FunctionSpec::runge(1.0))});

    Problem p{F, G, HypothesisConstants{}, EquationSign::PlusG, "ex0"};
    p.constants.l = 1.0;
    p.constants.k = -1.0;
    p.constants.M = 1.0;
    p.constants.r = 1.0;          // (2 + 1)/3 over the box
    p.constants.L_F = 1.0 / 3.0;  // ||alpha||_1 / 3
    p.constants.L_G = 1.0;        // ||beta||_1
    return p;
}

// F(x,t) = 3 + sin ||x||_{0,1} + (1+t^2)^{-1} cos x(t)
// G(x,t) = exp(||x||_{0,1} + (1+t^2)^{-1} sin x(t))
// existence only; the exponential blows up the Lipschitz certificate.
Problem make_ex1() {
    const Real M = 5.0 * std::exp(1.0);
    auto F = MapDescriptor::sum(
        {MapDescriptor::constant(FunctionSpec::constant(3.0)),
         MapDescriptor::seminorm01(PostFn::Sin, 1.0),
         MapDescriptor::pointwise(PostFn::Cos, 1.0, FunctionSpec::runge(1.0))});
    auto G = MapDescriptor::exponential(MapDescriptor::sum(
        {MapDescriptor::seminorm01(PostFn::Identity, M + 1.0),
         MapDescriptor::pointwise(PostFn::Sin, 1.0, FunctionSpec::runge(1.0))}));

    Problem p{F, G, HypothesisConstants{}, EquationSign::PlusG, "ex1"};
    p.constants.l = std::exp(-1.0);
    p.constants.k = 0.0;
    p.constants.M = M;
    p.constants.r = 5.0;
    p.constants.L_F = F.lipschitz_bound();  // 2
    p.constants.L_G = G.lipschitz_bound();  // e^{M+2} * 2, far above 1
    return p;
}

// F(x,t) = 2 + sin t + cos x(t)
// G(x,t) = 4 + (1 + ||x||_{0,1})(1 + sin t)
// contraction: q = max(r/l^2, 1/l)(L_F + L_G) = 3/4.
Problem make_c2pi() {
    auto F = MapDescriptor::sum(
        {MapDescriptor::constant(FunctionSpec::trig(2.0, {Trig{1.0, 1.0, 0.0}})),
         MapDescriptor::pointwise(PostFn::Cos, 1.0, FunctionSpec::constant(1.0))});
    // seminorm sup declared as 1 (not the box edge 1/2) so evaluation keeps
    // working when iterates run past the declared box.
    auto G = MapDescriptor::sum(
        {MapDescriptor::constant(FunctionSpec::constant(4.0)),
         MapDescriptor::product(
             MapDescriptor::sum({MapDescriptor::constant(FunctionSpec::constant(1.0)),
                                 MapDescriptor::seminorm01(PostFn::Identity, 1.0)}),
             MapDescriptor::constant(FunctionSpec::trig(1.0, {Trig{1.0, 1.0, 0.0}})))});

    Problem p{F, G, HypothesisConstants{}, EquationSign::PlusG, "c2pi"};
    p.constants.l = 4.0;
    p.constants.k = 0.0;
    p.constants.M = 0.5;
    p.constants.r = 4.0;
    p.constants.L_F = 1.0;
    p.constants.L_G = 2.0;
    return p;
}

// F(x,t) = (1/10)(2 + cos t + (1+t^2)^{-1} sin x(t))
// G(x,t) = 4 + sin t + sin(sqrt2 t) + (1+t^2)^{-1} cos x(t)
// pointwise-only; attractivity rate lambda = 1 - 1 * 0.4 - 0.1 = 0.5.
Problem make_exatt() {
    auto F = MapDescriptor::scale(
        0.1, MapDescriptor::sum(
                 {MapDescriptor::constant(FunctionSpec::trig(2.0, {Trig{1.0, 1.0, kPiHalf}})),
                  MapDescriptor::pointwise(PostFn::Sin, 1.0, FunctionSpec::runge(1.0))}));
    auto G = MapDescriptor::sum(
        {MapDescriptor::constant(
             FunctionSpec::trig(4.0, {Trig{1.0, 1.0, 0.0}, Trig{1.0, kSqrt2, 0.0}})),
         MapDescriptor::pointwise(PostFn::Cos, 1.0, FunctionSpec::runge(1.0))});

    Problem p{F, G, HypothesisConstants{}, EquationSign::PlusG, "exatt"};
    p.constants.l = 1.0;
    p.constants.k = 0.0;
    p.constants.M = 0.4;
    p.constants.r = 0.4;
    p.constants.L_F = 0.1;
    p.constants.L_G = 1.0;
    return p;
}

}  // namespace

Problem make_problem(const std::string& id) {
    if (id == "ex0") return make_ex0();
    if (id == "ex1") return make_ex1();
    if (id == "c2pi") return make_c2pi();
    if (id == "exatt") return make_exatt();
    throw ConfigError("unknown problem id '" + id + "'");
}

std::vector<std::string> catalog_ids() { return {"ex0", "ex1", "c2pi", "exatt"}; }

}  // namespace boundedflow
