#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "boundedflow/bounded_function.hpp"

#include <json.hpp>

namespace boundedflow {

/// Scalar post-composition applied to a nonlocal value (convolution result,
/// seminorm value) or to the state x(t) in a pointwise term.
enum class PostFn { Identity, Sin, Cos };

Real apply_post(PostFn p, Real v);
const char* post_name(PostFn p);
PostFn post_from_name(const std::string& name);

/// Construction recipe for the closed-form functions a descriptor may carry;
/// this is what makes a descriptor serializable.
struct FunctionSpec {
    std::string form = "constant";  // constant | trig | runge
    Real value = 0.0;               // constant
    Real amp = 0.0;                 // runge
    Real offset = 0.0;              // trig
    std::vector<BoundedFunction::TrigTerm> terms;  // trig

    static FunctionSpec constant(Real v);
    static FunctionSpec trig(Real offset, std::vector<BoundedFunction::TrigTerm> terms);
    static FunctionSpec runge(Real amp);

    BoundedFunction build() const;
    nlohmann::json to_json() const;
    static FunctionSpec from_json(const nlohmann::json& j);
};

/// Construction recipe for L1 kernels.
struct KernelSpec {
    std::string shape = "triangular";  // triangular | box | gaussian
    Real radius = 1.0;                 // triangular, box
    Real sigma = 1.0;                  // gaussian
    Real tail_tol = 1e-9;              // gaussian

    static KernelSpec triangular(Real radius);
    static KernelSpec box(Real radius);
    static KernelSpec gaussian(Real sigma, Real tail_tol);

    L1Kernel build() const;
    nlohmann::json to_json() const;
    static KernelSpec from_json(const nlohmann::json& j);
};

/// Declarative description of a nonlocal operator F or G on function space:
/// an expression tree over pointwise terms, convolution terms, the
/// ||.||_{0,1} seminorm, constants-in-x, and the combinators sum, product,
/// exp and scale. Every node carries a propagated Lipschitz constant
/// (sup-norm to sup-norm, valid on the declared input box) and a propagated
/// sup bound, both upper bounds for the sampled quantities.
class MapDescriptor {
public:
    // leaves (FunctionSpec overloads keep the tree serializable; raw
    // BoundedFunction overloads exist for tests and ad-hoc use)
    static MapDescriptor constant(FunctionSpec h);
    static MapDescriptor constant(BoundedFunction h);
    /// t -> amp * weight(t) * post(x(t)). For post = Identity the reachable
    /// |x| sup must be supplied (it depends on the input box).
    static MapDescriptor pointwise(PostFn post, Real amp, FunctionSpec weight,
                                   Real value_sup = 1.0);
    static MapDescriptor pointwise(PostFn post, Real amp, BoundedFunction weight,
                                   Real value_sup = 1.0);
    /// t -> weight(t) * post((x * kernel)(t)); post_sup bounds |post| over
    /// the reachable convolution range.
    static MapDescriptor convolution(KernelSpec kernel, PostFn post, Real post_sup,
                                     FunctionSpec weight);
    static MapDescriptor convolution(L1Kernel kernel, PostFn post, Real post_sup,
                                     BoundedFunction weight);
    /// post(||x||_{0,1}); post_sup bounds |post| over the reachable seminorm range.
    static MapDescriptor seminorm01(PostFn post, Real post_sup);

    // combinators
    static MapDescriptor sum(std::vector<MapDescriptor> terms);
    static MapDescriptor product(MapDescriptor a, MapDescriptor b);
    static MapDescriptor exponential(MapDescriptor arg);
    static MapDescriptor scale(Real c, MapDescriptor arg);

    /// Propagated Lipschitz constant in x (sup-to-sup).
    Real lipschitz_bound() const;
    /// Propagated sup bound over the declared input box.
    Real sup_bound() const;
    /// True when every leaf depends on x only through x(t) (no convolution
    /// or seminorm terms); the structural prerequisite for the pointwise
    /// attractivity condition.
    bool is_pointwise_only() const;

    /// Throws ArgumentError if the tree holds functions without a recipe.
    nlohmann::json to_json() const;
    static MapDescriptor from_json(const nlohmann::json& j);

    struct Node;
    explicit MapDescriptor(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const Node& node() const { return *node_; }

private:
    std::shared_ptr<const Node> node_;
};

/// Returns t -> m(x)(t) with the propagated sup bound. Convolution and
/// seminorm terms are evaluated through a per-call cache so repeated
/// evaluation at the same t does not redo quadrature; the returned function
/// must be used from one thread at a time.
BoundedFunction apply_map(const MapDescriptor& m, const BoundedFunction& x,
                          Real quad_tol = 1e-8);
/// Cache-free evaluation path, used to verify the cache is semantically invisible.
BoundedFunction apply_map_uncached(const MapDescriptor& m, const BoundedFunction& x,
                                   Real quad_tol = 1e-8);

/// Evaluates a Pointwise-only descriptor at (v, t) where v stands for x(t).
/// Throws UnsupportedProblem if the tree contains a nonlocal term.
Real eval_pointwise(const MapDescriptor& m, Real v, Real t);

/// The constants of the existence / uniqueness / attractivity hypotheses.
struct HypothesisConstants {
    Real l = 1.0;    // lower bound on G
    Real k = 0.0;    // box lower edge
    Real M = 1.0;    // box upper edge
    Real r = 1.0;    // sup of ||F(x)||_inf over the box
    Real L_F = 0.0;  // Lipschitz constant of F
    Real L_G = 0.0;  // Lipschitz constant of G
};

/// q = max(r/l^2, 1/l) * (L_F + L_G); q < 1 certifies contraction.
Real contraction_factor(const HypothesisConstants& c);

/// lambda = l - L_G * max(M, -k) - L_F; positive lambda certifies the
/// attractivity condition.
Real attractivity_rate(const HypothesisConstants& c);

/// Probe-based estimator settings. Probes are constants spanning the box,
/// box-clipped trig polynomials with random frequencies in [0.1, 5], and
/// box-clipped random grid functions.
struct EstimatorConfig {
    Real t_lo = -20.0;
    Real t_hi = 20.0;
    Index n_samples = 201;
    int n_probes = 24;
    std::uint64_t seed = 12345;
    Real quad_tol = 1e-6;
};

std::vector<BoundedFunction> make_probes(Real k, Real M, int count, Real t_lo, Real t_hi,
                                         std::uint64_t seed);

/// Min over probes and time samples of m(x)(t): an upper bound on the true
/// infimum. Certified runs use a user-declared analytic l instead.
Real estimate_inf(const MapDescriptor& m, Real k, Real M, const EstimatorConfig& cfg);

/// Max empirical quotient ||m(x)-m(y)|| / ||x-y|| over random probe pairs
/// (sampled sup-norms): a lower bound on the Lipschitz constant, dominated
/// by the propagated constant.
Real estimate_lipschitz(const MapDescriptor& m, Real k, Real M, int n_pairs,
                        const EstimatorConfig& cfg);

struct BoxReport {
    Real ratio_min = 0.0;
    Real ratio_max = 0.0;
    bool pass = false;
};

/// Checks k <= F(x,t)/G(x,t) <= M over probes and time samples; throws
/// HypothesisViolation when G(x,t) <= 0 is encountered.
BoxReport verify_box(const MapDescriptor& mF, const MapDescriptor& mG, Real k, Real M,
                     const EstimatorConfig& cfg);

}  // namespace boundedflow
