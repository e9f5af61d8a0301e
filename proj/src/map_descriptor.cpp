#include "boundedflow/map_descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>
#include <utility>

#include "boundedflow/function_core.hpp"

namespace boundedflow {

namespace {

// Headroom on nonlocal leaf sup bounds; their values carry leaf quadrature
// error, which the declared analytic bound does not know about.
constexpr Real kLeafSupHeadroom = 1e-6;

Real uniform01(std::mt19937_64& rng) {
    return static_cast<Real>(rng() >> 11) * 0x1.0p-53;
}

Real uniform(std::mt19937_64& rng, Real lo, Real hi) {
    return lo + (hi - lo) * uniform01(rng);
}

}  // namespace

Real apply_post(PostFn p, Real v) {
    switch (p) {
        case PostFn::Identity: return v;
        case PostFn::Sin: return std::sin(v);
        case PostFn::Cos: return std::cos(v);
    }
    throw ArgumentError("apply_post: unknown post function");
}

const char* post_name(PostFn p) {
    switch (p) {
        case PostFn::Identity: return "identity";
        case PostFn::Sin: return "sin";
        case PostFn::Cos: return "cos";
    }
    throw ArgumentError("post_name: unknown post function");
}

PostFn post_from_name(const std::string& name) {
    if (name == "identity") return PostFn::Identity;
    if (name == "sin") return PostFn::Sin;
    if (name == "cos") return PostFn::Cos;
    throw ConfigError("unknown post function '" + name + "'");
}

// ---------------------------------------------------------------------------
// FunctionSpec / KernelSpec

FunctionSpec FunctionSpec::constant(Real v) {
    FunctionSpec s;
    s.form = "constant";
    s.value = v;
    return s;
}

FunctionSpec FunctionSpec::trig(Real offset, std::vector<BoundedFunction::TrigTerm> terms) {
    FunctionSpec s;
    s.form = "trig";
    s.offset = offset;
    s.terms = std::move(terms);
    return s;
}

FunctionSpec FunctionSpec::runge(Real amp) {
    FunctionSpec s;
    s.form = "runge";
    s.amp = amp;
    return s;
}

BoundedFunction FunctionSpec::build() const {
    if (form == "constant") return BoundedFunction::constant(value);
    if (form == "trig") return BoundedFunction::trig(offset, terms);
    if (form == "runge") return BoundedFunction::runge(amp);
    throw ConfigError("unknown function form '" + form + "'");
}

nlohmann::json FunctionSpec::to_json() const {
    nlohmann::json j{{"form", form}};
    if (form == "constant") {
        j["value"] = value;
    } else if (form == "runge") {
        j["amp"] = amp;
    } else if (form == "trig") {
        j["offset"] = offset;
        auto arr = nlohmann::json::array();
        for (const auto& t : terms) {
            arr.push_back({{"amp", t.amp}, {"freq", t.freq}, {"phase", t.phase}});
        }
        j["terms"] = arr;
    } else {
        throw ConfigError("unknown function form '" + form + "'");
    }
    return j;
}

FunctionSpec FunctionSpec::from_json(const nlohmann::json& j) {
    FunctionSpec s;
    s.form = j.at("form").get<std::string>();
    if (s.form == "constant") {
        s.value = j.at("value").get<Real>();
    } else if (s.form == "runge") {
        s.amp = j.at("amp").get<Real>();
    } else if (s.form == "trig") {
        s.offset = j.value("offset", 0.0);
        for (const auto& t : j.at("terms")) {
            s.terms.push_back({t.at("amp").get<Real>(), t.at("freq").get<Real>(),
                               t.value("phase", 0.0)});
        }
    } else {
        throw ConfigError("unknown function form '" + s.form + "'");
    }
    return s;
}

KernelSpec KernelSpec::triangular(Real radius) {
    KernelSpec s;
    s.shape = "triangular";
    s.radius = radius;
    return s;
}

KernelSpec KernelSpec::box(Real radius) {
    KernelSpec s;
    s.shape = "box";
    s.radius = radius;
    return s;
}

KernelSpec KernelSpec::gaussian(Real sigma, Real tail_tol) {
    KernelSpec s;
    s.shape = "gaussian";
    s.sigma = sigma;
    s.tail_tol = tail_tol;
    return s;
}

L1Kernel KernelSpec::build() const {
    if (shape == "triangular") return L1Kernel::triangular(radius);
    if (shape == "box") return L1Kernel::box(radius);
    if (shape == "gaussian") return L1Kernel::gaussian(sigma, tail_tol);
    throw ConfigError("unknown kernel shape '" + shape + "'");
}

nlohmann::json KernelSpec::to_json() const {
    if (shape == "gaussian") {
        return {{"shape", shape}, {"sigma", sigma}, {"tail_tol", tail_tol}};
    }
    return {{"shape", shape}, {"radius", radius}};
}

KernelSpec KernelSpec::from_json(const nlohmann::json& j) {
    KernelSpec s;
    s.shape = j.at("shape").get<std::string>();
    if (s.shape == "gaussian") {
        s.sigma = j.at("sigma").get<Real>();
        s.tail_tol = j.value("tail_tol", 1e-9);
    } else {
        s.radius = j.at("radius").get<Real>();
    }
    return s;
}

// ---------------------------------------------------------------------------
// Node

struct MapDescriptor::Node {
    enum class Kind { Const, Pointwise, Convolution, Seminorm, Sum, Product, Exp, Scale };

    Kind kind = Kind::Const;
    // leaf payloads
    BoundedFunction h;       // Const value / Pointwise & Convolution weight
    std::optional<FunctionSpec> h_spec;
    PostFn post = PostFn::Identity;
    Real amp = 1.0;          // Pointwise amplitude; Scale factor
    Real post_sup = 1.0;
    std::optional<L1Kernel> kernel;
    std::optional<KernelSpec> kernel_spec;
    // children
    std::vector<MapDescriptor> children;
    // propagated constants
    Real lip = 0.0;
    Real sup = 0.0;
};

namespace {

using Node = MapDescriptor::Node;
using Kind = Node::Kind;

MapDescriptor wrap(Node&& n) {
    return MapDescriptor(std::make_shared<const Node>(std::move(n)));
}

/// Per-apply_map cache; keyed by node address (the tree is immutable).
struct EvalContext {
    Real quad_tol = 1e-8;
    bool use_cache = true;
    std::unordered_map<const Node*, Real> seminorm_values;
    std::unordered_map<const Node*, std::unordered_map<Real, Real>> conv_values;
};

Real eval_node(const Node& nd, const BoundedFunction& x, Real t, EvalContext& ctx) {
    switch (nd.kind) {
        case Kind::Const:
            return nd.h(t);
        case Kind::Pointwise:
            return nd.amp * nd.h(t) * apply_post(nd.post, x(t));
        case Kind::Convolution: {
            Real conv = 0.0;
            if (ctx.use_cache) {
                auto& per_node = ctx.conv_values[&nd];
                auto it = per_node.find(t);
                if (it != per_node.end()) {
                    conv = it->second;
                } else {
                    conv = convolve(x, *nd.kernel, t, ctx.quad_tol);
                    per_node.emplace(t, conv);
                }
            } else {
                conv = convolve(x, *nd.kernel, t, ctx.quad_tol);
            }
            return nd.h(t) * apply_post(nd.post, conv);
        }
        case Kind::Seminorm: {
            Real s = 0.0;
            if (ctx.use_cache) {
                auto it = ctx.seminorm_values.find(&nd);
                if (it != ctx.seminorm_values.end()) {
                    s = it->second;
                } else {
                    s = seminorm_01(x, ctx.quad_tol);
                    ctx.seminorm_values.emplace(&nd, s);
                }
            } else {
                s = seminorm_01(x, ctx.quad_tol);
            }
            return apply_post(nd.post, s);
        }
        case Kind::Sum: {
            Real acc = 0.0;
            for (const auto& c : nd.children) acc += eval_node(c.node(), x, t, ctx);
            return acc;
        }
        case Kind::Product:
            return eval_node(nd.children[0].node(), x, t, ctx) *
                   eval_node(nd.children[1].node(), x, t, ctx);
        case Kind::Exp:
            return std::exp(eval_node(nd.children[0].node(), x, t, ctx));
        case Kind::Scale:
            return nd.amp * eval_node(nd.children[0].node(), x, t, ctx);
    }
    throw ArgumentError("eval_node: unknown node kind");
}

bool pointwise_only(const Node& nd) {
    switch (nd.kind) {
        case Kind::Convolution:
        case Kind::Seminorm:
            return false;
        case Kind::Const:
        case Kind::Pointwise:
            return true;
        default:
            for (const auto& c : nd.children) {
                if (!pointwise_only(c.node())) return false;
            }
            return true;
    }
}

Real eval_pointwise_node(const Node& nd, Real v, Real t) {
    switch (nd.kind) {
        case Kind::Const:
            return nd.h(t);
        case Kind::Pointwise:
            return nd.amp * nd.h(t) * apply_post(nd.post, v);
        case Kind::Convolution:
        case Kind::Seminorm:
            throw UnsupportedProblem(
                "eval_pointwise: descriptor contains a nonlocal term");
        case Kind::Sum: {
            Real acc = 0.0;
            for (const auto& c : nd.children) acc += eval_pointwise_node(c.node(), v, t);
            return acc;
        }
        case Kind::Product:
            return eval_pointwise_node(nd.children[0].node(), v, t) *
                   eval_pointwise_node(nd.children[1].node(), v, t);
        case Kind::Exp:
            return std::exp(eval_pointwise_node(nd.children[0].node(), v, t));
        case Kind::Scale:
            return nd.amp * eval_pointwise_node(nd.children[0].node(), v, t);
    }
    throw ArgumentError("eval_pointwise: unknown node kind");
}

nlohmann::json node_to_json(const Node& nd) {
    switch (nd.kind) {
        case Kind::Const: {
            if (!nd.h_spec) throw ArgumentError("to_json: constant has no recipe");
            return {{"kind", "const"}, {"fn", nd.h_spec->to_json()}};
        }
        case Kind::Pointwise: {
            if (!nd.h_spec) throw ArgumentError("to_json: pointwise weight has no recipe");
            nlohmann::json j{{"kind", "pointwise"},
                             {"post", post_name(nd.post)},
                             {"amp", nd.amp},
                             {"weight", nd.h_spec->to_json()}};
            if (nd.post == PostFn::Identity) j["value_sup"] = nd.post_sup;
            return j;
        }
        case Kind::Convolution: {
            if (!nd.h_spec || !nd.kernel_spec) {
                throw ArgumentError("to_json: convolution term has no recipe");
            }
            return {{"kind", "convolution"},
                    {"post", post_name(nd.post)},
                    {"post_sup", nd.post_sup},
                    {"kernel", nd.kernel_spec->to_json()},
                    {"weight", nd.h_spec->to_json()}};
        }
        case Kind::Seminorm:
            return {{"kind", "seminorm01"},
                    {"post", post_name(nd.post)},
                    {"post_sup", nd.post_sup}};
        case Kind::Sum: {
            auto arr = nlohmann::json::array();
            for (const auto& c : nd.children) arr.push_back(node_to_json(c.node()));
            return {{"kind", "sum"}, {"terms", arr}};
        }
        case Kind::Product:
            return {{"kind", "product"},
                    {"factors", nlohmann::json::array({node_to_json(nd.children[0].node()),
                                                       node_to_json(nd.children[1].node())})}};
        case Kind::Exp:
            return {{"kind", "exp"}, {"arg", node_to_json(nd.children[0].node())}};
        case Kind::Scale:
            return {{"kind", "scale"},
                    {"factor", nd.amp},
                    {"arg", node_to_json(nd.children[0].node())}};
    }
    throw ArgumentError("to_json: unknown node kind");
}

}  // namespace

// ---------------------------------------------------------------------------
// factories

MapDescriptor MapDescriptor::constant(BoundedFunction h) {
    Node n;
    n.kind = Kind::Const;
    n.sup = h.sup_bound();
    n.h = std::move(h);
    n.lip = 0.0;
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::constant(FunctionSpec spec) {
    auto d = constant(spec.build());
    Node n = d.node();
    n.h_spec = std::move(spec);
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::pointwise(PostFn post, Real amp, BoundedFunction weight,
                                       Real value_sup) {
    Node n;
    n.kind = Kind::Pointwise;
    n.post = post;
    n.amp = amp;
    n.post_sup = post == PostFn::Identity ? value_sup : 1.0;
    n.lip = std::abs(amp) * weight.sup_bound();  // sin, cos, id are 1-Lipschitz
    n.sup = std::abs(amp) * weight.sup_bound() * n.post_sup;
    n.h = std::move(weight);
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::pointwise(PostFn post, Real amp, FunctionSpec weight,
                                       Real value_sup) {
    auto d = pointwise(post, amp, weight.build(), value_sup);
    Node n = d.node();
    n.h_spec = std::move(weight);
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::convolution(L1Kernel kernel, PostFn post, Real post_sup,
                                         BoundedFunction weight) {
    Node n;
    n.kind = Kind::Convolution;
    n.post = post;
    n.post_sup = post == PostFn::Identity ? post_sup : std::min(post_sup, 1.0);
    n.lip = weight.sup_bound() * kernel.l1_norm;
    n.sup = weight.sup_bound() * (n.post_sup + kLeafSupHeadroom);
    n.kernel = std::move(kernel);
    n.h = std::move(weight);
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::convolution(KernelSpec kernel, PostFn post, Real post_sup,
                                         FunctionSpec weight) {
    auto d = convolution(kernel.build(), post, post_sup, weight.build());
    Node n = d.node();
    n.kernel_spec = std::move(kernel);
    n.h_spec = std::move(weight);
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::seminorm01(PostFn post, Real post_sup) {
    Node n;
    n.kind = Kind::Seminorm;
    n.post = post;
    n.post_sup = post == PostFn::Identity ? post_sup : std::min(post_sup, 1.0);
    n.lip = 1.0;  // | ||x|| - ||y|| | <= ||x - y||_{0,1} <= ||x - y||_inf
    n.sup = n.post_sup + kLeafSupHeadroom;
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::sum(std::vector<MapDescriptor> terms) {
    if (terms.empty()) throw ArgumentError("MapDescriptor::sum: needs at least one term");
    Node n;
    n.kind = Kind::Sum;
    for (const auto& t : terms) {
        n.lip += t.lipschitz_bound();
        n.sup += t.sup_bound();
    }
    n.children = std::move(terms);
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::product(MapDescriptor a, MapDescriptor b) {
    Node n;
    n.kind = Kind::Product;
    // bounded-times-Lipschitz rule on the declared box
    n.lip = a.sup_bound() * b.lipschitz_bound() + b.sup_bound() * a.lipschitz_bound();
    n.sup = a.sup_bound() * b.sup_bound();
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::exponential(MapDescriptor arg) {
    Node n;
    n.kind = Kind::Exp;
    n.lip = std::exp(arg.sup_bound()) * arg.lipschitz_bound();
    n.sup = std::exp(arg.sup_bound());
    n.children.push_back(std::move(arg));
    return wrap(std::move(n));
}

MapDescriptor MapDescriptor::scale(Real c, MapDescriptor arg) {
    Node n;
    n.kind = Kind::Scale;
    n.amp = c;
    n.lip = std::abs(c) * arg.lipschitz_bound();
    n.sup = std::abs(c) * arg.sup_bound();
    n.children.push_back(std::move(arg));
    return wrap(std::move(n));
}

Real MapDescriptor::lipschitz_bound() const { return node_->lip; }
Real MapDescriptor::sup_bound() const { return node_->sup; }
bool MapDescriptor::is_pointwise_only() const { return pointwise_only(*node_); }

nlohmann::json MapDescriptor::to_json() const { return node_to_json(*node_); }

MapDescriptor MapDescriptor::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "const") return constant(FunctionSpec::from_json(j.at("fn")));
    if (kind == "pointwise") {
        return pointwise(post_from_name(j.at("post").get<std::string>()),
                         j.value("amp", 1.0), FunctionSpec::from_json(j.at("weight")),
                         j.value("value_sup", 1.0));
    }
    if (kind == "convolution") {
        return convolution(KernelSpec::from_json(j.at("kernel")),
                           post_from_name(j.at("post").get<std::string>()),
                           j.value("post_sup", 1.0), FunctionSpec::from_json(j.at("weight")));
    }
    if (kind == "seminorm01") {
        return seminorm01(post_from_name(j.at("post").get<std::string>()),
                          j.value("post_sup", 1.0));
    }
    if (kind == "sum") {
        std::vector<MapDescriptor> terms;
        for (const auto& t : j.at("terms")) terms.push_back(from_json(t));
        return sum(std::move(terms));
    }
    if (kind == "product") {
        const auto& factors = j.at("factors");
        if (factors.size() != 2) throw ConfigError("product: expects two factors");
        return product(from_json(factors[0]), from_json(factors[1]));
    }
    if (kind == "exp") return exponential(from_json(j.at("arg")));
    if (kind == "scale") return scale(j.at("factor").get<Real>(), from_json(j.at("arg")));
    throw ConfigError("unknown descriptor kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

BoundedFunction make_applied(const MapDescriptor& m, const BoundedFunction& x, Real quad_tol,
                             bool use_cache) {
    auto ctx = std::make_shared<EvalContext>();
    ctx->quad_tol = quad_tol;
    ctx->use_cache = use_cache;
    auto evaluator = [m, x, ctx](Real t) { return eval_node(m.node(), x, t, *ctx); };
    return BoundedFunction::closed_form(std::move(evaluator), m.sup_bound());
}

}  // namespace

BoundedFunction apply_map(const MapDescriptor& m, const BoundedFunction& x, Real quad_tol) {
    return make_applied(m, x, quad_tol, true);
}

BoundedFunction apply_map_uncached(const MapDescriptor& m, const BoundedFunction& x,
                                   Real quad_tol) {
    return make_applied(m, x, quad_tol, false);
}

Real eval_pointwise(const MapDescriptor& m, Real v, Real t) {
    return eval_pointwise_node(m.node(), v, t);
}

// ---------------------------------------------------------------------------
// hypothesis constants

Real contraction_factor(const HypothesisConstants& c) {
    if (!(c.l > 0.0)) throw ArgumentError("contraction_factor: requires l > 0");
    return std::max(c.r / (c.l * c.l), 1.0 / c.l) * (c.L_F + c.L_G);
}

Real attractivity_rate(const HypothesisConstants& c) {
    return c.l - c.L_G * std::max(c.M, -c.k) - c.L_F;
}

// ---------------------------------------------------------------------------
// probe estimators

std::vector<BoundedFunction> make_probes(Real k, Real M, int count, Real t_lo, Real t_hi,
                                         std::uint64_t seed) {
    if (!(k <= M)) throw ArgumentError("make_probes: requires k <= M");
    std::mt19937_64 rng(seed);
    const Real box_abs = std::max(std::abs(k), std::abs(M));
    std::vector<BoundedFunction> probes;
    probes.reserve(static_cast<size_t>(count));

    auto clipped = [k, M](std::function<Real(Real)> fn) {
        return [k, M, fn = std::move(fn)](Real t) { return std::clamp(fn(t), k, M); };
    };

    for (int i = 0; i < count; ++i) {
        if (i == 0) {
            probes.push_back(BoundedFunction::constant(k));
        } else if (i == 1) {
            probes.push_back(BoundedFunction::constant(M));
        } else if (i == 2) {
            probes.push_back(BoundedFunction::constant((k + M) / 2.0));
        } else if (i % 2 == 1) {
            // clipped trig polynomial with random frequencies in [0.1, 5]
            const Real c0 = uniform(rng, k, M);
            const Real span = (M - k) / 2.0;
            std::vector<BoundedFunction::TrigTerm> terms;
            for (int j = 0; j < 3; ++j) {
                terms.push_back({uniform(rng, -span, span), uniform(rng, 0.1, 5.0),
                                 uniform(rng, 0.0, 6.283185307179586)});
            }
            auto trig = BoundedFunction::trig(c0, std::move(terms));
            probes.push_back(BoundedFunction::closed_form(
                clipped([trig](Real t) { return trig(t); }), box_abs));
        } else {
            // box-clipped random grid function
            const Index nodes = 33;
            Array values(nodes);
            for (Index j = 0; j < nodes; ++j) values[j] = uniform(rng, k, M);
            GridFunction gf({t_lo, t_hi, nodes}, std::move(values));
            probes.push_back(BoundedFunction::closed_form(
                clipped([gf](Real t) { return gf(t); }), box_abs));
        }
    }
    return probes;
}

Real estimate_inf(const MapDescriptor& m, Real k, Real M, const EstimatorConfig& cfg) {
    const auto probes = make_probes(k, M, cfg.n_probes, cfg.t_lo, cfg.t_hi, cfg.seed);
    const Real dt = (cfg.t_hi - cfg.t_lo) / static_cast<Real>(cfg.n_samples - 1);
    Real best = std::numeric_limits<Real>::infinity();
    for (const auto& x : probes) {
        const BoundedFunction mx = apply_map(m, x, cfg.quad_tol);
        for (Index i = 0; i < cfg.n_samples; ++i) {
            best = std::min(best, mx(cfg.t_lo + dt * static_cast<Real>(i)));
        }
    }
    return best;
}

Real estimate_lipschitz(const MapDescriptor& m, Real k, Real M, int n_pairs,
                        const EstimatorConfig& cfg) {
    if (n_pairs < 1) throw ArgumentError("estimate_lipschitz: needs n_pairs >= 1");
    const int pool = std::max(cfg.n_probes, 8);
    const auto probes = make_probes(k, M, pool, cfg.t_lo, cfg.t_hi, cfg.seed);
    const Real dt = (cfg.t_hi - cfg.t_lo) / static_cast<Real>(cfg.n_samples - 1);

    // each probe's image sampled once, lazily
    std::vector<std::optional<Array>> images(probes.size());
    std::vector<std::optional<Array>> samples(probes.size());
    auto sampled = [&](size_t idx, bool image) -> const Array& {
        auto& slot = image ? images[idx] : samples[idx];
        if (!slot) {
            Array a(cfg.n_samples);
            if (image) {
                const BoundedFunction mx = apply_map(m, probes[idx], cfg.quad_tol);
                for (Index i = 0; i < cfg.n_samples; ++i) {
                    a[i] = mx(cfg.t_lo + dt * static_cast<Real>(i));
                }
            } else {
                for (Index i = 0; i < cfg.n_samples; ++i) {
                    a[i] = probes[idx](cfg.t_lo + dt * static_cast<Real>(i));
                }
            }
            slot = std::move(a);
        }
        return *slot;
    };

    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    Real best = 0.0;
    for (int p = 0; p < n_pairs; ++p) {
        const size_t i = static_cast<size_t>(rng() % probes.size());
        size_t j = static_cast<size_t>(rng() % probes.size());
        if (i == j) j = (j + 1) % probes.size();
        const Real denom = (sampled(i, false) - sampled(j, false)).abs().maxCoeff();
        if (denom < 1e-12) continue;  // degenerate pair
        const Real numer = (sampled(i, true) - sampled(j, true)).abs().maxCoeff();
        best = std::max(best, numer / denom);
    }
    return best;
}

BoxReport verify_box(const MapDescriptor& mF, const MapDescriptor& mG, Real k, Real M,
                     const EstimatorConfig& cfg) {
    if (!(k <= M)) throw ArgumentError("verify_box: requires k <= M");
    const auto probes = make_probes(k, M, cfg.n_probes, cfg.t_lo, cfg.t_hi, cfg.seed);
    const Real dt = (cfg.t_hi - cfg.t_lo) / static_cast<Real>(cfg.n_samples - 1);
    BoxReport report;
    report.ratio_min = std::numeric_limits<Real>::infinity();
    report.ratio_max = -std::numeric_limits<Real>::infinity();
    for (const auto& x : probes) {
        const BoundedFunction fx = apply_map(mF, x, cfg.quad_tol);
        const BoundedFunction gx = apply_map(mG, x, cfg.quad_tol);
        for (Index i = 0; i < cfg.n_samples; ++i) {
            const Real t = cfg.t_lo + dt * static_cast<Real>(i);
            const Real gv = gx(t);
            if (gv <= 0.0) {
                throw HypothesisViolation("verify_box: G(x,t) <= 0 at t = " +
                                          std::to_string(t));
            }
            const Real ratio = fx(t) / gv;
            report.ratio_min = std::min(report.ratio_min, ratio);
            report.ratio_max = std::max(report.ratio_max, ratio);
        }
    }
    const Real eps_k = 1e-12 * std::max(1.0, std::abs(k));
    const Real eps_M = 1e-12 * std::max(1.0, std::abs(M));
    report.pass = report.ratio_min >= k - eps_k && report.ratio_max <= M + eps_M;
    return report;
}

}  // namespace boundedflow
