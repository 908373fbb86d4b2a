#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <span>

#include "spannerforge/errors.hpp"
#include "spannerforge/random.hpp"
#include "spannerforge/rounding.hpp"

namespace spannerforge {

namespace {

constexpr double kTiny = 1e-12;

// floor/ceil that ignore float noise just below or above an integer.
int floor_count(double x) { return static_cast<int>(std::floor(x + 1e-9)); }
int ceil_count(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

std::vector<Vertex> sample_of(Rng& rng, const std::vector<Vertex>& from, int k) {
    k = std::clamp(k, 0, static_cast<int>(from.size()));
    std::vector<Vertex> out;
    for (int i : rng.sample(static_cast<int>(from.size()), k)) out.push_back(from[i]);
    return out;
}

// Edges of `edges` with both endpoints in `keep`; vertices are `keep` itself.
RoundedSubgraph restrict_to(const BipartiteGraph& g, const std::vector<std::size_t>& edges,
                            std::vector<Vertex> keep) {
    std::sort(keep.begin(), keep.end());
    RoundedSubgraph out;
    for (std::size_t e : edges) {
        const Edge& ed = g.edges()[e];
        if (std::binary_search(keep.begin(), keep.end(), ed.u) && std::binary_search(keep.begin(), keep.end(), ed.v))
            out.edges.push_back(e);
    }
    out.vertices = std::move(keep);
    return out;
}

std::vector<Vertex> on_side(const BipartiteGraph& g, const std::vector<Vertex>& vs, int b) {
    std::vector<Vertex> out;
    for (Vertex v : vs)
        if (g.side_of(v) == b) out.push_back(v);
    return out;
}

int side_k(const ParamTuple& t, int b) { return b == 0 ? t.k0 : t.k1; }

// Uniform subsample of each side down to floor(k_b f) vertices.
RoundedSubgraph cap_sides(const BipartiteGraph& g, const RoundedSubgraph& h, const ParamTuple& tau, double f,
                          Rng& rng) {
    std::vector<Vertex> keep;
    for (int b = 0; b < 2; ++b) {
        const std::vector<Vertex> vs = on_side(g, h.vertices, b);
        const int cap = floor_count(side_k(tau, b) * f);
        const std::vector<Vertex> kept = static_cast<int>(vs.size()) > cap ? sample_of(rng, vs, cap) : vs;
        keep.insert(keep.end(), kept.begin(), kept.end());
    }
    return restrict_to(g, h.edges, std::move(keep));
}

}  // namespace

bool check_simplified_conditions(double k0p, double k1p, double mp, const ParamTuple& tau, double f) {
    if (!(mp > 0.0) || !(k0p > 0.0) || !(k1p > 0.0) || !(f > 0.0)) return false;
    auto at_least = [](double a, double b) { return a >= b * (1.0 - 1e-12); };
    const double m = static_cast<double>(tau.k0) * tau.d0;
    return at_least(mp / k0p, tau.d0 / f) && at_least(mp / k1p, tau.d1 / f) &&
           at_least(mp * (tau.k0 * f / k0p) * (tau.k1 * f / k1p), m);
}

SkewedResult skewed_to_faithful(const BipartiteGraph& g, const RoundedSubgraph& h, double k0p, double k1p,
                                double mp, const ParamTuple& tau, double f, std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<Vertex> side[2] = {on_side(g, h.vertices, 0), on_side(g, h.vertices, 1)};
    const double kp[2] = {k0p, k1p};
    SkewedResult res;
    std::vector<Vertex> keep;
    if (k0p >= tau.k0 * f && k1p >= tau.k1 * f) {
        res.case_id = 1;
        for (int b = 0; b < 2; ++b) {
            const double kf = side_k(tau, b) * f;
            const int size = std::min(floor_count(kf / kp[b] * side[b].size()), floor_count(kf));
            const std::vector<Vertex> s = sample_of(rng, side[b], size);
            keep.insert(keep.end(), s.begin(), s.end());
        }
        res.sub = restrict_to(g, h.edges, std::move(keep));
        const double rho = (tau.k0 * f / k0p) * (tau.k1 * f / k1p);
        const double m = static_cast<double>(tau.k0) * tau.d0;
        if (mp * rho > m) {
            const double p = m / (mp * rho);
            std::vector<std::size_t> kept;
            for (std::size_t e : res.sub.edges)
                if (rng.bernoulli(p)) kept.push_back(e);
            res.sub.edges = std::move(kept);
        }
        return res;
    }
    res.case_id = 2;
    // Keep the side with the smaller inflation whole; thin the other to match it.
    const int a = k0p / tau.k0 <= k1p / tau.k1 ? 0 : 1;
    const int o = 1 - a;
    const double rate = (kp[a] * side_k(tau, o)) / (side_k(tau, a) * kp[o]);
    const std::vector<Vertex> ka = sample_of(rng, side[a], floor_count(side_k(tau, a) * f));
    const std::vector<Vertex> ko = sample_of(
        rng, side[o], std::min(floor_count(rate * side[o].size()), floor_count(side_k(tau, o) * f)));
    keep = ka;
    keep.insert(keep.end(), ko.begin(), ko.end());
    res.sub = restrict_to(g, h.edges, std::move(keep));
    res.phi = std::min(1.0, kp[a] / (side_k(tau, a) * f));
    return res;
}

HighDegreeResult high_degree_rounding(const BipartiteGraph& g, const LayerGraph& layer, const ParamTuple& tau,
                                      double f, const LiftedValues& y, double threshold, std::uint64_t seed) {
    std::map<Vertex, int> deg;
    int maxdeg = 0;
    for (std::size_t e : layer.edges) {
        maxdeg = std::max(maxdeg, ++deg[g.edges()[e].u]);
        maxdeg = std::max(maxdeg, ++deg[g.edges()[e].v]);
    }
    if (maxdeg < threshold)
        throw ContractError("high-degree rounding needs max degree >= " + std::to_string(threshold) + ", layer has " +
                            std::to_string(maxdeg));
    Rng rng(seed);
    const int b = layer.side;
    std::vector<Vertex> s = sample_of(rng, layer.S, ceil_count(side_k(tau, b) * f));
    std::vector<Vertex> w = sample_of(rng, layer.W, ceil_count(side_k(tau, 1 - b) * f));
    HighDegreeResult res;
    res.sub.vertices = s;
    res.sub.vertices.insert(res.sub.vertices.end(), w.begin(), w.end());
    std::sort(res.sub.vertices.begin(), res.sub.vertices.end());
    res.sub.vertices.erase(std::unique(res.sub.vertices.begin(), res.sub.vertices.end()), res.sub.vertices.end());
    std::sort(s.begin(), s.end());
    std::sort(w.begin(), w.end());
    for (std::size_t e : layer.edges) {
        const Edge& ed = g.edges()[e];
        const Vertex u = b == 0 ? ed.u : ed.v;
        const Vertex x = b == 0 ? ed.v : ed.u;
        if (!std::binary_search(s.begin(), s.end(), u) || !std::binary_search(w.begin(), w.end(), x)) continue;
        double p = y.edge(e) / (y.vertex(u) * y.vertex(x) * f * f);
        if (p > 1.0) {
            ++res.clamped;
            p = 1.0;
        }
        if (rng.bernoulli(p)) res.sub.edges.push_back(e);
    }
    return res;
}

RoundedSubgraph amplify_weakly_faithful(const RoundOnce& round_once, double phi, std::uint64_t seed) {
    if (!(phi > 0.0) || phi > 1.0) throw ParameterError("amplification needs 0 < phi <= 1");
    const int runs = ceil_count(1.0 / phi);
    RoundedSubgraph out;
    for (int i = 0; i < runs; ++i) {
        RoundedSubgraph r = round_once(derive_seed(seed, static_cast<std::uint64_t>(i)));
        out.vertices.insert(out.vertices.end(), r.vertices.begin(), r.vertices.end());
        out.edges.insert(out.edges.end(), r.edges.begin(), r.edges.end());
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

SmallDegreeRounder::SmallDegreeRounder(const BipartiteGraph& g, const ParamTuple& tau, const LiftedValues& y)
    : g_(&g), tau_(tau) {
    auto key = [](double x) { return static_cast<int>(std::floor(std::log2(x))); };
    std::map<std::array<int, 3>, double> weight;
    std::vector<std::array<int, 3>> keys(g.num_edges());
    std::vector<double> ye(g.num_edges(), 0.0);
    std::vector<char> usable(g.num_edges(), 0);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        ye[e] = y.edge(e);
        const double a = y.vertex(g.edges()[e].u), b = y.vertex(g.edges()[e].v);
        if (ye[e] <= kTiny || a <= kTiny || b <= kTiny) continue;
        usable[e] = 1;
        keys[e] = {key(ye[e]), key(a), key(b)};
        weight[keys[e]] += ye[e];
    }
    if (weight.empty()) {
        diagnostic_ = "no edge carries LP weight";
        return;
    }
    std::array<int, 3> best{};
    double best_w = -1.0;
    for (const auto& [k, w] : weight)
        if (w > best_w * (1.0 + 1e-12) || best_w < 0.0) {
            best = k;
            best_w = w;
        }
    y_min_ = 1.0;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        if (usable[e] && keys[e] == best) {
            bucket_.push_back(e);
            y_min_ = std::min(y_min_, ye[e]);
            u1_.push_back(g.edges()[e].v);
        }
    std::sort(u1_.begin(), u1_.end());
    u1_.erase(std::unique(u1_.begin(), u1_.end()), u1_.end());
}

RoundedSubgraph SmallDegreeRounder::round(std::uint64_t seed) const {
    RoundedSubgraph out;
    if (bucket_.empty()) return out;
    Rng rng(seed);
    const std::vector<Vertex> chosen = sample_of(rng, u1_, tau_.k1);
    std::vector<std::size_t> inc;
    for (std::size_t e : bucket_)
        if (std::binary_search(chosen.begin(), chosen.end(), g_->edges()[e].v)) inc.push_back(e);
    const double rho = std::min(1.0, y_min_ * static_cast<double>(u1_.size()) / tau_.k1);
    const long m = static_cast<long>(tau_.k0) * tau_.d0;
    const int size = static_cast<int>(std::min<long>(floor_count(rho * inc.size()), m));
    for (int i : rng.sample(static_cast<int>(inc.size()), size)) {
        const std::size_t e = inc[i];
        out.edges.push_back(e);
        out.vertices.push_back(g_->edges()[e].u);
        out.vertices.push_back(g_->edges()[e].v);
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
    return out;
}

RoundedSubgraph small_degree_rounding(const BipartiteGraph& g, const ParamTuple& tau, const LiftedValues& y,
                                      std::uint64_t seed) {
    return SmallDegreeRounder(g, tau, y).round(seed);
}

std::string route_name(Route r) {
    switch (r) {
        case Route::HighDegree: return "high-degree";
        case Route::Skewed: return "skewed";
        case Route::SkewedAmplified: return "skewed-amplified";
        case Route::SmallDegree: return "small-degree";
        case Route::Fallback: return "fallback";
        case Route::Failure: return "failure";
    }
    return "?";
}

FaithfulSmes::FaithfulSmes(const BipartiteGraph& g, const ParamTuple& tau, int q, const LiftedValues& y,
                           const RoundingConstants& c)
    : g_(&g), y_(&y), tau_(tau), c_(c), params_(derive_params(g.num_vertices(), tau, q)) {
    if (params_.small_degree_mode)
        throw ContractError("f exceeds d0; the small-degree rounding applies");
    template_ = build_caterpillar(params_.r, params_.s);
    trace_ = bucket_caterpillars(g, y, template_, tau, c);
    const double threshold = c_.degree_threshold * params_.D;
    for (int t = 1; t <= params_.s; ++t) {
        if (static_cast<int>(trace_.steps.size()) < t || (trace_.failed && trace_.failed_step == t)) break;
        const StepTrace& st = trace_.steps[t - 1];
        std::map<Vertex, int> deg;
        int maxdeg = 0;
        for (std::size_t e : st.layer.edges) {
            maxdeg = std::max(maxdeg, ++deg[g.edges()[e].u]);
            maxdeg = std::max(maxdeg, ++deg[g.edges()[e].v]);
        }
        if (maxdeg >= threshold) {
            route_ = Route::HighDegree;
            step_ = t;
            // Claim: average and maximum degree per side stay close.
            const std::vector<Vertex>* sides[2] = {&st.layer.S, &st.layer.W};
            for (const auto* side : sides) {
                int mx = 0;
                for (Vertex v : *side) mx = std::max(mx, deg[v]);
                const double avg = static_cast<double>(st.layer.edges.size()) / side->size();
                if (avg > 0.0) degree_spread_ = std::max(degree_spread_, mx / avg);
            }
            return;
        }
        double eu = 0.0, ew = 0.0, ee = 0.0;
        for (const auto& es : st.tuple_edges) {
            std::vector<Vertex> us, ws;
            for (std::size_t e : es) {
                us.push_back(st.layer.side == 0 ? g.edges()[e].u : g.edges()[e].v);
                ws.push_back(st.layer.side == 0 ? g.edges()[e].v : g.edges()[e].u);
            }
            std::sort(us.begin(), us.end());
            std::sort(ws.begin(), ws.end());
            eu += std::unique(us.begin(), us.end()) - us.begin();
            ew += std::unique(ws.begin(), ws.end()) - ws.begin();
            ee += es.size();
        }
        const double L = static_cast<double>(st.tuple_edges.size());
        eu /= L;
        ew /= L;
        ee /= L;
        const double k0p = st.layer.side == 0 ? eu : ew;
        const double k1p = st.layer.side == 0 ? ew : eu;
        if (check_simplified_conditions(k0p, k1p, ee, tau_, params_.f)) {
            k0p_ = k0p;
            k1p_ = k1p;
            mp_ = ee;
            step_ = t;
            const bool case1 = k0p >= tau_.k0 * params_.f && k1p >= tau_.k1 * params_.f;
            route_ = case1 ? Route::Skewed : Route::SkewedAmplified;
            return;
        }
    }
    route_ = Route::Failure;
}

RoundedSubgraph FaithfulSmes::skewed_once(std::uint64_t seed, SkewedResult* info) const {
    const StepTrace& st = trace_.steps[step_ - 1];
    Rng rng(derive_seed(seed, 0));
    const std::size_t pick = rng.below(st.tuple_edges.size());
    RoundedSubgraph h;
    h.edges = st.tuple_edges[pick];
    for (std::size_t e : h.edges) {
        h.vertices.push_back(g_->edges()[e].u);
        h.vertices.push_back(g_->edges()[e].v);
    }
    std::sort(h.vertices.begin(), h.vertices.end());
    h.vertices.erase(std::unique(h.vertices.begin(), h.vertices.end()), h.vertices.end());
    SkewedResult r = skewed_to_faithful(*g_, h, k0p_, k1p_, mp_, tau_, params_.f, derive_seed(seed, 1));
    if (info) *info = r;
    return std::move(r.sub);
}

RoundingOutcome FaithfulSmes::round(std::uint64_t seed) const {
    RoundingOutcome out;
    out.route = route_;
    out.step = step_;
    switch (route_) {
        case Route::HighDegree: {
            HighDegreeResult r = high_degree_rounding(*g_, trace_.steps[step_ - 1].layer, tau_, params_.f, *y_,
                                                      c_.degree_threshold * params_.D, seed);
            out.sub = std::move(r.sub);
            out.clamped = r.clamped;
            break;
        }
        case Route::Skewed:
            out.sub = skewed_once(seed, nullptr);
            break;
        case Route::SkewedAmplified: {
            SkewedResult info;
            skewed_once(seed, &info);  // only to learn phi, which depends on the averages alone
            out.phi = info.phi;
            out.runs = ceil_count(1.0 / info.phi);
            RoundedSubgraph u = amplify_weakly_faithful(
                [this](std::uint64_t s) { return skewed_once(s, nullptr); }, info.phi, derive_seed(seed, 1));
            Rng rng(derive_seed(seed, 2));
            out.sub = cap_sides(*g_, u, tau_, params_.f, rng);
            break;
        }
        default:
            break;
    }
    return out;
}

RoundingOutcome faithful_smes(const BipartiteGraph& g, const ParamTuple& tau, int q, const LiftedValues& y,
                              std::uint64_t seed, const RoundingConstants& c) {
    return FaithfulSmes(g, tau, q, y, c).round(seed);
}

namespace {

// The same values seen through a host whose sides were exchanged.
class RemappedValues : public LiftedValues {
public:
    RemappedValues(const LiftedValues& base, std::vector<std::size_t> edge_map)
        : base_(&base), map_(std::move(edge_map)) {}
    double value(std::span<const Vertex> vertices, std::span<const std::size_t> edges) const override {
        std::vector<std::size_t> es;
        es.reserve(edges.size());
        for (std::size_t e : edges) es.push_back(map_[e]);
        return base_->value(vertices, es);
    }
    int arity() const override { return base_->arity(); }

private:
    const LiftedValues* base_;
    std::vector<std::size_t> map_;
};

}  // namespace

struct BipartiteSmesRounder::Swapped {
    BipartiteGraph host;
    std::vector<std::size_t> edge_map;  // swapped index -> original index
    std::unique_ptr<RemappedValues> values;
};

BipartiteSmesRounder::~BipartiteSmesRounder() = default;

BipartiteSmesRounder::BipartiteSmesRounder(const BipartiteGraph& g, const ParamTuple& tau, int q,
                                           const LiftedValues& y, const RoundingConstants& c)
    : g_(&g) {
    const BipartiteGraph* work = &g;
    const LiftedValues* values = &y;
    ParamTuple t = tau;
    if (tau.k0 < tau.k1) {
        swapped_ = true;
        swap_ = std::make_unique<Swapped>();
        swap_->host = BipartiteGraph(g.universe(), g.side(1), g.side(0), g.edges());
        for (const Edge& e : swap_->host.edges()) swap_->edge_map.push_back(*g.edge_index(e.u, e.v));
        swap_->values = std::make_unique<RemappedValues>(y, swap_->edge_map);
        work = &swap_->host;
        values = swap_->values.get();
        t = ParamTuple{tau.k1, tau.k0, tau.d1, tau.d0};
    }
    const double small_factor = t.d0 * c.polylog(work->num_vertices());
    try {
        params_ = derive_params(work->num_vertices(), t, q);
    } catch (const DegenerateParameters& e) {
        note_ = e.what();
    }
    if (!params_ || params_->small_degree_mode) {
        route_ = Route::SmallDegree;
        if (note_.empty()) note_ = "f exceeds d0";
    } else {
        try {
            faithful_ = std::make_unique<FaithfulSmes>(*work, t, q, *values, c);
            route_ = faithful_->planned_route();
        } catch (const DomainError& e) {
            note_ = e.what();
            route_ = Route::Failure;
        }
        if (route_ == Route::Failure) {
            route_ = Route::Fallback;
            if (note_.empty())
                note_ = faithful_ && faithful_->trace().failed ? faithful_->trace().failure : "no step fired";
        }
    }
    if (route_ == Route::SmallDegree || route_ == Route::Fallback) {
        small_ = std::make_unique<SmallDegreeRounder>(*work, t, *values);
        factor_ = small_factor;
    } else {
        factor_ = params_->f;
    }
}

RoundingOutcome BipartiteSmesRounder::round(std::uint64_t seed) const {
    RoundingOutcome out;
    if (small_) {
        out.route = route_;
        out.sub = small_->round(seed);
    } else {
        out = faithful_->round(seed);
    }
    if (swapped_) {
        for (std::size_t& e : out.sub.edges) e = swap_->edge_map[e];
        std::sort(out.sub.edges.begin(), out.sub.edges.end());
    }
    return out;
}

RoundedSubgraph fold_cover(const Graph& g, const BipartiteGraph& cover, const RoundedSubgraph& sub) {
    RoundedSubgraph out;
    for (Vertex v : sub.vertices) out.vertices.push_back(v / 2);
    for (std::size_t e : sub.edges) {
        const Edge& ce = cover.edges()[e];
        const auto idx = g.edge_index(ce.u / 2, ce.v / 2);
        if (!idx) throw ContractError("cover edge has no base edge");
        out.edges.push_back(*idx);
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

RoundedSubgraph general_from_bipartite(const Graph& g, const BipartiteGraph& cover, const RoundOnce& rounder,
                                       std::uint64_t seed) {
    return fold_cover(g, cover, rounder(seed));
}

}  // namespace spannerforge
