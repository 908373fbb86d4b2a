#include "spannerforge/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "spannerforge/errors.hpp"
#include "spannerforge/random.hpp"

namespace spannerforge {
namespace {

using Mask = std::uint64_t;

int ceil_sqrt(int x) {
    int r = static_cast<int>(std::sqrt(static_cast<double>(x)));
    while (r * r < x) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= x) --r;
    return r;
}

enum class SearchStatus { Found, Infeasible, Budget };

// Does G have a 2-spanner of max degree <= k? Branches on the ways to span
// the most constrained unspanned edge: the edge itself, or a 2-path through
// a common neighbor.
class DegreeSearch {
public:
    DegreeSearch(const Graph& g, int k, std::size_t budget) : g_(g), k_(k), budget_(budget) {
        const int n = g.num_vertices();
        adj_.assign(n, 0);
        in_h_.assign(n, 0);
        forbid_.assign(n, 0);
        deg_.assign(n, 0);
        for (const Edge& e : g.edges()) {
            adj_[e.u] |= Mask{1} << e.v;
            adj_[e.v] |= Mask{1} << e.u;
        }
    }

    SearchStatus run() {
        try {
            return dfs() ? SearchStatus::Found : SearchStatus::Infeasible;
        } catch (const OutOfBudget&) {
            return SearchStatus::Budget;
        }
    }

    std::vector<Edge> witness() const { return witness_; }
    std::size_t nodes() const { return nodes_; }

private:
    struct OutOfBudget {};

    bool in_h(int a, int b) const { return (in_h_[a] >> b) & 1; }
    bool covered(int a, int b) const { return in_h(a, b) || (in_h_[a] & in_h_[b]) != 0; }
    bool addable(int a, int b) const { return !((forbid_[a] >> b) & 1) && deg_[a] < k_ && deg_[b] < k_; }

    void add(int a, int b) {
        in_h_[a] |= Mask{1} << b;
        in_h_[b] |= Mask{1} << a;
        ++deg_[a];
        ++deg_[b];
    }
    void remove(int a, int b) {
        in_h_[a] &= ~(Mask{1} << b);
        in_h_[b] &= ~(Mask{1} << a);
        --deg_[a];
        --deg_[b];
    }

    bool path_ok(int u, int v, int w) const {
        const bool hu = in_h(u, w), hv = in_h(v, w);
        if (!hu && !addable(u, w)) return false;
        if (!hv && !addable(v, w)) return false;
        if (!hu && !hv && deg_[w] + 2 > k_) return false;
        return true;
    }

    int options(int u, int v) const {
        int c = addable(u, v) ? 1 : 0;
        for (Mask m = adj_[u] & adj_[v]; m; m &= m - 1)
            if (path_ok(u, v, std::countr_zero(m))) ++c;
        return c;
    }

    // A vertex at degree deg spans at most its own new neighbors plus what its
    // neighbors can still reach.
    bool capacity_ok() const {
        const int n = g_.num_vertices();
        for (int u = 0; u < n; ++u) {
            int open = 0;
            for (Mask m = adj_[u]; m; m &= m - 1)
                if (!covered(u, std::countr_zero(m))) ++open;
            if (open == 0) continue;
            long cap = static_cast<long>(k_ - deg_[u]) * k_;
            for (Mask m = in_h_[u]; m; m &= m - 1) cap += k_ - deg_[std::countr_zero(m)];
            if (open > cap) return false;
        }
        return true;
    }

    bool dfs() {
        if (budget_ != 0 && nodes_ >= budget_) throw OutOfBudget{};
        ++nodes_;
        int bu = -1, bv = -1, best = std::numeric_limits<int>::max();
        for (const Edge& e : g_.edges()) {
            if (covered(e.u, e.v)) continue;
            const int c = options(e.u, e.v);
            if (c < best) {
                best = c;
                bu = e.u;
                bv = e.v;
                if (c == 0) return false;
            }
        }
        if (bu < 0) {
            witness_.clear();
            for (const Edge& e : g_.edges())
                if (in_h(e.u, e.v)) witness_.push_back(e);
            return true;
        }
        if (!capacity_ok()) return false;

        const int u = bu, v = bv;
        if (addable(u, v)) {
            add(u, v);
            if (dfs()) return true;
            remove(u, v);
        }
        const Mask saved_u = forbid_[u], saved_v = forbid_[v];
        forbid_[u] |= Mask{1} << v;
        forbid_[v] |= Mask{1} << u;
        bool ok = false;
        for (Mask m = adj_[u] & adj_[v]; m && !ok; m &= m - 1) {
            const int w = std::countr_zero(m);
            if (!path_ok(u, v, w)) continue;
            const bool au = !in_h(u, w), av = !in_h(v, w);
            if (au) add(u, w);
            if (av) add(v, w);
            ok = dfs();
            if (!ok) {
                if (av) remove(v, w);
                if (au) remove(u, w);
            }
        }
        forbid_[u] = saved_u;
        forbid_[v] = saved_v;
        return ok;
    }

    const Graph& g_;
    int k_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    std::vector<Mask> adj_, in_h_, forbid_;
    std::vector<int> deg_;
    std::vector<Edge> witness_;
};

}  // namespace

Ld2sBounds ld2s_bounds(const Graph& g, std::size_t node_budget) {
    if (g.num_vertices() > 64) throw DomainError("ld2s_bounds supports at most 64 vertices");
    Ld2sBounds out;
    int lb = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) lb = std::max(lb, ceil_sqrt(g.degree(v)));
    out.lower = lb;
    out.upper = g.max_degree();
    out.witness = g.edges();
    bool certified = true;  // every bound below k refuted so far
    for (int k = lb; k < out.upper; ++k) {
        DegreeSearch s(g, k, node_budget);
        const SearchStatus st = s.run();
        out.nodes += s.nodes();
        if (st == SearchStatus::Found) {
            out.upper = k;
            out.witness = s.witness();
            break;
        }
        if (st == SearchStatus::Infeasible && certified) out.lower = k + 1;
        if (st == SearchStatus::Budget) certified = false;
    }
    out.lower = std::min(out.lower, out.upper);
    out.exact = out.lower == out.upper;
    return out;
}

Ld2sOptimum brute_ld2s(const Graph& g, std::size_t edge_cap) {
    if (g.num_edges() > edge_cap)
        throw DomainError("brute_ld2s refuses graphs with more than " + std::to_string(edge_cap) + " edges (got " +
                          std::to_string(g.num_edges()) + ")");
    Ld2sBounds b = ld2s_bounds(g, 0);
    return {b.upper, std::move(b.witness)};
}

SmesOptimum brute_smes(const Graph& g, long m) {
    const int n = g.num_vertices();
    if (n > 20) throw DomainError("brute_smes supports at most 20 vertices");
    SmesOptimum out;
    if (m > static_cast<long>(g.num_edges())) return out;
    out.feasible = true;
    if (m <= 0) return out;
    std::vector<std::uint32_t> adj(n, 0);
    for (const Edge& e : g.edges()) {
        adj[e.u] |= 1u << e.v;
        adj[e.v] |= 1u << e.u;
    }
    for (int k = 2; k <= n; ++k) {
        // Gosper's hack over all k-subsets, in increasing mask order.
        std::uint32_t s = (1u << k) - 1;
        const std::uint32_t limit = 1u << n;
        while (s < limit) {
            long twice = 0;
            for (std::uint32_t r = s; r; r &= r - 1) twice += std::popcount(adj[std::countr_zero(r)] & s);
            if (twice / 2 >= m) {
                out.size = k;
                for (std::uint32_t r = s; r; r &= r - 1) out.witness.push_back(std::countr_zero(r));
                return out;
            }
            const std::uint32_t c = s & (~s + 1);
            const std::uint32_t r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    throw ContractError("brute_smes: no subset found although m <= |E|");
}

namespace {

// Near-regular simple graph with m edges on k vertices: stubs are paired at
// random, a pairing that would create a loop or repeat is redrawn, and a dead
// end restarts the whole pairing.
std::vector<Edge> configuration_plant(int k, long m, Rng& rng, int& attempts) {
    std::vector<int> stubs;
    for (int i = 0; i < k; ++i) {
        const long deg = (2 * m) / k + (i < (2 * m) % k ? 1 : 0);
        stubs.insert(stubs.end(), deg, i);
    }
    for (attempts = 1; attempts <= 1000; ++attempts) {
        std::vector<int> open = stubs;
        std::set<Edge> got;
        bool dead = false;
        while (!open.empty() && !dead) {
            const std::size_t i = rng.below(open.size());
            std::swap(open[i], open.back());
            const int a = open.back();
            open.pop_back();
            std::vector<std::size_t> ok;
            for (std::size_t j = 0; j < open.size(); ++j)
                if (open[j] != a && !got.count(make_edge(a, open[j]))) ok.push_back(j);
            if (ok.empty()) {
                dead = true;
                break;
            }
            const std::size_t j = ok[rng.below(ok.size())];
            got.insert(make_edge(a, open[j]));
            std::swap(open[j], open.back());
            open.pop_back();
        }
        if (!dead) return {got.begin(), got.end()};
    }
    // Dense plants can defeat the pairing; take m uniform distinct pairs instead.
    std::vector<Edge> all;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) all.push_back({a, b});
    rng.shuffle(all);
    all.resize(m);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

GeneratedGraph gen_dense_vs_random(int n, double alpha, int k, double beta, GenMode mode, std::uint64_t seed) {
    if (n < 1) throw ParameterError("n must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
    GeneratedGraph out;
    out.mode = mode;
    out.n = n;
    out.alpha = alpha;
    out.seed = seed;
    out.p = std::pow(static_cast<double>(n), alpha - 1.0);
    long plant_m = 0;
    if (mode == GenMode::Planted) {
        if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
        if (k < 1 || k > n) throw ParameterError("k must lie in [1, n]");
        plant_m = static_cast<long>(std::ceil(std::pow(static_cast<double>(k), 1.0 + beta) - 1e-9));
        const long pairs = static_cast<long>(k) * (k - 1) / 2;
        if (plant_m > pairs)
            throw ParameterError("k^(1+beta) = " + std::to_string(plant_m) + " exceeds C(k,2) = " +
                                 std::to_string(pairs));
        out.k = k;
        out.beta = beta;
    }

    std::set<Edge> edges;
    Rng er(derive_seed(seed, 1));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (er.bernoulli(out.p)) edges.insert({a, b});

    if (mode == GenMode::Planted) {
        Rng pr(derive_seed(seed, 2));
        std::vector<int> chosen = pr.sample(n, k);
        pr.shuffle(chosen);  // random labelling of the plant's vertices
        for (const Edge& e : configuration_plant(k, plant_m, pr, out.plant_attempts)) {
            const Edge he = make_edge(chosen[e.u], chosen[e.v]);
            out.plant_edges.push_back(he);
            edges.insert(he);
        }
        std::sort(out.plant_edges.begin(), out.plant_edges.end());
        out.plant_vertices.assign(chosen.begin(), chosen.end());
        std::sort(out.plant_vertices.begin(), out.plant_vertices.end());
    }
    out.graph = Graph(n, {edges.begin(), edges.end()});
    return out;
}

PlantedSmesInstance gen_planted_smes(int side, int d, int copies, double p, std::uint64_t seed) {
    if (d < 1 || copies < 1 || copies * d > side)
        throw ParameterError("need d >= 1, copies >= 1 and copies * d <= side");
    Rng rng(derive_seed(seed, 3));
    // Copies sit on disjoint vertex sets, so their union is itself (d, d)-biregular.
    std::vector<int> order0(side), order1(side);
    std::iota(order0.begin(), order0.end(), 0);
    std::iota(order1.begin(), order1.end(), 0);
    rng.shuffle(order0);
    rng.shuffle(order1);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> plants;
    std::set<Edge> edges;
    for (int c = 0; c < copies; ++c) {
        std::vector<int> a(order0.begin() + c * d, order0.begin() + (c + 1) * d);
        std::vector<int> b(order1.begin() + c * d, order1.begin() + (c + 1) * d);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (int i : a)
            for (int j : b) edges.insert({i, side + j});
        plants.emplace_back(std::move(a), std::move(b));
    }
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j)
            if (rng.bernoulli(p)) edges.insert({i, side + j});
    std::vector<Vertex> s0(side), s1(side);
    for (int i = 0; i < side; ++i) {
        s0[i] = i;
        s1[i] = side + i;
    }
    PlantedSmesInstance out{BipartiteGraph(2 * side, s0, s1, {edges.begin(), edges.end()}), {d, d, d, d}, {}};
    for (const auto& [a, b] : plants) {
        MixtureValues::Component comp;
        comp.weight = 1.0 / copies;
        for (int i : a) comp.vertices.push_back(i);
        for (int j : b) comp.vertices.push_back(side + j);
        for (int i : a)
            for (int j : b) comp.edges.push_back(*out.host.edge_index(i, side + j));
        std::sort(comp.edges.begin(), comp.edges.end());
        out.components.push_back(std::move(comp));
    }
    return out;
}

std::pair<double, double> wilson_interval(std::size_t hits, std::size_t trials, double z) {
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

bool FaithfulnessReport::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

FaithfulnessReport estimate_faithfulness(const RoundOnce& rounder, const BipartiteGraph& instance,
                                         const LiftedValues& values, double f, int trials, std::uint64_t seed,
                                         const FaithfulnessOptions& options) {
    if (trials < 100) throw ParameterError("estimate_faithfulness needs at least 100 trials");
    FaithfulnessReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.f = f;
    rep.options = options;
    rep.vertices = instance.vertices();
    const int universe = instance.universe();
    std::vector<int> pos(universe, -1);
    for (std::size_t i = 0; i < rep.vertices.size(); ++i) pos[rep.vertices[i]] = static_cast<int>(i);
    rep.vertex_rates.assign(rep.vertices.size(), {});
    rep.edge_rates.assign(instance.num_edges(), {});

    double edge_total = 0.0;
    for (int t = 0; t < trials; ++t) {
        const RoundedSubgraph s = rounder(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::set<Vertex> vs(s.vertices.begin(), s.vertices.end());
        for (Vertex v : vs) {
            if (v < 0 || v >= universe || pos[v] < 0) throw ContractError("rounder returned a non-host vertex");
            ++rep.vertex_rates[pos[v]].hits;
        }
        std::set<std::size_t> es(s.edges.begin(), s.edges.end());
        for (std::size_t e : es) {
            if (e >= instance.num_edges()) throw ContractError("rounder returned a non-host edge");
            ++rep.edge_rates[e].hits;
        }
        rep.max_vertices = std::max(rep.max_vertices, vs.size());
        edge_total += static_cast<double>(es.size());
    }
    rep.mean_edges = edge_total / trials;

    const double phi = options.phi;
    auto fill = [&](ItemRate& r, double lp) {
        r.lp = lp;
        r.rate = static_cast<double>(r.hits) / trials;
        std::tie(r.lo, r.hi) = wilson_interval(r.hits, static_cast<std::size_t>(trials), options.z);
    };
    // Items never observed pass whatever their LP value.
    auto check = [&](Verdict& v, const std::vector<ItemRate>& rates, double scale, auto name) {
        v.margin = 0.0;
        for (std::size_t i = 0; i < rates.size(); ++i) {
            const ItemRate& r = rates[i];
            if (r.hits == 0) continue;
            const double allowed = options.slack * scale * r.lp;
            const double ratio = allowed > 0 ? r.hi / allowed : std::numeric_limits<double>::infinity();
            if (ratio > v.margin) {
                v.margin = ratio;
                v.detail = name(i);
            }
        }
        v.pass = v.margin <= 1.0;
    };

    for (std::size_t i = 0; i < rep.vertices.size(); ++i) {
        fill(rep.vertex_rates[i], values.vertex(rep.vertices[i]));
        rep.vertex_mass += rep.vertex_rates[i].lp;
    }
    for (std::size_t e = 0; e < instance.num_edges(); ++e) {
        fill(rep.edge_rates[e], values.edge(e));
        rep.edge_mass += rep.edge_rates[e].lp;
    }
    check(rep.verdicts[0], rep.vertex_rates, phi * f,
          [&](std::size_t i) { return "vertex " + std::to_string(rep.vertices[i]); });
    check(rep.verdicts[1], rep.edge_rates, phi, [&](std::size_t e) {
        const Edge& ed = instance.edges()[e];
        return "edge " + std::to_string(ed.u) + "-" + std::to_string(ed.v);
    });

    const double cap = phi * f * rep.vertex_mass;
    Verdict& v3 = rep.verdicts[2];
    v3.margin = cap > 0 ? static_cast<double>(rep.max_vertices) / cap
                        : (rep.max_vertices == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    v3.pass = static_cast<double>(rep.max_vertices) <= cap + 1e-9;
    v3.detail = "max |V*| = " + std::to_string(rep.max_vertices);

    const int n = instance.num_vertices();
    const double polylog = std::pow(1.0 + std::log(std::max(1, n)), options.polylog_exponent);
    const double need = phi * rep.edge_mass / polylog;
    Verdict& v4 = rep.verdicts[3];
    v4.margin = need > 0 ? rep.mean_edges / need : std::numeric_limits<double>::infinity();
    v4.pass = rep.mean_edges >= need;
    v4.detail = "required mean |E*| >= " + std::to_string(need);
    return rep;
}

CorrelationDemo correlation_demo(int trials, std::uint64_t seed) {
    if (trials < 1) throw ParameterError("trials must be positive");
    CorrelationDemo d;
    d.trials = trials;
    long a = 0, b = 0, both = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const bool x = rng.bernoulli(0.5), y = rng.bernoulli(0.5);
        a += x;
        b += y;
        both += x && y;
    }
    d.rate_e = static_cast<double>(a) / trials;
    d.rate_f = static_cast<double>(b) / trials;
    d.joint_rate = static_cast<double>(both) / trials;
    return d;
}

VertexCapCheck vertex_probability_cap(const BipartiteGraph& g, const BucketingTrace& trace) {
    VertexCapCheck out;
    for (const StepTrace& st : trace.steps) {
        const std::size_t L = st.tuple_edges.size();
        if (L == 0 || st.layer.S.empty()) continue;
        ++out.steps;
        std::map<Vertex, std::size_t> count;
        double total = 0.0;
        for (const auto& es : st.tuple_edges) {
            std::set<Vertex> u;
            for (std::size_t e : es) u.insert(st.layer.side == 0 ? g.edges()[e].u : g.edges()[e].v);
            total += static_cast<double>(u.size());
            for (Vertex x : u) ++count[x];
        }
        const double mean_u = total / static_cast<double>(L);
        if (mean_u <= 0) continue;
        const double base = mean_u / static_cast<double>(st.layer.S.size());
        for (const auto& [x, c] : count) {
            const double ratio = (static_cast<double>(c) / static_cast<double>(L)) / base;
            if (ratio > out.worst_ratio) {
                out.worst_ratio = ratio;
                out.worst_step = st.t;
                out.worst_vertex = x;
            }
        }
    }
    return out;
}

}  // namespace spannerforge
