#include "spannerforge/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <map>

#include "spannerforge/errors.hpp"
#include "spannerforge/random.hpp"

namespace spannerforge {

int ParamTuple::max_entry() const { return std::max(std::max(k0, k1), std::max(d0, d1)); }

std::string ParamTuple::str() const {
    return "(" + std::to_string(k0) + "," + std::to_string(k1) + "," + std::to_string(d0) + "," +
           std::to_string(d1) + ")";
}

double nearly_regular_slack(int n) {
    return 1.0 / (6.0 * std::max(1.0, std::log(static_cast<double>(std::max(n, 1)))));
}

bool is_nearly_regular(const BipartiteGraph& piece, const ParamTuple& tau, int n) {
    if (tau.k0 < 1 || tau.k1 < 1 || tau.d0 < 1 || tau.d1 < 1) return false;
    const double slack = nearly_regular_slack(n);
    const int k[2] = {tau.k0, tau.k1};
    const int d[2] = {tau.d0, tau.d1};
    for (int b = 0; b < 2; ++b) {
        if (static_cast<int>(piece.side(b).size()) != k[b]) return false;
        for (Vertex v : piece.side(b)) {
            const int deg = piece.degree(v);
            if (deg > d[b]) return false;
            if (deg < slack * d[b] - kRegularityTolerance) return false;
        }
    }
    return true;
}

namespace {

using Cut = std::vector<char>;

std::size_t cut_size(const Graph& h, const Cut& side) {
    std::size_t c = 0;
    for (const Edge& e : h.edges()) c += side[e.u] != side[e.v];
    return c;
}

// Flip vertices while that strictly grows the cut; the result cuts at least half the edges.
void improve_cut(const Graph& h, Cut& side) {
    bool improved = true;
    while (improved) {
        improved = false;
        for (Vertex v = 0; v < h.num_vertices(); ++v) {
            int same = 0;
            for (Vertex w : h.neighbors(v)) same += side[w] == side[v];
            if (2 * same > h.degree(v)) {
                side[v] ^= 1;
                improved = true;
            }
        }
    }
}

Cut parity_cut(const Graph& h) {
    const int n = h.num_vertices();
    Cut side(n, 0);
    std::vector<char> seen(n, 0);
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::deque<Vertex> queue{s};
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex w : h.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    side[w] = side[v] ^ 1;
                    queue.push_back(w);
                }
        }
    }
    return side;
}

int bucket_of(int deg) { return std::bit_width(static_cast<unsigned>(deg)) - 1; }

// Members of the heaviest factor-2 degree bucket; ties go to the lower bucket.
std::vector<Vertex> heaviest_bucket(const std::vector<Vertex>& candidates, const std::vector<int>& deg) {
    std::map<int, std::pair<long long, std::vector<Vertex>>> buckets;
    for (Vertex v : candidates) {
        if (deg[v] <= 0) continue;
        auto& b = buckets[bucket_of(deg[v])];
        b.first += deg[v];
        b.second.push_back(v);
    }
    const std::vector<Vertex>* best = nullptr;
    long long best_weight = -1;
    for (const auto& [idx, b] : buckets)
        if (b.first > best_weight) {
            best_weight = b.first;
            best = &b.second;
        }
    return best ? *best : std::vector<Vertex>{};
}

struct Attempt {
    std::vector<Vertex> ua, ub;
    int da = 0, db = 0;
    std::size_t kept = 0;
};

Attempt try_orientation(const Graph& h, const Cut& cut, int o, double slack) {
    const int n = h.num_vertices();
    std::vector<Vertex> va, vb;
    for (Vertex v = 0; v < n; ++v) (cut[v] == o ? va : vb).push_back(v);

    std::vector<int> deg(n, 0);
    for (Vertex v : va)
        for (Vertex w : h.neighbors(v)) deg[v] += cut[w] != o;
    Attempt a;
    a.ua = heaviest_bucket(va, deg);
    std::vector<char> in_a(n, 0), in_b(n, 0);
    for (Vertex v : a.ua) in_a[v] = 1;

    std::fill(deg.begin(), deg.end(), 0);
    for (Vertex w : vb)
        for (Vertex v : h.neighbors(w)) deg[w] += in_a[v];
    a.ub = heaviest_bucket(vb, deg);
    for (Vertex w : a.ub) in_b[w] = 1;

    // Degrees inside the current pair, then iterative pruning of low-degree vertices.
    std::fill(deg.begin(), deg.end(), 0);
    int da = 0, db = 0;
    for (Vertex v : a.ua) {
        for (Vertex w : h.neighbors(v)) deg[v] += in_b[w];
        da = std::max(da, deg[v]);
    }
    for (Vertex w : a.ub) {
        for (Vertex v : h.neighbors(w)) deg[w] += in_a[v];
        db = std::max(db, deg[w]);
    }
    const double thr_a = da * slack;
    const double thr_b = db / 6.0;
    auto low = [&](Vertex v) { return in_a[v] ? deg[v] <= thr_a : deg[v] <= thr_b; };
    std::deque<Vertex> queue;
    std::vector<char> queued(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if ((in_a[v] || in_b[v]) && low(v)) {
            queue.push_back(v);
            queued[v] = 1;
        }
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        const bool from_a = in_a[v];
        std::vector<char>& other = from_a ? in_b : in_a;
        (from_a ? in_a : in_b)[v] = 0;
        for (Vertex w : h.neighbors(v)) {
            if (!other[w]) continue;
            --deg[w];
            if (!queued[w] && low(w)) {
                queued[w] = 1;
                queue.push_back(w);
            }
        }
    }
    std::erase_if(a.ua, [&](Vertex v) { return !in_a[v]; });
    std::erase_if(a.ub, [&](Vertex v) { return !in_b[v]; });
    for (Vertex v : a.ua) {
        a.da = std::max(a.da, deg[v]);
        a.kept += deg[v];
    }
    for (Vertex w : a.ub) a.db = std::max(a.db, deg[w]);
    if (a.kept == 0) a = Attempt{};
    return a;
}

}  // namespace

RegularizeResult regularize(const Graph& h, std::uint64_t seed) {
    if (h.num_edges() == 0) throw DomainError("regularize: graph has no edges");
    const int n = h.num_vertices();

    std::vector<Cut> candidates{parity_cut(h)};
    Rng rng(derive_seed(seed, 0x7265));
    for (int i = 0; i < 32; ++i) {
        Cut c(n);
        for (auto& s : c) s = static_cast<char>(rng.below(2));
        candidates.push_back(std::move(c));
    }
    std::size_t best_size = 0;
    Cut best;
    for (Cut& c : candidates) {
        improve_cut(h, c);
        const std::size_t s = cut_size(h, c);
        if (s > best_size) {
            best_size = s;
            best = c;
        }
    }
    if (3 * best_size < h.num_edges()) throw ContractError("regularize: cut below |E|/3");

    const double slack = nearly_regular_slack(n);
    Attempt chosen = try_orientation(h, best, 0, slack);
    Attempt alt = try_orientation(h, best, 1, slack);
    if (alt.kept > chosen.kept) chosen = std::move(alt);

    if (chosen.kept == 0) {
        // Pruning emptied both attempts: fall back to the star at a max-degree vertex.
        Vertex c = 0;
        for (Vertex v = 0; v < n; ++v)
            if (h.degree(v) > h.degree(c)) c = v;
        chosen.ua = h.neighbors(c);
        chosen.ub = {c};
        chosen.da = 1;
        chosen.db = h.degree(c);
        chosen.kept = h.neighbors(c).size();
    }

    if (chosen.ua.size() < chosen.ub.size()) {
        std::swap(chosen.ua, chosen.ub);
        std::swap(chosen.da, chosen.db);
    }
    std::vector<char> in1(n, 0);
    for (Vertex w : chosen.ub) in1[w] = 1;
    std::vector<Edge> edges;
    for (Vertex v : chosen.ua)
        for (Vertex w : h.neighbors(v))
            if (in1[w]) edges.push_back({v, w});

    RegularizeResult out;
    out.witness.U0 = chosen.ua;
    out.witness.U1 = chosen.ub;
    out.witness.tau = {static_cast<int>(chosen.ua.size()), static_cast<int>(chosen.ub.size()),
                       chosen.da, chosen.db};
    out.witness.n = n;
    out.witness.slack = slack;
    out.piece = BipartiteGraph(n, chosen.ua, chosen.ub, std::move(edges));
    return out;
}

int decomposition_piece_cap(int n) {
    const double l = std::max(1.0, std::log(static_cast<double>(std::max(n, 1))));
    return static_cast<int>(std::ceil(kPieceCapConstant * l * l * l));
}

std::vector<DecompositionPiece> decompose(const Graph& h, int lambda, std::uint64_t seed) {
    std::vector<DecompositionPiece> pieces;
    const int n = h.num_vertices();
    std::vector<Edge> remaining = h.edges();
    const int cap = decomposition_piece_cap(n);
    for (std::uint64_t round = 0; !remaining.empty(); ++round) {
        if (static_cast<int>(pieces.size()) >= cap)
            throw ContractError("decompose: exceeded the piece cap of " + std::to_string(cap) +
                                " with " + std::to_string(remaining.size()) + " edges left");
        RegularizeResult r = regularize(Graph(n, remaining), derive_seed(seed, round));
        if (r.witness.tau.max_entry() > lambda)
            throw DomainError("decompose: piece " + r.witness.tau.str() + " exceeds lambda=" +
                              std::to_string(lambda));
        std::vector<Edge> taken = normalize_edges(r.piece.edges());
        std::vector<Edge> rest;
        std::set_difference(remaining.begin(), remaining.end(), taken.begin(), taken.end(),
                            std::back_inserter(rest));
        remaining = std::move(rest);
        pieces.push_back({r.witness.tau, std::move(r.piece)});
    }
    return pieces;
}

}  // namespace spannerforge
