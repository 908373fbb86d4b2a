#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "spannerforge/errors.hpp"
#include "spannerforge/rounding.hpp"

namespace spannerforge {

namespace {

constexpr double kTiny = 1e-12;

int key_of(double x) { return static_cast<int>(std::floor(std::log2(x))); }

// Embeddings of one caterpillar prefix, stored flat.
struct Embeddings {
    int nv = 1;  // vertices per embedding
    std::vector<Vertex> verts;
    std::vector<std::size_t> edges;
    std::vector<double> weight;
    std::vector<int> tuple;
    std::vector<std::vector<Vertex>> tuples;

    std::size_t size() const { return weight.size(); }
};

class TupleTable {
public:
    int intern(const std::vector<Vertex>& t) {
        auto [it, fresh] = ids_.try_emplace(t, static_cast<int>(list_.size()));
        if (fresh) list_.push_back(t);
        return it->second;
    }
    std::vector<std::vector<Vertex>> take() { return std::move(list_); }

private:
    std::map<std::vector<Vertex>, int> ids_;
    std::vector<std::vector<Vertex>> list_;
};

template <class Key>
struct Choice {
    Key key{};
    double weight = -1.0;
    std::size_t buckets = 0;
};

// Heaviest bucket; ties go to the smallest key.
template <class Key>
Choice<Key> heaviest(const std::map<Key, double>& weights) {
    Choice<Key> c;
    c.buckets = weights.size();
    for (const auto& [k, w] : weights)
        if (w > c.weight * (1.0 + 1e-12) || c.weight < 0.0) {
            c.key = k;
            c.weight = w;
        }
    return c;
}

struct Candidate {
    std::size_t parent;
    Vertex w;
    std::size_t e;
    std::array<double, 4> q;  // y_w, y_e, y_{lambda+w}, y_K~
};

double spread_of(const std::vector<double>& xs) {
    if (xs.empty()) return 1.0;
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi / *lo;
}

}  // namespace

BucketingTrace bucket_caterpillars(const BipartiteGraph& g, const LiftedValues& y, const CaterpillarTemplate& k,
                                   const ParamTuple& tau, const RoundingConstants& c) {
    BucketingTrace trace;
    const double polylog = c.polylog(g.num_vertices());
    std::vector<double> yv(g.universe(), 0.0), ye(g.num_edges(), 0.0);
    for (Vertex v : g.vertices()) yv[v] = y.vertex(v);
    for (std::size_t e = 0; e < g.num_edges(); ++e) ye[e] = y.edge(e);

    // Initialization: factor-2 buckets of y_v over side 0.
    std::map<int, double> init;
    for (Vertex v : g.side(0))
        if (yv[v] > kTiny) init[key_of(yv[v])] += yv[v];
    if (init.empty()) {
        trace.failed = true;
        trace.failure = "no side-0 vertex carries LP weight";
        return trace;
    }
    const auto first = heaviest(init);
    trace.initial_key = first.key;
    trace.initial_weight = first.weight;
    Embeddings cur;
    {
        TupleTable table;
        std::vector<double> vals;
        for (Vertex v : g.side(0))
            if (yv[v] > kTiny && key_of(yv[v]) == first.key) {
                trace.initial.push_back(v);
                vals.push_back(yv[v]);
                cur.verts.push_back(v);
                cur.weight.push_back(yv[v]);
                cur.tuple.push_back(table.intern({v}));
            }
        cur.tuples = table.take();
        trace.initial_spread = spread_of(vals);
    }

    std::map<std::vector<Vertex>, double> lambda_w_cache;
    for (int t = 1; t <= k.s; ++t) {
        StepTrace st;
        st.t = t;
        st.kind = k.steps[t - 1];
        const int ui = k.rightmost[t - 1];
        const int b = k.side[ui];
        const int d_b = b == 0 ? tau.d0 : tau.d1;
        st.layer.side = b;
        st.bucket_before = cur.size();
        for (double w : cur.weight) st.weight_before += w;
        st.t0 = k.edges_from_side(t, 0);
        st.t1 = k.edges_from_side(t, 1);

        std::vector<Vertex> S;
        std::size_t total = 0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const Vertex u = cur.verts[i * cur.nv + ui];
            S.push_back(u);
            total += g.neighbors(u).size();
        }
        if (total > c.embedding_cap)
            throw DomainError("caterpillar enumeration exceeds the cap of " + std::to_string(c.embedding_cap));
        std::sort(S.begin(), S.end());
        S.erase(std::unique(S.begin(), S.end()), S.end());
        st.layer.S = S;

        // Stage 1: every extension of every prefix by one edge at the rightmost vertex.
        std::vector<Candidate> cand;
        cand.reserve(total);
        std::vector<std::size_t> kedges;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const Vertex u = cur.verts[i * cur.nv + ui];
            const std::vector<Vertex>& lam = cur.tuples[cur.tuple[i]];
            for (Vertex w : g.neighbors(u)) {
                const std::size_t e = *g.edge_index(u, w);
                Candidate cd{i, w, e, {yv[w], ye[e], 0.0, 0.0}};
                if (ye[e] <= kTiny) continue;
                std::vector<Vertex> lw = lam;
                lw.push_back(w);
                std::sort(lw.begin(), lw.end());
                lw.erase(std::unique(lw.begin(), lw.end()), lw.end());
                auto it = lambda_w_cache.find(lw);
                if (it == lambda_w_cache.end()) it = lambda_w_cache.emplace(lw, y.value(lw, {})).first;
                cd.q[2] = it->second;
                kedges.assign(cur.edges.begin() + i * (cur.nv - 1), cur.edges.begin() + (i + 1) * (cur.nv - 1));
                kedges.push_back(e);
                cd.q[3] = t == 1 ? ye[e] : y.value({}, kedges);
                if (cd.q[3] <= kTiny || cd.q[2] <= kTiny || cd.q[0] <= kTiny) continue;
                st.weight_extended += cd.q[3];
                cand.push_back(cd);
            }
        }

        auto fail = [&](const std::string& why) {
            trace.failed = true;
            trace.failed_step = t;
            trace.failure = why;
            trace.steps.push_back(std::move(st));
            return trace;
        };
        if (cand.empty()) return fail("no extension carries LP weight");

        std::vector<std::size_t> keep;
        {
            std::map<std::array<int, 4>, double> bw;
            std::vector<std::array<int, 4>> keys(cand.size());
            for (std::size_t j = 0; j < cand.size(); ++j) {
                for (int a = 0; a < 4; ++a) keys[j][a] = key_of(cand[j].q[a]);
                bw[keys[j]] += cand[j].q[3];
            }
            const auto ch = heaviest(bw);
            BucketStage sg{"values", 0, ch.weight, {ch.key.begin(), ch.key.end()}, ch.buckets, 1.0};
            std::array<std::vector<double>, 4> vals;
            for (std::size_t j = 0; j < cand.size(); ++j)
                if (keys[j] == ch.key) {
                    keep.push_back(j);
                    for (int a = 0; a < 4; ++a) vals[a].push_back(cand[j].q[a]);
                }
            sg.count = keep.size();
            for (const auto& v : vals) sg.spread = std::max(sg.spread, spread_of(v));
            st.stages.push_back(std::move(sg));
        }

        // Stages 2 and 3: uniform |T^lambda_(u,w)| and then uniform |union_u T^lambda_(u,w)|.
        auto count_stage = [&](const std::string& name, auto group_of) {
            std::map<std::pair<int, std::size_t>, std::size_t> count;
            for (std::size_t j : keep) ++count[group_of(cand[j])];
            std::map<int, double> bw;
            for (std::size_t j : keep) bw[key_of(static_cast<double>(count[group_of(cand[j])]))] += cand[j].q[3];
            const auto ch = heaviest(bw);
            std::vector<std::size_t> next;
            std::vector<double> vals;
            for (std::size_t j : keep) {
                const double cnt = static_cast<double>(count[group_of(cand[j])]);
                if (key_of(cnt) == ch.key) {
                    next.push_back(j);
                    vals.push_back(cnt);
                }
            }
            st.stages.push_back({name, next.size(), ch.weight, {ch.key}, ch.buckets, spread_of(vals)});
            keep = std::move(next);
        };
        count_stage("edge_count", [&](const Candidate& cd) {
            return std::pair<int, std::size_t>{cur.tuple[cd.parent], cd.e};
        });
        count_stage("vertex_count", [&](const Candidate& cd) {
            return std::pair<int, std::size_t>{cur.tuple[cd.parent], static_cast<std::size_t>(cd.w)};
        });

        // Stage 4: keep leaf tuples whose weight grew by about d_b.
        {
            std::vector<double> old_w(cur.tuples.size(), 0.0), new_w(cur.tuples.size(), 0.0);
            for (std::size_t i = 0; i < cur.size(); ++i) old_w[cur.tuple[i]] += cur.weight[i];
            for (std::size_t j : keep) new_w[cur.tuple[cand[j].parent]] += cand[j].q[3];
            const double need = c.prune_constant * d_b / polylog;
            std::vector<std::size_t> next;
            double kept = 0.0;
            for (std::size_t j : keep)
                if (new_w[cur.tuple[cand[j].parent]] >= need * old_w[cur.tuple[cand[j].parent]]) {
                    next.push_back(j);
                    kept += cand[j].q[3];
                }
            std::size_t tuples = 0;
            for (std::size_t l = 0; l < cur.tuples.size(); ++l) tuples += new_w[l] > 0.0;
            st.stages.push_back({"prune", next.size(), kept, {}, tuples, 1.0});
            keep = std::move(next);
        }
        if (keep.empty()) return fail("every leaf tuple was pruned");

        // B_{t+1}, the layer graph and the per-tuple subgraphs H^lambda_t.
        Embeddings nxt;
        nxt.nv = cur.nv + 1;
        TupleTable table;
        std::map<int, std::vector<std::size_t>> h_edges;
        std::map<int, std::size_t> h_count;
        std::vector<Vertex> W;
        std::vector<std::size_t> E;
        for (std::size_t j : keep) {
            const Candidate& cd = cand[j];
            const std::size_t i = cd.parent;
            nxt.verts.insert(nxt.verts.end(), cur.verts.begin() + i * cur.nv, cur.verts.begin() + (i + 1) * cur.nv);
            nxt.verts.push_back(cd.w);
            nxt.edges.insert(nxt.edges.end(), cur.edges.begin() + i * (cur.nv - 1),
                             cur.edges.begin() + (i + 1) * (cur.nv - 1));
            nxt.edges.push_back(cd.e);
            nxt.weight.push_back(cd.q[3]);
            std::vector<Vertex> lam = cur.tuples[cur.tuple[i]];
            if (st.kind == StepKind::Hair) lam.push_back(cd.w);
            nxt.tuple.push_back(table.intern(lam));
            h_edges[cur.tuple[i]].push_back(cd.e);
            ++h_count[cur.tuple[i]];
            W.push_back(cd.w);
            E.push_back(cd.e);
        }
        nxt.tuples = table.take();
        std::sort(W.begin(), W.end());
        W.erase(std::unique(W.begin(), W.end()), W.end());
        std::sort(E.begin(), E.end());
        E.erase(std::unique(E.begin(), E.end()), E.end());
        st.layer.W = std::move(W);
        st.layer.edges = std::move(E);

        std::vector<std::pair<std::vector<Vertex>, int>> order;
        for (const auto& [id, es] : h_edges) order.push_back({cur.tuples[id], id});
        std::sort(order.begin(), order.end());
        for (const auto& [lam, id] : order) {
            std::vector<std::size_t> es = h_edges[id];
            std::sort(es.begin(), es.end());
            es.erase(std::unique(es.begin(), es.end()), es.end());
            st.leaf_tuples.push_back(lam);
            st.tuple_edges.push_back(std::move(es));
            st.tuple_count.push_back(h_count[id]);
        }
        st.bucket_after = nxt.size();
        for (double w : nxt.weight) st.weight_after += w;
        trace.steps.push_back(std::move(st));
        cur = std::move(nxt);
    }
    return trace;
}

std::string BucketingTrace::dump() const {
    std::ostringstream os;
    os.precision(12);
    os << "init bucket=" << initial_key << " size=" << initial.size() << " weight=" << initial_weight
       << " spread=" << initial_spread << "\n";
    for (const StepTrace& st : steps) {
        os << "step " << st.t << " kind=" << (st.kind == StepKind::Hair ? "hair" : "backbone")
           << " side=" << st.layer.side << " |B_t|=" << st.bucket_before << " weight=" << st.weight_before
           << " extended=" << st.weight_extended
           << " |S|=" << st.layer.S.size() << " |W|=" << st.layer.W.size() << " |E|=" << st.layer.edges.size()
           << " tuples=" << st.leaf_tuples.size() << " |B_t+1|=" << st.bucket_after
           << " weight_next=" << st.weight_after << " t0=" << st.t0 << " t1=" << st.t1 << "\n";
        for (const BucketStage& sg : st.stages) {
            os << "  stage " << sg.name << " buckets=" << sg.buckets << " kept=" << sg.count
               << " weight=" << sg.weight << " key=";
            for (std::size_t a = 0; a < sg.key.size(); ++a) os << (a ? "," : "") << sg.key[a];
            if (sg.key.empty()) os << "-";
            os << " spread=" << sg.spread << "\n";
        }
    }
    if (failed) os << "failed at step " << failed_step << ": " << failure << "\n";
    return os.str();
}

}  // namespace spannerforge
