#include "spannerforge/relaxations.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include "spannerforge/errors.hpp"

namespace spannerforge {

namespace {

std::string edge_name(Vertex a, Vertex b) { return std::to_string(a) + "_" + std::to_string(b); }

std::string set_name(const std::string& prefix, const BipartiteGraph& g, const HostItems& items,
                     const std::vector<int>& members) {
    if (members.empty()) return prefix + "_empty";
    std::string s = prefix;
    for (int it : members) {
        s += '_';
        s += items.name(g, it);
    }
    return s;
}

// Visits the subsets of size k in colex order, which is id order.
template <class F>
void for_each_subset(const SubsetIndex& idx, int k, F&& f) {
    const int m = idx.items();
    if (k > m) return;
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 0);
    std::size_t id = idx.first_of_size(k);
    for (;;) {
        f(id, static_cast<const std::vector<int>&>(c));
        ++id;
        int i = 0;
        while (i < k && c[i] + 1 == (i + 1 < k ? c[i + 1] : m)) ++i;
        if (i == k) break;
        ++c[i];
        for (int j = 0; j < i; ++j) c[j] = j;
    }
}

std::vector<int> with_item(const std::vector<int>& t, int x) {
    std::vector<int> out;
    out.reserve(t.size() + 1);
    auto it = std::lower_bound(t.begin(), t.end(), x);
    out.insert(out.end(), t.begin(), it);
    if (it == t.end() || *it != x) out.push_back(x);
    out.insert(out.end(), it, t.end());
    return out;
}

// Vertices that can carry weight: iteratively drop those whose surviving degree is
// below the lower degree bound of their side.
std::vector<char> degree_core(const BipartiteGraph& g, const ParamTuple& tau, double slack) {
    std::vector<char> keep(g.universe(), 0);
    std::vector<int> deg(g.universe(), 0);
    const double thr[2] = {slack * tau.d0 - kRegularityTolerance, slack * tau.d1 - kRegularityTolerance};
    std::deque<Vertex> queue;
    for (Vertex v : g.vertices()) {
        keep[v] = 1;
        deg[v] = g.degree(v);
        if (deg[v] < thr[g.side_of(v)]) {
            keep[v] = 0;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex u : g.neighbors(v)) {
            if (!keep[u]) continue;
            if (--deg[u] < thr[g.side_of(u)]) {
                keep[u] = 0;
                queue.push_back(u);
            }
        }
    }
    return keep;
}

void check_arity(int q) {
    if (q < 2) throw ParameterError("set relaxation needs q >= 2, got " + std::to_string(q));
}

}  // namespace

KpLp build_kp_lp(const Graph& g) {
    KpLp out;
    LinearProgram& lp = out.lp;
    for (const Edge& e : g.edges()) out.x_var.push_back(lp.add_variable("x_" + edge_name(e.u, e.v), 0.0, 1.0));
    out.lambda_var = lp.add_variable("lambda", 0.0, kInfinity);
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edges()[i];
        std::vector<Term> cover{{out.x_var[i], 1.0}};
        const auto& nu = g.neighbors(e.u);
        const auto& nv = g.neighbors(e.v);
        std::vector<Vertex> common;
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
        for (Vertex w : common) {
            const int p = lp.add_variable("x_" + edge_name(e.u, e.v) + "_w" + std::to_string(w), 0.0, 1.0);
            cover.push_back({p, 1.0});
            const int xa = out.x_var[*g.edge_index(e.u, w)];
            const int xb = out.x_var[*g.edge_index(e.v, w)];
            lp.add_row({{p, 1.0}, {xa, -1.0}}, Relation::LessEqual, 0.0,
                       "path_" + edge_name(e.u, e.v) + "_w" + std::to_string(w) + "_a");
            lp.add_row({{p, 1.0}, {xb, -1.0}}, Relation::LessEqual, 0.0,
                       "path_" + edge_name(e.u, e.v) + "_w" + std::to_string(w) + "_b");
        }
        lp.add_row(std::move(cover), Relation::GreaterEqual, 1.0, "cover_" + edge_name(e.u, e.v));
    }
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        std::vector<Term> deg;
        for (Vertex v : g.neighbors(u)) deg.push_back({out.x_var[*g.edge_index(u, v)], 1.0});
        deg.push_back({out.lambda_var, -1.0});
        lp.add_row(std::move(deg), Relation::LessEqual, 0.0, "deg_" + std::to_string(u));
    }
    lp.set_objective(Sense::Minimize, {{out.lambda_var, 1.0}});
    return out;
}

SetVariableBlock::SetVariableBlock(BipartiteGraph host, HostItems items, int q, int first_var, ParamTuple tau,
                                   double slack, bool active)
    : host_(std::move(host)),
      items_(std::move(items)),
      index_(items_.size(), q),
      tau_(tau),
      q_(q),
      first_var_(first_var),
      slack_(slack),
      active_(active) {}

int SetVariableBlock::var(std::span<const Vertex> vertices, std::span<const std::size_t> edges) const {
    if (!active_) return -1;
    std::vector<int> ids;
    ids.reserve(vertices.size() + edges.size());
    for (Vertex v : vertices) {
        const int it = items_.vertex_item(v);
        if (it < 0) return -1;
        ids.push_back(it);
    }
    for (std::size_t e : edges) {
        const int it = items_.edge_item(e);
        if (it < 0) return -1;
        ids.push_back(it);
    }
    return var_of_items(std::move(ids));
}

int SetVariableBlock::var_of_items(std::vector<int> item_ids) const {
    if (!active_) return -1;
    std::sort(item_ids.begin(), item_ids.end());
    item_ids.erase(std::unique(item_ids.begin(), item_ids.end()), item_ids.end());
    return first_var_ + static_cast<int>(index_.rank(item_ids));
}

SetVariableBlock add_set_block(LinearProgram& lp, const BipartiteGraph& host, const ParamTuple& tau, int q,
                               const SetBlockOptions& options) {
    check_arity(q);
    const int n_slack = options.slack_n > 0 ? options.slack_n : host.num_vertices();
    const double slack = nearly_regular_slack(n_slack);

    HostItems items;
    if (options.prune) {
        const auto keep = degree_core(host, tau, slack);
        int kept[2] = {0, 0};
        for (Vertex v : host.vertices())
            if (keep[v]) ++kept[host.side_of(v)];
        if (kept[0] < tau.k0 || kept[1] < tau.k1) return SetVariableBlock(host, HostItems(), q, -1, tau, slack, false);
        items = HostItems(host, keep);
    } else {
        items = HostItems(host);
    }

    const SubsetIndex idx(items.size(), q);
    const int first = lp.num_variables();
    for (int k = 0; k <= q; ++k)
        for_each_subset(idx, k, [&](std::size_t, const std::vector<int>& t) {
            lp.add_variable(set_name(options.prefix, host, items, t), 0.0, 1.0);
        });
    auto var = [&](const std::vector<int>& t) { return first + static_cast<int>(idx.rank(t)); };

    std::vector<int> side_items[2];
    for (int it = 0; it < items.num_vertices(); ++it) side_items[host.side_of(items.vertex_of(it))].push_back(it);
    const int k_side[2] = {tau.k0, tau.k1};
    const int d_side[2] = {tau.d0, tau.d1};
    const std::string& pre = options.prefix;

    for (int k = 0; k <= q - 1; ++k) {
        for_each_subset(idx, k, [&](std::size_t id, const std::vector<int>& t) {
            const int yt = first + static_cast<int>(id);
            const std::string tag = std::to_string(id);
            // Side sizes.
            for (int b = 0; b < 2; ++b) {
                std::vector<Term> terms;
                terms.reserve(side_items[b].size() + 1);
                for (int v : side_items[b]) terms.push_back({var(with_item(t, v)), 1.0});
                terms.push_back({yt, -static_cast<double>(k_side[b])});
                lp.add_row(std::move(terms), Relation::Equal, 0.0, pre + "_size" + std::to_string(b) + "_" + tag);
            }
            // Degrees of the vertices already in T.
            for (int it : t) {
                if (!items.is_vertex(it)) continue;
                const Vertex v = items.vertex_of(it);
                const int b = host.side_of(v);
                std::vector<Term> terms;
                for (Vertex u : host.neighbors(v)) {
                    const int e = items.edge_item(*host.edge_index(v, u));
                    if (e >= 0) terms.push_back({var(with_item(t, e)), 1.0});
                }
                auto upper = terms;
                upper.push_back({yt, -static_cast<double>(d_side[b])});
                terms.push_back({yt, -slack * d_side[b]});
                const std::string vt = "_" + tag + "_" + std::to_string(it);
                lp.add_row(std::move(upper), Relation::LessEqual, 0.0, pre + "_degup" + vt);
                lp.add_row(std::move(terms), Relation::GreaterEqual, 0.0, pre + "_deglo" + vt);
            }
            // An edge in T brings its endpoints along.
            for (int it : t) {
                if (items.is_vertex(it)) continue;
                const Edge& e = host.edges()[items.edge_of(it)];
                for (Vertex x : {e.u, e.v}) {
                    const int xi = items.vertex_item(x);
                    if (std::binary_search(t.begin(), t.end(), xi)) continue;
                    lp.add_row({{yt, 1.0}, {var(with_item(t, xi)), -1.0}}, Relation::Equal, 0.0,
                               pre + "_ends_" + tag + "_" + std::to_string(xi));
                }
            }
        });
    }
    // Monotone under inclusion; immediate subsets suffice by transitivity.
    for (int k = 1; k <= q; ++k) {
        for_each_subset(idx, k, [&](std::size_t id, const std::vector<int>& t) {
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::vector<int> sub = t;
                sub.erase(sub.begin() + static_cast<long>(i));
                lp.add_row({{first + static_cast<int>(id), 1.0}, {var(sub), -1.0}}, Relation::LessEqual, 0.0,
                           pre + "_mono_" + std::to_string(id) + "_" + std::to_string(t[i]));
            }
        });
    }
    return SetVariableBlock(host, std::move(items), q, first, tau, slack, true);
}

BipartiteSmesLp build_bipartite_smes_lp(const BipartiteGraph& host, const ParamTuple& tau, int q,
                                        const SetBlockOptions& options) {
    BipartiteSmesLp out;
    out.block = add_set_block(out.lp, host, tau, q, options);
    return out;
}

SmesBlock add_smes_block(LinearProgram& lp, const Graph& g, const ParamTuple& tau, int q,
                         const SetBlockOptions& options) {
    check_arity(q);
    SetBlockOptions opts = options;
    if (opts.slack_n <= 0) opts.slack_n = std::max(1, g.num_vertices());
    SmesBlock out;
    out.y = add_set_block(lp, double_cover(g), tau, q, opts);
    out.z_vertex.assign(g.num_vertices(), -1);
    out.z_edge.assign(g.num_edges(), -1);
    if (!out.y.active()) return out;

    const SetVariableBlock& y = out.y;
    const BipartiteGraph& host = y.host();
    out.z_empty = y.empty_var();
    const std::string& zp = options.z_prefix;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        std::vector<Term> terms;
        for (int s = 0; s < 2; ++s) {
            const Vertex c[] = {cover_id(v, s)};
            const int yv = y.var(c, {});
            if (yv >= 0) terms.push_back({yv, 1.0});
        }
        if (terms.empty()) continue;
        const int z = lp.add_variable(zp + "_v" + std::to_string(v), 0.0, 1.0);
        out.z_vertex[v] = z;
        terms.push_back({z, -1.0});
        lp.add_row(std::move(terms), Relation::Equal, 0.0, zp + "_link_v" + std::to_string(v));
        lp.add_row({{z, 1.0}, {out.z_empty, -1.0}}, Relation::LessEqual, 0.0, zp + "_cap_v" + std::to_string(v));
    }
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edges()[i];
        std::vector<Term> terms;
        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            const std::size_t he[] = {*host.edge_index(cover_id(a, 0), cover_id(b, 1))};
            const int ye = y.var({}, he);
            if (ye >= 0) terms.push_back({ye, 1.0});
        }
        if (terms.empty()) continue;
        const std::string name = edge_name(e.u, e.v);
        const int z = lp.add_variable(zp + "_e" + name, 0.0, 1.0);
        out.z_edge[i] = z;
        terms.push_back({z, -1.0});
        lp.add_row(std::move(terms), Relation::Equal, 0.0, zp + "_link_e" + name);
        // A surviving copy keeps both endpoint copies alive, so both z_u and z_v exist here.
        lp.add_row({{z, 1.0}, {out.z_vertex[e.u], -1.0}}, Relation::LessEqual, 0.0, zp + "_cap_e" + name + "_a");
        lp.add_row({{z, 1.0}, {out.z_vertex[e.v], -1.0}}, Relation::LessEqual, 0.0, zp + "_cap_e" + name + "_b");
    }
    return out;
}

SmesLp build_smes_lp(const Graph& g, const ParamTuple& tau, int q, const SetBlockOptions& options) {
    SmesLp out;
    out.block = add_smes_block(out.lp, g, tau, q, options);
    return out;
}

double decomposition_constant(int max_degree) {
    const double l = 1.0 + std::log(std::max(1, max_degree));
    return kPieceCapConstant * l * l * l;
}

Ld2sLp build_ld2s_lp(const Graph& g, const std::vector<Edge>& demands, int lambda, int q,
                     const std::vector<ParamTuple>& multiset, const Ld2sOptions& options) {
    check_arity(q);
    if (lambda < 0) throw ParameterError("lambda must be non-negative");
    const auto dem = normalize_edges(demands);
    for (const Edge& e : dem)
        if (!g.has_edge(e.u, e.v)) throw InputError("demand " + edge_name(e.u, e.v) + " is not an edge of G");

    Ld2sLp out;
    out.lambda = lambda;
    out.q = q;
    out.constant = decomposition_constant(g.max_degree());
    LinearProgram& lp = out.lp;
    for (const Edge& e : g.edges()) out.x_var.push_back(lp.add_variable("x_" + edge_name(e.u, e.v), 0.0, 1.0));
    if (dem.empty()) return out;

    std::vector<std::vector<int>> blocks_at(g.num_vertices());
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        LocalGraph local = neighborhood_subgraph(g, dem, u);
        // Without a demand inside Γ(u) the block cannot cover anything.
        if (local.graph.num_edges() == 0) continue;
        for (std::size_t i = 0; i < multiset.size(); ++i) {
            SetBlockOptions opts;
            opts.prune = options.prune_blocks;
            const std::string tag = "b" + std::to_string(u) + "_" + std::to_string(i);
            opts.prefix = tag + "_y";
            opts.z_prefix = tag + "_z";
            SmesBlock smes = add_smes_block(lp, local.graph, multiset[i], q, opts);
            if (!smes.active()) {
                ++out.pruned_blocks;
                continue;
            }
            blocks_at[u].push_back(static_cast<int>(out.blocks.size()));
            out.blocks.push_back(Ld2sBlock{u, static_cast<int>(i), multiset[i], local, std::move(smes)});
        }
    }

    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        if (blocks_at[u].empty()) continue;
        std::vector<Term> terms;
        for (int b : blocks_at[u]) terms.push_back({out.blocks[b].smes.z_empty, 1.0});
        lp.add_row(std::move(terms), Relation::LessEqual, out.constant, "decomp_" + std::to_string(u));
    }
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edges()[i];
        std::vector<Term> terms;
        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}})
            for (int bi : blocks_at[a]) {
                const Ld2sBlock& blk = out.blocks[bi];
                const int z = blk.smes.z_vertex[blk.local.local_id(b)];
                if (z >= 0) terms.push_back({z, 1.0});
            }
        if (terms.empty()) continue;
        terms.push_back({out.x_var[i], -out.constant});
        lp.add_row(std::move(terms), Relation::LessEqual, 0.0, "zdecomp_" + edge_name(e.u, e.v));
    }
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        std::vector<Term> terms;
        for (Vertex v : g.neighbors(u)) terms.push_back({out.x_var[*g.edge_index(u, v)], 1.0});
        if (terms.empty()) continue;
        lp.add_row(std::move(terms), Relation::LessEqual, static_cast<double>(lambda), "deg_" + std::to_string(u));
    }
    for (const Edge& e : dem) {
        std::vector<Term> terms{{out.x_var[*g.edge_index(e.u, e.v)], 1.0}};
        const auto& nu = g.neighbors(e.u);
        const auto& nv = g.neighbors(e.v);
        std::vector<Vertex> common;
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
        for (Vertex w : common)
            for (int bi : blocks_at[w]) {
                const Ld2sBlock& blk = out.blocks[bi];
                const auto le = blk.local.graph.edge_index(blk.local.local_id(e.u), blk.local.local_id(e.v));
                const int z = blk.smes.z_edge[*le];
                if (z >= 0) terms.push_back({z, 1.0});
            }
        lp.add_row(std::move(terms), Relation::Equal, 1.0, "cover_" + edge_name(e.u, e.v));
    }
    return out;
}

void lift_into(const SetVariableBlock& block, const std::vector<Vertex>& vertices,
               const std::vector<std::size_t>& edges, std::vector<double>& x) {
    if (!block.active()) throw ContractError("lift into an inactive block");
    const HostItems& items = block.items();
    std::vector<char> in(items.size(), 0);
    for (Vertex v : vertices) {
        const int it = items.vertex_item(v);
        if (it < 0) throw ContractError("lift: vertex " + std::to_string(v) + " is not an item of the block");
        in[it] = 1;
    }
    for (std::size_t e : edges) {
        const int it = items.edge_item(e);
        if (it < 0) throw ContractError("lift: edge " + std::to_string(e) + " is not an item of the block");
        in[it] = 1;
    }
    const SubsetIndex& idx = block.index();
    for (int k = 0; k <= block.arity(); ++k)
        for_each_subset(idx, k, [&](std::size_t id, const std::vector<int>& t) {
            bool all = true;
            for (int it : t)
                if (!in[it]) { all = false; break; }
            x[block.first_var() + id] = all ? 1.0 : 0.0;
        });
}

void lift_smes_into(const SmesBlock& block, const Graph& g, const BipartiteGraph& piece, std::vector<double>& x) {
    const BipartiteGraph& host = block.y.host();
    std::vector<Vertex> cv;
    for (int s = 0; s < 2; ++s)
        for (Vertex v : piece.side(s)) {
            cv.push_back(cover_id(v, s));
            const int z = block.z_vertex.at(v);
            if (z < 0) throw ContractError("lift: vertex pruned from its block");
            x[z] = 1.0;
        }
    std::vector<std::size_t> ce;
    for (const Edge& e : piece.edges()) {
        const auto ge = g.edge_index(e.u, e.v);
        if (!ge) throw InputError("lift: " + edge_name(e.u, e.v) + " is not an edge of the base graph");
        ce.push_back(*host.edge_index(cover_id(e.u, 0), cover_id(e.v, 1)));
        const int z = block.z_edge[*ge];
        if (z < 0) throw ContractError("lift: edge pruned from its block");
        x[z] = 1.0;
    }
    lift_into(block.y, cv, ce, x);
}

std::vector<double> integral_lift(const BipartiteSmesLp& lp, const std::vector<Vertex>& vertices,
                                  const std::vector<Edge>& edges) {
    const BipartiteGraph& host = lp.block.host();
    std::vector<std::size_t> ids;
    for (const Edge& e : edges) {
        const auto i = host.edge_index(e.u, e.v);
        if (!i) throw InputError("lift: " + edge_name(e.u, e.v) + " is not a host edge");
        ids.push_back(*i);
    }
    std::vector<double> x(lp.lp.num_variables(), 0.0);
    lift_into(lp.block, vertices, ids, x);
    return x;
}

std::vector<std::pair<Vertex, LocalGraph>> spanner_center_graphs(const Graph& g, const std::vector<Edge>& demands,
                                                                 const std::vector<Edge>& h) {
    const auto dem = normalize_edges(demands);
    const Graph hg(g.num_vertices(), normalize_edges(h));
    std::map<Vertex, std::vector<Edge>> by_center;
    for (const Edge& e : dem) {
        if (hg.has_edge(e.u, e.v)) continue;
        const auto& nu = hg.neighbors(e.u);
        const auto& nv = hg.neighbors(e.v);
        std::vector<Vertex> common;
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
        if (common.empty()) throw InputError("demand " + edge_name(e.u, e.v) + " is not spanned by H");
        by_center[common.front()].push_back(e);
    }
    std::vector<std::pair<Vertex, LocalGraph>> out;
    for (auto& [w, es] : by_center) {
        LocalGraph local = neighborhood_subgraph(g, dem, w);
        std::vector<Edge> le;
        for (const Edge& e : es) le.push_back(make_edge(local.local_id(e.u), local.local_id(e.v)));
        out.emplace_back(w, LocalGraph{Graph(local.graph.num_vertices(), std::move(le)), std::move(local.labels)});
    }
    return out;
}

std::vector<double> lift_ld2s_solution(const Ld2sLp& lp, const Graph& g, const std::vector<Edge>& h,
                                       const std::vector<CenterPieces>& pieces) {
    std::vector<double> x(lp.lp.num_variables(), 0.0);
    for (const Edge& e : normalize_edges(h)) {
        const auto i = g.edge_index(e.u, e.v);
        if (!i) throw InputError("spanner edge " + edge_name(e.u, e.v) + " is not an edge of G");
        x[lp.x_var[*i]] = 1.0;
    }
    std::vector<char> used(lp.blocks.size(), 0);
    for (const CenterPieces& cp : pieces) {
        for (const DecompositionPiece& piece : cp.pieces) {
            int found = -1;
            for (std::size_t b = 0; b < lp.blocks.size(); ++b)
                if (!used[b] && lp.blocks[b].u == cp.w && lp.blocks[b].tau == piece.tau) {
                    found = static_cast<int>(b);
                    break;
                }
            if (found < 0)
                throw ContractError("no unused block for " + piece.tau.str() + " at vertex " + std::to_string(cp.w));
            used[found] = 1;
            lift_smes_into(lp.blocks[found].smes, lp.blocks[found].local.graph, piece.piece, x);
        }
    }
    return x;
}

std::vector<ParamTuple> multiset_from_pieces(const std::vector<CenterPieces>& pieces) {
    std::map<ParamTuple, int> mult;
    for (const CenterPieces& cp : pieces) {
        std::map<ParamTuple, int> here;
        for (const auto& p : cp.pieces) ++here[p.tau];
        for (const auto& [t, c] : here) mult[t] = std::max(mult[t], c);
    }
    std::vector<ParamTuple> out;
    for (const auto& [t, c] : mult) out.insert(out.end(), c, t);
    return out;
}

BlockValues::BlockValues(const SetVariableBlock& block, std::span<const double> solution)
    : block_(&block), x_(solution) {
    if (!block.active()) throw DomainError("block has no variables");
    const double e = solution[block.empty_var()];
    if (e <= 1e-12) throw DomainError("block has zero weight");
    scale_ = 1.0 / e;
}

double BlockValues::value(std::span<const Vertex> vertices, std::span<const std::size_t> edges) const {
    const HostItems& items = block_->items();
    std::vector<int> ids;
    ids.reserve(vertices.size() + edges.size());
    for (Vertex v : vertices) {
        const int it = items.vertex_item(v);
        if (it < 0) return 0.0;
        ids.push_back(it);
    }
    for (std::size_t e : edges) {
        const int it = items.edge_item(e);
        if (it < 0) return 0.0;
        ids.push_back(it);
    }
    const int var = block_->var_of_items(std::move(ids));
    return std::clamp(x_[var] * scale_, 0.0, 1.0);
}

}  // namespace spannerforge
