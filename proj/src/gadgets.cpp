#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mpm/gadgets.hpp"

namespace mpm::gadgets {

namespace {

std::string edge_tag(const Edge& e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

std::string meta(const nlohmann::json& j) { return j.dump(); }

}  // namespace

const Edge& GadgetLabels::at(const std::string& name) const {
    auto it = edges.find(name);
    if (it == edges.end()) throw std::out_of_range("no gadget label named '" + name + "'");
    return it->second;
}

std::string GadgetLabels::to_json() const {
    nlohmann::json names = nlohmann::json::object();
    for (const auto& [name, e] : edges) names[name] = {e.u, e.v};
    nlohmann::json doc;
    doc["labels"] = names;
    return doc.dump(2) + "\n";
}

MaxcutGadget gen_maxcut_gadget(int n, const EdgeSet& edges, long long k) {
    if (n < 0) throw std::invalid_argument("gen_maxcut_gadget: negative vertex count");
    EdgeSet g_edges = edges;
    core::canonicalize(g_edges);
    std::vector<std::vector<int>> inc_of(n);  // incident edge indices, ascending
    for (size_t j = 0; j < g_edges.size(); ++j) {
        const Edge& e = g_edges[j];
        if (e.u == e.v) throw std::invalid_argument("gen_maxcut_gadget: self-loop");
        if (e.u < 0 || e.v >= n)
            throw std::invalid_argument("gen_maxcut_gadget: endpoint out of range");
        inc_of[e.u].push_back(static_cast<int>(j));
        inc_of[e.v].push_back(static_cast<int>(j));
    }
    for (int v = 0; v < n; ++v)
        if (inc_of[v].empty())
            throw std::invalid_argument("gen_maxcut_gadget: isolated vertex " +
                                        std::to_string(v));

    // Incidence ids in (vertex, edge index) order. Each incidence owns six
    // vertices: the X-path (X0 X1 X2, marked edge X0X1) and the Y-path
    // (Y0 Y1 Y2, marked edge Y0Y1); X0/Y0 are the marked endpoints.
    const long long m = static_cast<long long>(g_edges.size());
    std::vector<std::vector<int>> inc_id(n);
    int t = 0;
    for (int v = 0; v < n; ++v)
        for (size_t i = 0; i < inc_of[v].size(); ++i) inc_id[v].push_back(t++);
    auto find_inc = [&](int v, int j) {
        for (size_t i = 0; i < inc_of[v].size(); ++i)
            if (inc_of[v][i] == j) return inc_id[v][i];
        throw std::logic_error("gen_maxcut_gadget: incidence lookup failed");
    };
    auto X0 = [](int id) { return 6 * id; };
    auto X1 = [](int id) { return 6 * id + 1; };
    auto X2 = [](int id) { return 6 * id + 2; };
    auto Y0 = [](int id) { return 6 * id + 3; };
    auto Y1 = [](int id) { return 6 * id + 4; };
    auto Y2 = [](int id) { return 6 * id + 5; };
    int next = 6 * t;

    MaxcutGadget out;
    EdgeSet e1, e2;
    for (int v = 0; v < n; ++v)
        for (size_t i = 0; i < inc_of[v].size(); ++i) {
            const int id = inc_id[v][i];
            const std::string tag =
                std::to_string(v) + "," + edge_tag(g_edges[inc_of[v][i]]);
            const Edge x(X0(id), X1(id)), xbar(X1(id), X2(id));
            const Edge y(Y0(id), Y1(id)), ybar(Y1(id), Y2(id));
            for (const Edge& e : {x, xbar, y, ybar}) {
                e1.push_back(e);
                e2.push_back(e);
            }
            out.labels.edges["x[" + tag + "]"] = x;
            out.labels.edges["xbar[" + tag + "]"] = xbar;
            out.labels.edges["y[" + tag + "]"] = y;
            out.labels.edges["ybar[" + tag + "]"] = ybar;
        }

    // Stage 1: a 6-cycle through Y^e_v, Y^e_w per edge e = vw (marked
    // endpoint of one path to unmarked endpoint of the other, both ways) ...
    for (size_t j = 0; j < g_edges.size(); ++j) {
        const int tv = find_inc(g_edges[j].u, static_cast<int>(j));
        const int tw = find_inc(g_edges[j].v, static_cast<int>(j));
        e1.push_back(Edge(Y0(tv), Y2(tw)));
        e1.push_back(Edge(Y0(tw), Y2(tv)));
    }
    // ... and a 4deg(v)-cycle through X(v) per vertex, X(v) in edge-index
    // order, consecutive paths joined marked-to-unmarked through a fresh
    // connector vertex.
    std::vector<int> connectors;
    std::vector<int> owner;  // input vertex whose cycle a connector sits on
    for (int v = 0; v < n; ++v) {
        const size_t d = inc_of[v].size();
        for (size_t i = 0; i < d; ++i) {
            const int cur = inc_id[v][i];
            const int nxt = inc_id[v][(i + 1) % d];
            const int c = next++;
            connectors.push_back(c);
            owner.push_back(v);
            e1.push_back(Edge(X0(cur), c));
            e1.push_back(Edge(c, X2(nxt)));
        }
    }

    // Stage 2: a 6-cycle through X^e_v, Y^e_v per incidence (marked-marked
    // and unmarked-unmarked endpoint edges).
    for (int id = 0; id < t; ++id) {
        e2.push_back(Edge(X0(id), Y0(id)));
        e2.push_back(Edge(X2(id), Y2(id)));
    }

    // The connectors are isolated in stage 2 so far; close one even cycle
    // over them to make the instance spanning. The construction guarantees
    // they are even in number and independent in stage 1.
    if (connectors.size() % 2 != 0)
        throw std::logic_error("gen_maxcut_gadget: odd number of connector vertices");
    {
        std::vector<char> is_conn(next, 0);
        for (int c : connectors) is_conn[c] = 1;
        for (const Edge& e : e1)
            if (is_conn[e.u] && is_conn[e.v])
                throw std::logic_error(
                    "gen_maxcut_gadget: connector vertices not independent in stage 1");
    }
    // Cycle order: when the input is 2-colorable, the rest of the gadget
    // forces every proper 2-coloring of the union graph to place connectors
    // of opposite input color classes on opposite sides, so the cycle must
    // alternate between the classes to keep the union bipartite. Each class
    // holds exactly |E| connectors (its vertex degrees sum to |E|), so the
    // classes interleave evenly. A non-2-colorable input has no bipartite
    // union either way; connectors are then chained in ascending order.
    std::vector<int> wcycle = connectors;
    {
        std::vector<int> colour(n, -1);
        bool two_colourable = true;
        std::vector<std::vector<int>> adj(n);
        for (const Edge& e : g_edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        for (int s = 0; s < n && two_colourable; ++s) {
            if (colour[s] != -1) continue;
            colour[s] = 0;
            std::vector<int> queue{s};
            for (size_t head = 0; head < queue.size() && two_colourable; ++head) {
                const int u = queue[head];
                for (int w : adj[u]) {
                    if (colour[w] == -1) {
                        colour[w] = 1 - colour[u];
                        queue.push_back(w);
                    } else if (colour[w] == colour[u]) {
                        two_colourable = false;
                        break;
                    }
                }
            }
        }
        if (two_colourable) {
            std::vector<int> lo, hi;
            for (size_t i = 0; i < connectors.size(); ++i)
                (colour[owner[i]] == 0 ? lo : hi).push_back(connectors[i]);
            if (lo.size() != hi.size())
                throw std::logic_error(
                    "gen_maxcut_gadget: connector colour classes are unbalanced");
            wcycle.clear();
            for (size_t i = 0; i < lo.size(); ++i) {
                wcycle.push_back(lo[i]);
                wcycle.push_back(hi[i]);
            }
        }
    }
    if (wcycle.size() == 2) {
        e2.push_back(Edge(wcycle[0], wcycle[1]));
    } else if (wcycle.size() > 2) {
        for (size_t i = 0; i < wcycle.size(); ++i)
            e2.push_back(Edge(wcycle[i], wcycle[(i + 1) % wcycle.size()]));
    }

    core::canonicalize(e1);
    core::canonicalize(e2);
    out.graph.n = next;
    out.graph.stages = {std::move(e1), std::move(e2)};
    out.graph.name = "maxcut-gadget";
    out.kappa = 3 * m + k;
    out.graph.meta_json =
        meta({{"kappa", out.kappa}, {"k", k}, {"source_n", n}, {"source_m", m}});
    return out;
}

namespace {

// Vertex numbering of the gap family: the a-grid, then the b-grid, then the
// c and d chain vertices.
struct GapIds {
    int k;
    int a(int i, int j) const { return i * (k + 1) + j; }
    int b(int i, int j) const { return (k + 1) * (k + 1) + i * (k + 1) + j; }
    int c(int t) const { return 2 * (k + 1) * (k + 1) + (t - 1); }
    int d(int t) const { return 2 * (k + 1) * (k + 1) + k + (t - 1); }
    int total() const { return 2 * (k + 1) * (k + 1) + 2 * k; }
};

}  // namespace

LabeledInstance gen_lp_gap(int k) {
    if (k < 3) throw std::invalid_argument("gen_lp_gap requires k >= 3");
    const GapIds id{k};
    LabeledInstance out;
    EdgeSet e1, e2;
    // Shared edges a_{i,j} b_{i,j}: the entire stage intersection.
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            const Edge s(id.a(i, j), id.b(i, j));
            e1.push_back(s);
            e2.push_back(s);
            out.labels.edges["shared[" + std::to_string(i) + "," + std::to_string(j) +
                             "]"] = s;
        }
    // Stage-1 paths run down the first index, stage-2 paths down the second:
    // each stage-1 path meets each stage-2 path in exactly one shared edge.
    for (int i = 1; i <= k; ++i)
        for (int j = 0; j <= k; ++j) e1.push_back(Edge(id.b(i - 1, j), id.a(i, j)));
    for (int i = 0; i <= k; ++i)
        for (int j = 1; j <= k; ++j) e2.push_back(Edge(id.b(i, j - 1), id.a(i, j)));
    // c/d chains join neighboring paths into one component per stage; the
    // reversed indexing phi(i) = k-i+1 in stage 2 keeps the chain edges of
    // the two stages disjoint.
    for (int j = 1; j <= k; ++j) {
        e1.push_back(Edge(id.c(j), id.a(0, j - 1)));
        e1.push_back(Edge(id.c(j), id.a(0, j)));
        e1.push_back(Edge(id.b(k, j - 1), id.d(j)));
        e1.push_back(Edge(id.b(k, j), id.d(j)));
    }
    for (int i = 1; i <= k; ++i) {
        const int phi = k - i + 1;
        e2.push_back(Edge(id.c(phi), id.a(i - 1, 0)));
        e2.push_back(Edge(id.c(phi), id.a(i, 0)));
        e2.push_back(Edge(id.b(i - 1, k), id.d(phi)));
        e2.push_back(Edge(id.b(i, k), id.d(phi)));
    }
    core::canonicalize(e1);
    core::canonicalize(e2);
    out.graph.n = id.total();
    out.graph.stages = {std::move(e1), std::move(e2)};
    out.graph.name = "lp-gap";
    out.graph.meta_json = meta({{"k", k}, {"mu", (k + 1) * (k + 1)}});
    return out;
}

lp::FractionalAssignment gen_lp_gap_fractional(int k) {
    if (k < 3) throw std::invalid_argument("gen_lp_gap_fractional requires k >= 3");
    const GapIds id{k};
    const lp::Rational lam(1, k + 1);
    lp::FractionalAssignment a;
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            const Edge s(id.a(i, j), id.b(i, j));
            a.x[0][s] = lam;
            a.x[1][s] = lam;
            a.z[s] = lam;
        }
    for (int i = 1; i <= k; ++i)
        for (int j = 0; j <= k; ++j) a.x[0][Edge(id.b(i - 1, j), id.a(i, j))] = 1 - lam;
    for (int i = 0; i <= k; ++i)
        for (int j = 1; j <= k; ++j) a.x[1][Edge(id.b(i, j - 1), id.a(i, j))] = 1 - lam;
    // Chain values interpolate so each chain vertex's degree row sums to 1:
    // the j-th c vertex splits 1 as (1 - j*lam) + j*lam, and symmetrically
    // for d; stage 2 uses its reversed chain indexing.
    for (int j = 1; j <= k; ++j) {
        a.x[0][Edge(id.c(j), id.a(0, j - 1))] = 1 - j * lam;
        a.x[0][Edge(id.c(j), id.a(0, j))] = j * lam;
        a.x[0][Edge(id.b(k, j - 1), id.d(j))] = 1 - j * lam;
        a.x[0][Edge(id.b(k, j), id.d(j))] = j * lam;
    }
    for (int i = 1; i <= k; ++i) {
        const int phi = k - i + 1;
        a.x[1][Edge(id.c(phi), id.a(i - 1, 0))] = 1 - i * lam;
        a.x[1][Edge(id.c(phi), id.a(i, 0))] = i * lam;
        a.x[1][Edge(id.b(i - 1, k), id.d(phi))] = 1 - i * lam;
        a.x[1][Edge(id.b(i, k), id.d(phi))] = i * lam;
    }
    return a;
}

LabeledInstance gen_counterexample() {
    // Left block a..f = 0..5, right block a'..f' = 6..11. The 7-edge block
    // {ac, ce, eb, bd, df, fa, cd} has exactly three perfect matchings; the
    // 6-cycle a-b-c-d-e-f is the other stage's shape.
    auto seven = [](int o) {
        return EdgeSet{Edge(o + 0, o + 2), Edge(o + 2, o + 4), Edge(o + 4, o + 1),
                       Edge(o + 1, o + 3), Edge(o + 3, o + 5), Edge(o + 5, o + 0),
                       Edge(o + 2, o + 3)};
    };
    auto cycle = [](int o) {
        return EdgeSet{Edge(o + 0, o + 1), Edge(o + 1, o + 2), Edge(o + 2, o + 3),
                       Edge(o + 3, o + 4), Edge(o + 4, o + 5), Edge(o + 5, o + 0)};
    };
    EdgeSet odd = seven(0), even = cycle(0);
    {
        EdgeSet right = cycle(6);
        odd.insert(odd.end(), right.begin(), right.end());
        right = seven(6);
        even.insert(even.end(), right.begin(), right.end());
    }
    core::canonicalize(odd);
    core::canonicalize(even);

    LabeledInstance out;
    out.graph.n = 12;
    out.graph.stages = {odd, even, odd, even};
    out.graph.name = "counterexample";
    out.labels.edges["e1"] = Edge(5, 0);    // fa
    out.labels.edges["e2"] = Edge(2, 3);    // cd
    out.labels.edges["e3"] = Edge(11, 6);   // f'a'
    out.labels.edges["e4"] = Edge(8, 9);    // c'd'
    out.labels.edges["f1"] = Edge(4, 1);    // eb
    out.labels.edges["f2"] = Edge(10, 7);   // e'b'
    return out;
}

TemporalGraph gen_two_cycles(int k) {
    if (k < 6 || k % 2 != 0)
        throw std::invalid_argument(
            "gen_two_cycles requires an even k >= 6 (two shorter cycles cannot share "
            "exactly one edge)");
    TemporalGraph g;
    g.n = k;
    EdgeSet c1;
    for (int i = 0; i < k; ++i) c1.push_back(Edge(i, (i + 1) % k));
    // Second cycle: 0, 1, then the remaining odds ascending, then the evens
    // ascending, closing back to 0; it shares exactly {0,1} with the first.
    std::vector<int> seq = {0};
    for (int i = 1; i < k; i += 2) seq.push_back(i);
    for (int i = 2; i <= k - 2; i += 2) seq.push_back(i);
    EdgeSet c2;
    for (size_t i = 0; i < seq.size(); ++i)
        c2.push_back(Edge(seq[i], seq[(i + 1) % seq.size()]));
    core::canonicalize(c1);
    core::canonicalize(c2);
    g.stages = {std::move(c1), std::move(c2)};
    g.name = "two-cycles";
    g.meta_json = meta({{"k", k}});
    return g;
}

TemporalGraph gen_alternating(int tau) {
    if (tau < 2) throw std::invalid_argument("gen_alternating requires tau >= 2");
    TemporalGraph g;
    g.n = 4;
    EdgeSet odd = {Edge(0, 1), Edge(2, 3)};
    EdgeSet even = {Edge(1, 2), Edge(0, 3)};
    core::canonicalize(odd);
    core::canonicalize(even);
    for (int i = 0; i < tau; ++i) g.stages.push_back(i % 2 == 0 ? odd : even);
    g.name = "alternating";
    g.meta_json = meta({{"tau", tau}});
    return g;
}

TemporalGraph gen_random(int n, int tau, double p, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("gen_random requires even n >= 2");
    if (tau < 1) throw std::invalid_argument("gen_random requires tau >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("gen_random requires 0 < p <= 1");
    std::mt19937_64 rng(seed);
    auto draw = [&](int bound) { return static_cast<int>(rng() % bound); };
    TemporalGraph g;
    g.n = n;
    for (int s = 0; s < tau; ++s) {
        // Force one uniform perfect matching so the stage is always feasible.
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[draw(i + 1)]);
        EdgeSet es;
        for (int i = 0; i + 1 < n; i += 2) es.push_back(Edge(perm[i], perm[i + 1]));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const double coin = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                if (coin < p) es.push_back(Edge(u, v));
            }
        core::canonicalize(es);
        g.stages.push_back(std::move(es));
    }
    g.name = "random";
    g.meta_json = meta({{"n", n}, {"tau", tau}, {"p", p}, {"seed", seed}});
    return g;
}

}  // namespace mpm::gadgets
