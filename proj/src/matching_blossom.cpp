// Maximum-weight perfect matching on general graphs.
//
// Primal-dual blossom algorithm in its dense, per-phase form: maintain vertex
// duals y and blossom duals z >= 0 with every edge satisfying
//     slack(uv) = y_u + y_v + sum of z over blossoms containing both - W(uv) >= 0,
// keep the matching inside the tight edges, and per phase grow an alternating
// forest from the exposed nodes, contracting odd cycles (blossoms) and
// adjusting duals until an augmenting path appears. If a dual adjustment is
// unbounded, no perfect matching exists.
//
// Implementation notes:
//  - Weights are scaled by 4 internally so that all duals stay integral; the
//    halving points assert evenness, so a scaling violation can never produce
//    a silently wrong answer.
//  - Dual adjustments are found by a full edge scan (no slack caches). This
//    costs O(E) per adjustment and keeps the state machine small; the
//    toolkit's instances are desk-scale, where this is more than fast enough.
//  - Before returning, the final matching is certified against the duals via
//    complementary slackness and strong duality. A certification failure
//    throws instead of returning a wrong optimum.
#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mpm/matching.hpp"

namespace mpm::core {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

enum class Label { Free, Outer, Inner };

struct BlossomRec {
    std::vector<int> cycle;  // child node ids, odd count, cycle[0] is the base child
    // cycle_edges[j] = (p,q): original endpoints with p in cycle[j] and
    // q in cycle[(j+1) % size]; these are the tight edges of the odd cycle.
    std::vector<std::pair<int, int>> cycle_edges;
    long long z = 0;
    bool alive = false;
};

class WeightedBlossom {
  public:
    WeightedBlossom(int n, const std::vector<std::array<long long, 3>>& scaled_edges)
        : n_(n), mate_(n, -1), y_(n, 0), parent_in_(n, -1) {
        adj_.resize(n);
        long long wmax = 0;
        for (const auto& e : scaled_edges) {
            edges_.push_back(e);
            adj_[static_cast<int>(e[0])].push_back({static_cast<int>(e[1]), e[2]});
            adj_[static_cast<int>(e[1])].push_back({static_cast<int>(e[0]), e[2]});
            wmax = std::max(wmax, e[2]);
        }
        // Uniform start duals: slack = wmax - W >= 0 for every edge.
        std::fill(y_.begin(), y_.end(), wmax / 2 + (wmax % 2 != 0 ? 1 : 0));
    }

    // Runs phases until the matching is perfect; false when none exists.
    bool solve() {
        int exposed = n_;
        while (exposed > 0) {
            if (!run_phase()) return false;
            exposed -= 2;
        }
        certify();
        return true;
    }

    const std::vector<int>& mates() const { return mate_; }

  private:
    int n_;
    std::vector<std::array<long long, 3>> edges_;         // (u, v, W)
    std::vector<std::vector<std::pair<int, long long>>> adj_;
    std::vector<int> mate_;
    std::vector<long long> y_;
    std::vector<BlossomRec> blossoms_;                     // index b -> node id n_ + b
    std::vector<int> parent_in_;                           // enclosing blossom node id or -1
    std::vector<Label> label_;                             // per node id, top nodes only
    std::vector<std::pair<int, int>> tree_edge_;           // inner nodes: (outer end, inner end)
    std::vector<int> visit_stamp_;
    int stamp_ = 0;
    std::vector<int> scan_;
    size_t scan_pos_ = 0;

    int node_count() const { return n_ + static_cast<int>(blossoms_.size()); }
    BlossomRec& rec(int id) { return blossoms_[id - n_]; }

    int top_of(int x) const {
        while (parent_in_[x] != -1) x = parent_in_[x];
        return x;
    }

    int base_of(int x) const {
        while (x >= n_) x = blossoms_[x - n_].cycle[0];
        return x;
    }

    // The direct child of blossom b that contains original vertex v.
    int child_containing(int b, int v) const {
        int x = v;
        while (parent_in_[x] != b) {
            x = parent_in_[x];
            assert(x != -1);
        }
        return x;
    }

    void collect_originals(int x, std::vector<int>& out) const {
        if (x < n_) {
            out.push_back(x);
            return;
        }
        for (int c : blossoms_[x - n_].cycle) collect_originals(c, out);
    }

    void push_originals(int x) {
        std::vector<int> vs;
        collect_originals(x, vs);
        std::sort(vs.begin(), vs.end());
        scan_.insert(scan_.end(), vs.begin(), vs.end());
    }

    void grow_arrays() {
        size_t need = node_count();
        if (label_.size() < need) {
            label_.resize(need, Label::Free);
            tree_edge_.resize(need, {-1, -1});
            visit_stamp_.resize(need, 0);
        }
    }

    long long slack(int u, int v, long long w) const { return y_[u] + y_[v] - w; }

    // ---- matching bookkeeping -----------------------------------------

    // Matches node x to the outside via the edge (u_in, v_out), u_in inside x.
    // Rewrites the interior pairing of every touched blossom and rotates the
    // cycles so that the base child is the one containing u_in.
    void set_match(int x, int u_in, int v_out) {
        if (x < n_) {
            assert(x == u_in);
            mate_[x] = v_out;
            return;
        }
        BlossomRec& b = rec(x);
        int len = static_cast<int>(b.cycle.size());
        int i = 0;
        int c = child_containing(x, u_in);
        while (b.cycle[i] != c) ++i;
        // Interior pairs around the cycle, leaving child i exposed inside.
        for (int t = 1; t + 1 < len; t += 2) {
            int j = (i + t) % len;
            int k = (i + t + 1) % len;
            auto [p, q] = b.cycle_edges[j];
            set_match(b.cycle[j], p, q);
            set_match(b.cycle[k], q, p);
        }
        set_match(c, u_in, v_out);
        std::rotate(b.cycle.begin(), b.cycle.begin() + i, b.cycle.end());
        std::rotate(b.cycle_edges.begin(), b.cycle_edges.begin() + i, b.cycle_edges.end());
    }

    // ---- forest operations ---------------------------------------------

    void graft(int u_out, int v_in, int y_node) {
        label_[y_node] = Label::Inner;
        tree_edge_[y_node] = {u_out, v_in};
        int partner = mate_[base_of(y_node)];
        assert(partner != -1);  // a free node is always matched
        int z_node = top_of(partner);
        label_[z_node] = Label::Outer;
        push_originals(z_node);
    }

    // Walks outer-node tree paths from x and y alternately; the first outer
    // node seen twice is the least common ancestor. -1 if the trees differ.
    int lca(int x, int y) {
        ++stamp_;
        int a = x, b = y;
        while (a != -1 || b != -1) {
            if (a != -1) {
                if (visit_stamp_[a] == stamp_) return a;
                visit_stamp_[a] = stamp_;
                int m = mate_[base_of(a)];
                if (m == -1) {
                    a = -1;  // reached a root
                } else {
                    int inner = top_of(m);
                    a = top_of(tree_edge_[inner].first);
                }
            }
            std::swap(a, b);
        }
        return -1;
    }

    struct Path {
        std::vector<int> nodes;                      // outer,inner,outer,... ending at lca
        std::vector<std::pair<int, int>> edges;      // edges[k]: (p in nodes[k], q in nodes[k+1])
    };

    Path collect_path(int from, int lca_node) {
        Path p;
        p.nodes.push_back(from);
        int cur = from;
        while (cur != lca_node) {
            int b = base_of(cur);
            int m = mate_[b];
            assert(m != -1);
            int inner = top_of(m);
            p.edges.push_back({b, m});
            p.nodes.push_back(inner);
            auto [p_out, q_in] = tree_edge_[inner];
            int outer = top_of(p_out);
            p.edges.push_back({q_in, p_out});
            p.nodes.push_back(outer);
            cur = outer;
        }
        return p;
    }

    void add_blossom(int u, int v, int lca_node) {
        Path pu = collect_path(top_of(u), lca_node);
        Path pv = collect_path(top_of(v), lca_node);
        BlossomRec b;
        // Cycle order: lca, ..., top(u), top(v), ..., back to lca.
        for (size_t k = pu.nodes.size(); k-- > 0;) b.cycle.push_back(pu.nodes[k]);
        for (size_t k = pu.edges.size(); k-- > 0;)
            b.cycle_edges.push_back({pu.edges[k].second, pu.edges[k].first});
        b.cycle_edges.push_back({u, v});
        for (size_t k = 0; k + 1 < pv.nodes.size(); ++k) b.cycle.push_back(pv.nodes[k]);
        for (size_t k = 0; k < pv.edges.size(); ++k) b.cycle_edges.push_back(pv.edges[k]);
        assert(b.cycle.size() % 2 == 1 && b.cycle.size() >= 3);
        assert(b.cycle.size() == b.cycle_edges.size());
        b.z = 0;
        b.alive = true;

        int id = -1;
        for (size_t i = 0; i < blossoms_.size(); ++i)
            if (!blossoms_[i].alive) {
                id = n_ + static_cast<int>(i);
                break;
            }
        if (id == -1) {
            id = node_count();
            blossoms_.push_back({});
            parent_in_.push_back(-1);
        }
        grow_arrays();
        for (int c : b.cycle) {
            if (label_[c] == Label::Inner) push_originals(c);  // members become outer
            parent_in_[c] = id;
        }
        rec(id) = std::move(b);
        parent_in_[id] = -1;
        label_[id] = Label::Outer;
    }

    // Expands one top-level blossom. If relabel is set (mid-phase expansion of
    // an inner blossom with z = 0), the even path between the tree-edge child
    // and the base child is relabelled inner/outer and the rest becomes free.
    void expand(int id, bool relabel) {
        BlossomRec cycle_copy = rec(id);  // rec slot is freed below
        rec(id).alive = false;
        rec(id).cycle.clear();
        rec(id).cycle_edges.clear();
        for (int c : cycle_copy.cycle) parent_in_[c] = -1;
        if (!relabel) return;

        assert(label_[id] == Label::Inner && cycle_copy.z == 0);
        auto [p_out, q_in] = tree_edge_[id];
        int len = static_cast<int>(cycle_copy.cycle.size());
        int j = 0;
        {
            // Children's parent pointers were just cleared, so walking up from
            // q_in stops exactly at the direct child that contains it.
            int c = q_in;
            while (parent_in_[c] != -1) c = parent_in_[c];
            while (cycle_copy.cycle[j] != c) ++j;
        }
        for (int t = 0; t < len; ++t) label_[cycle_copy.cycle[t]] = Label::Free;

        auto set_inner = [&](int node, std::pair<int, int> te) {
            label_[node] = Label::Inner;
            tree_edge_[node] = te;
        };
        auto set_outer = [&](int node) {
            label_[node] = Label::Outer;
            push_originals(node);
        };

        if (j % 2 == 0) {
            // Even path c_j, c_{j-1}, ..., c_0 using cycle edges j-1 .. 0.
            set_inner(cycle_copy.cycle[j], {p_out, q_in});
            for (int t = j; t >= 2; t -= 2) {
                set_outer(cycle_copy.cycle[t - 1]);
                auto [a, bq] = cycle_copy.cycle_edges[t - 2];  // a in c_{t-2}, bq in c_{t-1}
                set_inner(cycle_copy.cycle[t - 2], {bq, a});
            }
        } else {
            // Even path c_j, c_{j+1}, ..., c_{len-1}, c_0 using edges j .. len-1.
            set_inner(cycle_copy.cycle[j], {p_out, q_in});
            for (int t = j; t + 1 <= len - 1; t += 2) {
                set_outer(cycle_copy.cycle[t + 1]);
                if (t + 2 <= len - 1) {
                    auto [a, bq] = cycle_copy.cycle_edges[t + 1];  // a in c_{t+1}, bq in c_{t+2}
                    set_inner(cycle_copy.cycle[t + 2], {a, bq});
                } else {
                    auto [a, bq] = cycle_copy.cycle_edges[len - 1];  // a in c_{len-1}, bq in c_0
                    set_inner(cycle_copy.cycle[0], {a, bq});
                }
            }
        }
    }

    // ---- augmenting ------------------------------------------------------

    void flip_tree(int u_in, int v_out) {
        int x = top_of(u_in);
        for (;;) {
            int b = base_of(x);
            int old_mate = mate_[b];
            set_match(x, u_in, v_out);
            if (old_mate == -1) break;
            int inner = top_of(old_mate);
            auto [p_out, q_in] = tree_edge_[inner];
            set_match(inner, q_in, p_out);
            x = top_of(p_out);
            u_in = p_out;
            v_out = q_in;
        }
    }

    void augment(int u, int v) {
        flip_tree(u, v);
        flip_tree(v, u);
    }

    // ---- phase driver ----------------------------------------------------

    void refill_scan() {
        scan_.clear();
        scan_pos_ = 0;
        for (int v = 0; v < n_; ++v)
            if (label_[top_of(v)] == Label::Outer) scan_.push_back(v);
    }

    std::vector<int> top_nodes() const {
        std::vector<int> tops;
        for (int v = 0; v < n_; ++v)
            if (parent_in_[v] == -1) tops.push_back(v);
        for (size_t i = 0; i < blossoms_.size(); ++i)
            if (blossoms_[i].alive && parent_in_[n_ + static_cast<int>(i)] == -1)
                tops.push_back(n_ + static_cast<int>(i));
        return tops;
    }

    bool run_phase() {
        // Dissolve spent blossoms: z = 0 can always be removed safely.
        for (bool changed = true; changed;) {
            changed = false;
            for (size_t i = 0; i < blossoms_.size(); ++i) {
                int id = n_ + static_cast<int>(i);
                if (blossoms_[i].alive && parent_in_[id] == -1 && blossoms_[i].z == 0) {
                    expand(id, /*relabel=*/false);
                    changed = true;
                }
            }
        }
        grow_arrays();
        scan_.clear();
        scan_pos_ = 0;
        for (int t : top_nodes()) {
            label_[t] = Label::Free;
            if (mate_[base_of(t)] == -1) {
                label_[t] = Label::Outer;
                push_originals(t);
            }
        }

        bool progressed_since_dual = true;
        for (;;) {
            while (scan_pos_ < scan_.size()) {
                int u = scan_[scan_pos_++];
                for (auto [v, w] : adj_[u]) {
                    int xu = top_of(u), xv = top_of(v);
                    if (xu == xv) continue;
                    if (slack(u, v, w) != 0) continue;
                    if (label_[xv] == Label::Free) {
                        graft(u, v, xv);
                        progressed_since_dual = true;
                    } else if (label_[xv] == Label::Outer) {
                        int l = lca(xu, xv);
                        if (l == -1) {
                            augment(u, v);
                            return true;
                        }
                        add_blossom(u, v, l);
                        progressed_since_dual = true;
                    }
                }
            }

            // Dual adjustment by a full scan.
            long long delta = kInf;
            for (const auto& e : edges_) {
                int u = static_cast<int>(e[0]), v = static_cast<int>(e[1]);
                int xu = top_of(u), xv = top_of(v);
                if (xu == xv) continue;
                Label lu = label_[xu], lv = label_[xv];
                long long s = slack(u, v, e[2]);
                if (lu == Label::Outer && lv == Label::Outer) {
                    if (s % 2 != 0) throw std::logic_error("matching engine: odd outer slack");
                    delta = std::min(delta, s / 2);
                } else if ((lu == Label::Outer && lv == Label::Free) ||
                           (lv == Label::Outer && lu == Label::Free)) {
                    delta = std::min(delta, s);
                }
            }
            for (size_t i = 0; i < blossoms_.size(); ++i) {
                int id = n_ + static_cast<int>(i);
                if (blossoms_[i].alive && parent_in_[id] == -1 && label_[id] == Label::Inner) {
                    if (blossoms_[i].z % 2 != 0)
                        throw std::logic_error("matching engine: odd blossom dual");
                    delta = std::min(delta, blossoms_[i].z / 2);
                }
            }
            if (delta >= kInf) return false;  // forest is stuck: no perfect matching
            if (delta == 0 && !progressed_since_dual)
                throw std::logic_error("matching engine: stalled phase");
            progressed_since_dual = false;

            for (int v = 0; v < n_; ++v) {
                Label l = label_[top_of(v)];
                if (l == Label::Outer) y_[v] -= delta;
                else if (l == Label::Inner) y_[v] += delta;
            }
            for (size_t i = 0; i < blossoms_.size(); ++i) {
                int id = n_ + static_cast<int>(i);
                if (!blossoms_[i].alive || parent_in_[id] != -1) continue;
                if (label_[id] == Label::Outer) blossoms_[i].z += 2 * delta;
                else if (label_[id] == Label::Inner) blossoms_[i].z -= 2 * delta;
            }

            // Inner blossoms that hit z = 0 must expand before scanning resumes.
            for (bool changed = true; changed;) {
                changed = false;
                for (size_t i = 0; i < blossoms_.size(); ++i) {
                    int id = n_ + static_cast<int>(i);
                    if (blossoms_[i].alive && parent_in_[id] == -1 &&
                        label_[id] == Label::Inner && blossoms_[i].z == 0) {
                        expand(id, /*relabel=*/true);
                        progressed_since_dual = true;
                        changed = true;
                    }
                }
            }
            refill_scan();
        }
    }

    // ---- optimality certificate -------------------------------------------

    // Complementary slackness + strong duality. Throws on any violation, so a
    // matching that fails its own optimality proof is never returned.
    void certify() {
        std::vector<std::vector<int>> containing(n_);  // blossom ids per vertex
        for (size_t i = 0; i < blossoms_.size(); ++i) {
            if (!blossoms_[i].alive) continue;
            std::vector<int> vs;
            collect_originals(n_ + static_cast<int>(i), vs);
            for (int v : vs) containing[v].push_back(n_ + static_cast<int>(i));
        }
        long long dual = 0;
        for (int v = 0; v < n_; ++v) {
            if (mate_[v] == -1 || mate_[mate_[v]] != v)
                throw std::logic_error("matching engine: not a perfect matching");
            dual += y_[v];
        }
        for (size_t i = 0; i < blossoms_.size(); ++i) {
            const BlossomRec& b = blossoms_[i];
            if (!b.alive) continue;
            if (b.z < 0) throw std::logic_error("matching engine: negative blossom dual");
            std::vector<int> vs;
            collect_originals(n_ + static_cast<int>(i), vs);
            std::vector<char> inside(n_, 0);
            for (int v : vs) inside[v] = 1;
            long long matched_inside = 0;
            for (int v : vs)
                if (mate_[v] > v && inside[mate_[v]]) ++matched_inside;
            if (2 * matched_inside + 1 != static_cast<long long>(vs.size()))
                throw std::logic_error("matching engine: blossom interior not near-perfect");
            dual += b.z * matched_inside;
        }
        long long primal = 0;
        for (const auto& e : edges_) {
            int u = static_cast<int>(e[0]), v = static_cast<int>(e[1]);
            long long s = y_[u] + y_[v] - e[2];
            // z of blossoms containing both endpoints.
            size_t a = 0, c = 0;
            while (a < containing[u].size() && c < containing[v].size()) {
                if (containing[u][a] == containing[v][c]) {
                    s += rec(containing[u][a]).z;
                    ++a;
                    ++c;
                } else if (containing[u][a] < containing[v][c]) {
                    ++a;
                } else {
                    ++c;
                }
            }
            if (s < 0) throw std::logic_error("matching engine: infeasible dual");
            if (mate_[u] == v) {
                if (s != 0) throw std::logic_error("matching engine: matched edge not tight");
                primal += e[2];
            }
        }
        if (primal != dual) throw std::logic_error("matching engine: duality gap");
    }
};

}  // namespace

std::optional<PerfectMatchingResult> max_weight_perfect_matching_any(const WeightedGraph& g) {
    if (g.edges.size() != g.weights.size())
        throw std::invalid_argument("weighted graph: weights must parallel edges");
    for (long long w : g.weights)
        if (w < 0) throw std::invalid_argument("weighted graph: negative weight");

    // Compact to the vertices that carry edges; the rest are unconstrained.
    std::vector<int> id(g.n, -1);
    int active = 0;
    for (const Edge& e : g.edges) {
        if (e.u == e.v) throw std::invalid_argument("weighted graph: self-loop");
        if (id[e.u] == -1) id[e.u] = active++;
        if (id[e.v] == -1) id[e.v] = active++;
    }
    if (active == 0) return PerfectMatchingResult{};
    if (active % 2 != 0) return std::nullopt;

    std::vector<std::array<long long, 3>> scaled;
    scaled.reserve(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i)
        scaled.push_back({id[g.edges[i].u], id[g.edges[i].v], 4 * g.weights[i]});

    WeightedBlossom solver(active, scaled);
    if (!solver.solve()) return std::nullopt;

    std::vector<int> back(active);
    for (int v = 0; v < g.n; ++v)
        if (id[v] != -1) back[id[v]] = v;

    PerfectMatchingResult out;
    const std::vector<int>& mates = solver.mates();
    for (int v = 0; v < active; ++v)
        if (mates[v] > v) out.matching.emplace_back(back[v], back[mates[v]]);
    canonicalize(out.matching);
    // Recompute the weight from the input (the engine works on scaled copies).
    long long total = 0;
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (contains_edge(out.matching, g.edges[i])) total += g.weights[i];
    out.weight = total;
    return out;
}

}  // namespace mpm::core
