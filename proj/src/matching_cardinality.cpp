// Unweighted maximum matching via Edmonds' blossom algorithm.
//
// Standard formulation: grow an alternating BFS forest from every exposed
// vertex; a cross edge between two even vertices of different trees yields an
// augmenting path, within one tree it closes an odd cycle which is contracted
// by remapping every cycle vertex to a common base. O(V) per contraction,
// O(V*E) per augmentation phase, O(V^2 * E) worst case overall -- ample for
// the instance sizes this toolkit targets.
#include <algorithm>
#include <queue>
#include <vector>

#include "mpm/matching.hpp"

namespace mpm::core {

namespace {

struct BlossomCardinality {
    int n;
    std::vector<std::vector<int>> adj;
    std::vector<int> match, parent, base;
    std::vector<char> used, blossom;

    explicit BlossomCardinality(int n_, const EdgeSet& edges)
        : n(n_), adj(n_), match(n_, -1), parent(n_), base(n_), used(n_), blossom(n_) {
        for (const Edge& e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }

    // Lowest common ancestor of the bases of a and b in the alternating tree,
    // found by double marking along the match/parent chains.
    int find_lca(int a, int b) {
        std::vector<char> path(n, 0);
        for (;;) {
            a = base[a];
            path[a] = 1;
            if (match[a] == -1) break;
            a = parent[match[a]];
        }
        for (;;) {
            b = base[b];
            if (path[b]) return b;
            b = parent[match[b]];
        }
    }

    // Marks the blossom path from v up to the base lca; child is the vertex
    // on the cycle adjacent to v from the other branch.
    void mark_path(int v, int lca, int child) {
        while (base[v] != lca) {
            blossom[base[v]] = 1;
            blossom[base[match[v]]] = 1;
            parent[v] = child;
            child = match[v];
            v = parent[match[v]];
        }
    }

    // BFS from exposed root; returns the far end of an augmenting path or -1.
    int find_path(int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        for (int i = 0; i < n; ++i) base[i] = i;
        used[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
                    // Odd cycle: contract the blossom around the lca.
                    int lca = find_lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, lca, to);
                    mark_path(to, lca, v);
                    for (int i = 0; i < n; ++i)
                        if (blossom[base[i]]) {
                            base[i] = lca;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent[to] == -1) {
                    parent[to] = v;
                    if (match[to] == -1) return to;  // augmenting path found
                    used[match[to]] = 1;
                    q.push(match[to]);
                }
            }
        }
        return -1;
    }

    int solve() {
        int matched = 0;
        for (int v = 0; v < n; ++v) {
            if (match[v] != -1) continue;
            int end = find_path(v);
            if (end == -1) continue;
            ++matched;
            // Flip matched/unmatched edges back along the parent chain.
            while (end != -1) {
                int pv = parent[end], ppv = match[pv];
                match[end] = pv;
                match[pv] = end;
                end = ppv;
            }
        }
        return matched;
    }
};

}  // namespace

int max_matching_size(int n, const EdgeSet& edges) {
    if (n == 0 || edges.empty()) return 0;
    BlossomCardinality solver(n, edges);
    return solver.solve();
}

bool has_perfect_matching(int n, const EdgeSet& edges) {
    std::vector<char> active(n, 0);
    for (const Edge& e : edges) {
        active[e.u] = 1;
        active[e.v] = 1;
    }
    int active_count = static_cast<int>(std::count(active.begin(), active.end(), 1));
    if (active_count % 2 != 0) return false;
    return 2 * max_matching_size(n, edges) == active_count;
}

}  // namespace mpm::core
