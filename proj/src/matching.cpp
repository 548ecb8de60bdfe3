// Deterministic front end for the weighted matching engine: among all
// maximum-weight perfect matchings, return the one whose sorted edge list is
// lexicographically smallest.
//
// The engine itself makes no tie-break promise, so ties are broken by edge
// forcing: walk the edges in canonical order and greedily force an edge into
// the solution whenever some optimum contains all edges forced so far plus
// it. Forcing is tested by re-solving with a bonus added to the forced edges
// that exceeds the total weight of the graph, so the solver prefers one more
// forced edge over any possible weight difference elsewhere. A standard
// first-difference argument shows the forced set converges to the
// lexicographically smallest optimum.
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mpm/matching.hpp"

namespace mpm::core {

std::optional<PerfectMatchingResult> max_weight_perfect_matching(const WeightedGraph& g) {
    if (g.edges.size() != g.weights.size())
        throw std::invalid_argument("weighted graph: weights must parallel edges");

    // Work on a canonically sorted copy so "lexicographic" has one meaning.
    std::vector<size_t> order(g.edges.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return g.edges[a] < g.edges[b]; });
    WeightedGraph sorted;
    sorted.n = g.n;
    for (size_t i : order) {
        sorted.edges.push_back(g.edges[i]);
        sorted.weights.push_back(g.weights[i]);
    }
    for (size_t i = 1; i < sorted.edges.size(); ++i)
        if (sorted.edges[i] == sorted.edges[i - 1])
            throw std::invalid_argument("weighted graph: duplicate edge");

    auto first = max_weight_perfect_matching_any(sorted);
    if (!first) return std::nullopt;
    const long long opt = first->weight;

    std::vector<char> active(static_cast<size_t>(g.n), 0);
    for (const Edge& e : sorted.edges) active[e.u] = active[e.v] = 1;
    size_t active_count = static_cast<size_t>(std::count(active.begin(), active.end(), 1));

    long long bonus = 1;
    for (long long w : sorted.weights) bonus += w;

    std::vector<char> vertex_forced(static_cast<size_t>(g.n), 0);
    std::vector<char> edge_forced(sorted.edges.size(), 0);
    Matching forced;
    for (size_t i = 0; i < sorted.edges.size() && 2 * forced.size() < active_count; ++i) {
        const Edge& e = sorted.edges[i];
        if (vertex_forced[e.u] || vertex_forced[e.v]) continue;
        WeightedGraph trial = sorted;
        for (size_t k = 0; k < trial.weights.size(); ++k)
            if (edge_forced[k] || k == i) trial.weights[k] += bonus;
        auto res = max_weight_perfect_matching_any(trial);
        if (!res) throw std::logic_error("lex tie-break: solvable graph became infeasible");
        bool keeps_all = contains_edge(res->matching, e);
        for (size_t k = 0; keeps_all && k < sorted.edges.size(); ++k)
            if (edge_forced[k]) keeps_all = contains_edge(res->matching, sorted.edges[k]);
        if (!keeps_all) continue;
        long long orig_weight = 0;
        for (size_t k = 0; k < sorted.edges.size(); ++k)
            if (contains_edge(res->matching, sorted.edges[k])) orig_weight += sorted.weights[k];
        if (orig_weight != opt) continue;  // forcing e would cost weight
        edge_forced[i] = 1;
        vertex_forced[e.u] = vertex_forced[e.v] = 1;
        forced.push_back(e);
    }

    if (2 * forced.size() != active_count)
        throw std::logic_error("lex tie-break: forced set is not perfect");
    canonicalize(forced);
    return PerfectMatchingResult{forced, opt};
}

}  // namespace mpm::core
