// Exact matching engines on general (non-bipartite) graphs:
//  - max_matching_size / has_perfect_matching: unweighted Edmonds blossom,
//    used by the forbidden-edge preprocessing (one existence test per edge).
//  - max_weight_perfect_matching: primal-dual weighted blossom returning a
//    maximum-weight perfect matching with a deterministic tie-break (the
//    lexicographically smallest canonical edge list among the optima).
// All arithmetic is exact 64-bit integer; every weighted result is certified
// internally against the final dual solution before it is returned.
#pragma once

#include <optional>

#include "mpm/core.hpp"

namespace mpm::core {

// Size of a maximum matching of (V = [0,n), edges). O(V * E) augmentations
// with blossom contraction; exact on general graphs.
int max_matching_size(int n, const EdgeSet& edges);

// True iff every vertex incident to at least one edge can be matched, i.e.
// the graph induced on V(edges) has a perfect matching. Vertices without any
// incident edge impose no constraint.
bool has_perfect_matching(int n, const EdgeSet& edges);

// Result of a weighted perfect-matching run, including the certified
// optimal weight (sum of input weights over the matching).
struct PerfectMatchingResult {
    Matching matching;
    long long weight = 0;
};

// Maximum-weight perfect matching on the vertices incident to g.edges
// (isolated vertices impose no constraint). Returns std::nullopt when no
// perfect matching exists. Requires weights >= 0. Among all maximum-weight
// perfect matchings the lexicographically smallest canonical edge list is
// returned. Throws std::logic_error if the internal optimality certificate
// fails (never observed; a hard guard against silent wrong answers).
std::optional<PerfectMatchingResult> max_weight_perfect_matching(const WeightedGraph& g);

// Single engine run without the lexicographic tie-break (some arbitrary
// optimum). Exposed for tests and for the tie-break wrapper itself.
std::optional<PerfectMatchingResult> max_weight_perfect_matching_any(const WeightedGraph& g);

}  // namespace mpm::core
