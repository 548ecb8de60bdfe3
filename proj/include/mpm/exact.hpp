#pragma once

#include <vector>

#include "mpm/core.hpp"

namespace mpm::exact {

using core::Edge;
using core::EdgeSet;
using core::Matching;
using core::MultistageMatching;
using core::Objective;
using core::TemporalGraph;

// Default per-stage enumeration guardrail (overridable everywhere).
inline constexpr long long kDefaultEnumCap = 1'000'000;

// All perfect matchings of the single-stage graph (V(E), E), each in
// canonical edge order, the list sorted lexicographically. Empty when none
// exist. Throws std::overflow_error once more than `cap` matchings appear;
// stage_index >= 0 adds the stage to the message.
std::vector<Matching> enumerate_perfect_matchings(int n, const EdgeSet& stage, long long cap,
                                                  int stage_index = -1);

struct ExactResult {
    Objective objective = Objective::MIM;
    long long value = 0;                  // profit (MIM) or union cost (MUM)
    MultistageMatching solution;          // lexicographically smallest optimum
    std::vector<long long> pm_counts;     // perfect matchings per stage
};

// Globally optimal solution by dynamic programming over the enumerated
// per-stage perfect matchings. Ties break toward the lexicographically
// smaller witness (stage by stage, canonical edge order). Throws
// core::InfeasibleError when a stage has no perfect matching and
// std::overflow_error when a stage exceeds the enumeration cap.
ExactResult exact_solve(const TemporalGraph& g, Objective objective,
                        long long cap = kDefaultEnumCap);

// Maximum cut size max_{S subseteq V} |delta(S)| by exhaustive search.
// Requires n <= 24.
long long exact_maxcut(int n, const EdgeSet& edges);

}  // namespace mpm::exact
