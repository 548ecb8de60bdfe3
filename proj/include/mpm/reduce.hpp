#pragma once

#include <vector>

#include "mpm/core.hpp"

namespace mpm::core {

// Edges of the stage that lie in at least one perfect matching of
// (V(E), E); empty when the stage has no perfect matching. One matching
// existence test per edge. The unsuffixed variant runs the tests in
// parallel when OpenMP is enabled; both produce identical output.
EdgeSet allowed_edges(int n, const EdgeSet& stage);
EdgeSet allowed_edges_serial(int n, const EdgeSet& stage);

// Replaces every stage by its allowed edges. Idempotent; never changes the
// set of feasible multistage perfect matchings. If dead_stages is non-null
// it receives the indices of stages that end up with no edges despite
// having vertices to match — such instances are infeasible.
TemporalGraph reduce(const TemporalGraph& g, std::vector<int>* dead_stages = nullptr);

}  // namespace mpm::core
