// Deterministic instance generators: the MaxCut hardness gadget, the
// LP integrality-gap family with its fractional witness, the 4-stage
// counterexample that breaks the matching-reuse heuristic, the k-cycle and
// alternating families, and a seeded random instance source for tests.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mpm/core.hpp"
#include "mpm/lp.hpp"

namespace mpm::gadgets {

using core::Edge;
using core::EdgeSet;
using core::TemporalGraph;

// Named edges addressing distinguished gadget positions (marked path edges,
// shared ladder edges, the counterexample's e/f edges) so tests and tools can
// refer to them by name instead of raw vertex ids.
struct GadgetLabels {
    std::map<std::string, Edge> edges;

    // Lookup that throws std::out_of_range naming the missing label.
    const Edge& at(const std::string& name) const;

    // {"labels": {name: [u, v], ...}} side-document for the CLI.
    std::string to_json() const;
};

struct LabeledInstance {
    TemporalGraph graph;
    GadgetLabels labels;
};

struct MaxcutGadget {
    TemporalGraph graph;
    long long kappa = 0;  // profit threshold: 3|E| + k
    GadgetLabels labels;
};

// 2-stage instance whose maximum intersection profit is exactly
// 3|E| + MaxCut(g), for a simple input graph g without isolated vertices.
// Per incidence (v,e) two 2-paths X^e_v, Y^e_v shared by both stages (marked
// edges labeled "x[v,(u,w)]" / "y[v,(u,w)]", unmarked "xbar"/"ybar"); stage 1
// closes a 6-cycle through Y^e_v, Y^e_w per edge and a 4deg(v)-cycle through
// X(v) per vertex (fresh connector vertices); stage 2 closes a 6-cycle
// through X^e_v, Y^e_v per incidence, plus one even cycle over the otherwise
// isolated connector vertices to make the instance spanning (a single edge
// when only two exist). Both stages are disjoint even cycles, the stage
// intersection is a disjoint union of 2-paths, and the union graph is
// bipartite.
MaxcutGadget gen_maxcut_gadget(int n, const EdgeSet& edges, long long k);

// 2-stage gap family, k >= 3: a (k+1) x (k+1) grid of shared edges
// ("shared[i,j]") arranged into k+1 interwoven paths per stage, joined into
// one component per stage through c/d chain vertices. Reduced, spanning,
// bipartite union, mu = (k+1)^2, integral optimum 1.
LabeledInstance gen_lp_gap(int k);

// The explicit feasible fractional point for gen_lp_gap(k): every shared
// edge carries 1/(k+1) on x and z, path edges carry k/(k+1), chain edges
// interpolate; objective k+1.
lp::FractionalAssignment gen_lp_gap_fractional(int k);

// 4-stage instance (12 vertices) on which the matching-reuse heuristic
// produces only infeasible candidates while the optimum profit is 6.
// Labels: "e1".."e4" (the four intersection edges), "f1", "f2" (the edges
// forced alongside them).
LabeledInstance gen_counterexample();

// Two k-cycles (k even, >= 6) sharing exactly the edge {0,1}: optimum
// profit 1, optimum union cost k-1.
TemporalGraph gen_two_cycles(int k);

// 4 vertices; odd stages {01,23}, even stages {12,03}: every consecutive
// intersection is empty, so the optimum profit is 0 and every transition
// union costs 4.
TemporalGraph gen_alternating(int tau);

// Independent per-stage samples: a uniform random perfect matching forced
// into each stage (guaranteeing feasibility) plus each remaining pair with
// probability p. Deterministic per seed. Requires n even and 0 < p <= 1.
TemporalGraph gen_random(int n, int tau, double p, std::uint64_t seed);

}  // namespace mpm::gadgets
