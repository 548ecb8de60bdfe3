// Core data model for multistage perfect matching problems: temporal graphs,
// multistage matchings, objective metrics, feasibility verification and the
// JSON instance/solution formats shared by every tool in this repository.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mpm::core {

using VertexId = int;

// Undirected edge in canonical form: u < v always holds after construction.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    Edge() = default;
    Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Canonical edge list: sorted ascending, no duplicates. All public interfaces
// produce and expect this form; canonicalize() establishes it.
using EdgeSet = std::vector<Edge>;
using Matching = EdgeSet;

// Sorts and deduplicates in place.
void canonicalize(EdgeSet& edges);

// Binary search in a canonical edge list.
bool contains_edge(const EdgeSet& edges, const Edge& e);

// Set operations on canonical edge lists (outputs are canonical).
EdgeSet edge_intersection(const EdgeSet& a, const EdgeSet& b);
EdgeSet edge_union(const EdgeSet& a, const EdgeSet& b);

// A temporal graph: one fixed vertex set [0, n) and an ordered sequence of
// edge sets E_1..E_tau (the stages). Stage i induces the graph
// G_i = (V(E_i), E_i) on the vertices actually touched by stage edges.
struct TemporalGraph {
    int n = 0;
    std::vector<EdgeSet> stages;
    std::string name;         // optional, round-trips through serialization
    std::string meta_json;    // optional raw JSON object, "" when absent

    int tau() const { return static_cast<int>(stages.size()); }

    // E_i `intersect` E_{i+1} for transition i in [0, tau-2].
    EdgeSet intersection(int i) const;

    // mu = max_i |E_i `intersect` E_{i+1}|; 0 when tau < 2.
    long long mu() const;

    // Incidence mask of V(E_i): mask[v] != 0 iff v has a stage-i edge.
    std::vector<char> stage_vertices(int i) const;

    // n_i = |V(E_i)|.
    int stage_vertex_count(int i) const;

    // True iff every stage touches every vertex (V(E_i) = V for all i).
    bool spanning() const;

    // True iff the union graph (V, E_1 u ... u E_tau) is bipartite.
    bool union_bipartite() const;
};

// One matching per stage; feasibility (each M_i a perfect matching of G_i)
// is established by verify(), never assumed by construction.
struct MultistageMatching {
    std::vector<Matching> per_stage;

    int tau() const { return static_cast<int>(per_stage.size()); }
};

// The two optimization objectives over multistage perfect matchings:
// MIM maximizes the intersection profit, MUM minimizes the union cost.
enum class Objective { MIM, MUM };

// Raised when an instance admits no multistage perfect matching (some stage
// cannot be perfectly matched). The CLI maps this to its own exit code.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Single-stage graph with non-negative integer edge weights; the input to the
// exact matching engine. weights[i] belongs to edges[i].
struct WeightedGraph {
    int n = 0;
    EdgeSet edges;
    std::vector<long long> weights;
};

// Intersection profit: sum over transitions of |M_i `intersect` M_{i+1}|.
long long profit(const MultistageMatching& m);

// Union cost: sum over transitions of |M_i u M_{i+1}|.
long long union_cost(const MultistageMatching& m);

// Feasibility verdict for (instance, candidate solution). When infeasible,
// `violation` names the first offending stage and vertex/edge in canonical
// scan order; profit/union_cost are still the raw metric values.
struct Verdict {
    bool feasible = false;
    long long profit = 0;
    long long union_cost = 0;
    std::string violation;  // empty iff feasible
};

// Checks M_i subseteq E_i and that M_i matches every vertex of V(E_i) exactly
// once, for every stage. Throws std::invalid_argument on stage-count mismatch.
Verdict verify(const TemporalGraph& g, const MultistageMatching& m);

// ---- JSON formats ----------------------------------------------------------
// Instance:  {"n": int, "stages": [[[u,v], ...], ...],
//             "name": optional string, "meta": optional object}
// Solution:  {"stages": [[[u,v], ...], ...]}
// Edges are emitted canonically (u < v) and stage lists sorted, so equal
// graphs serialize to identical bytes.

// Parses and validates an instance document. Error messages name the stage
// index and offending edge (malformed document, endpoint out of range,
// self-loop, duplicate edge).
TemporalGraph parse_instance(const std::string& text);

std::string serialize_instance(const TemporalGraph& g);

MultistageMatching parse_solution(const std::string& text);

std::string serialize_solution(const MultistageMatching& m);

// FNV-1a 64-bit content hash of the canonical serialization, as 16 hex chars.
std::uint64_t fnv1a64(std::string_view bytes);
std::string instance_digest(const TemporalGraph& g);

}  // namespace mpm::core
