// Stage preprocessing: drop edges that no perfect matching can use.
#include <algorithm>
#include <vector>

#include "mpm/matching.hpp"
#include "mpm/reduce.hpp"

namespace mpm::core {

namespace {

int active_vertex_count(const EdgeSet& stage) {
    std::vector<char> seen;
    int active = 0;
    for (const Edge& e : stage) {
        if (static_cast<size_t>(e.v) >= seen.size()) seen.resize(e.v + 1, 0);
        active += (seen[e.u] == 0) + (seen[e.v] == 0);
        seen[e.u] = seen[e.v] = 1;
    }
    return active;
}

// Does the stage minus {u, v} still perfectly match the rest of V(E)?
bool allowed_in_stage(int n, const EdgeSet& stage, int active_count, const Edge& e) {
    EdgeSet rest;
    rest.reserve(stage.size());
    for (const Edge& f : stage)
        if (f.u != e.u && f.u != e.v && f.v != e.u && f.v != e.v) rest.push_back(f);
    return 2 * max_matching_size(n, rest) == active_count - 2;
}

}  // namespace

EdgeSet allowed_edges_serial(int n, const EdgeSet& stage) {
    if (stage.empty() || !has_perfect_matching(n, stage)) return {};
    const int active = active_vertex_count(stage);
    EdgeSet out;
    for (const Edge& e : stage)
        if (allowed_in_stage(n, stage, active, e)) out.push_back(e);
    canonicalize(out);
    return out;
}

EdgeSet allowed_edges(int n, const EdgeSet& stage) {
    if (stage.empty() || !has_perfect_matching(n, stage)) return {};
    const int active = active_vertex_count(stage);
    const int m = static_cast<int>(stage.size());
    std::vector<char> keep(stage.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i)
        keep[i] = allowed_in_stage(n, stage, active, stage[i]) ? 1 : 0;
    EdgeSet out;
    for (int i = 0; i < m; ++i)
        if (keep[i]) out.push_back(stage[i]);
    canonicalize(out);
    return out;
}

TemporalGraph reduce(const TemporalGraph& g, std::vector<int>* dead_stages) {
    TemporalGraph out = g;
    if (dead_stages) dead_stages->clear();
    for (size_t i = 0; i < g.stages.size(); ++i) {
        out.stages[i] = allowed_edges(g.n, g.stages[i]);
        if (out.stages[i].empty() && !g.stages[i].empty() && dead_stages)
            dead_stages->push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace mpm::core
