#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mpm/core.hpp"

namespace mpm::approx {

using core::Edge;
using core::EdgeSet;
using core::Matching;
using core::MultistageMatching;
using core::Objective;
using core::TemporalGraph;

// ---- certified a-priori ratio bounds ---------------------------------------
// Stored exactly (integers only) so that bound checks against an oracle value
// are integer comparisons after squaring, never floating point.
struct CertifiedRatio {
    enum class Kind {
        Exact,     // value is optimal
        Factor,    // MUM: value <= factor * OPT
        InvSqrt,   // MIM: value >= OPT / sqrt(radicand)
        Affine,    // MUM: value <= (2 - 1/sqrt(radicand)) * OPT
    };
    Kind kind = Kind::Exact;
    long long radicand = 0;  // InvSqrt / Affine
    long long factor = 1;    // Factor
};

const char* ratio_kind_name(CertifiedRatio::Kind kind);

// Exact check of the certified bound against a known optimum.
bool ratio_satisfied(const CertifiedRatio& r, long long value, long long opt, Objective obj);

// ---- solve reports ----------------------------------------------------------
struct SolveReport {
    std::string method;
    Objective objective = Objective::MIM;
    long long value = 0;
    CertifiedRatio certified_ratio;
    MultistageMatching solution;
    long long iterations = 0;
    double runtime_ms = 0.0;
    std::string instance_digest;
    bool pair_rereduce = false;  // consecutive stage pairs were re-reduced
};

// JSON object with keys method | objective | value | certified_ratio |
// solution | iterations | runtime_ms | instance_digest (pair_rereduce only
// when set). `value` is recomputed from the solution at emit time.
std::string serialize_report(const SolveReport& r);

// ---- 2-stage intersection maximization (Algorithm 1) ------------------------
struct TwoStageResult {
    MultistageMatching solution;
    long long iterations = 0;
};

// Iterated indicator-weight matching: cover the so-far-unseen intersection
// edges in stage 1, answer optimally in stage 2, keep the best pair; stop
// once every intersection edge has appeared in some stage-1 matching. On an
// empty intersection returns the first pair immediately (profit 0 is
// optimal). Guarantees profit >= OPT/sqrt(2*mu) and profit >= 1 when the
// intersection is nonempty; at most mu iterations. Requires a reduced
// instance (violations surface as a no-progress error).
TwoStageResult approx_2im(const TemporalGraph& g);

// ---- maximum-weight matching in a path --------------------------------------
struct PathMatching {
    std::vector<int> indices;  // chosen edges e_i, 1-based, strictly ascending
    long long weight = 0;
};

// Linear DP; ties break toward the lexicographically smallest index set.
// The result never picks two consecutive edges and 2*weight >= sum(w).
PathMatching path_max_weight_matching(const std::vector<long long>& w);

// ---- stage-pair composition (Algorithm 2) ------------------------------------
struct TwoStageSolver {
    std::string name;
    std::function<MultistageMatching(const TemporalGraph&)> solve;
    // Declared a-priori guarantee on a 2-stage instance as a function of its
    // intersection size mu (InvSqrt for 2IM subs, Affine for 2UM subs).
    std::function<CertifiedRatio(long long mu)> guarantee;
};

// Algorithm 1 as a 2IM sub-solver: guarantee 1/sqrt(2*mu).
TwoStageSolver make_alg1_solver();

// Algorithm 1 re-scored under union cost as a 2UM sub-solver with guarantee
// 2 - 1/sqrt(2*mu) (cost = half the stage sizes minus profit, so a profit
// ratio alpha transfers to a cost ratio 2 - alpha).
TwoStageSolver make_alg1_mum_solver();

struct MultistageApproxResult {
    MultistageMatching solution;
    std::vector<long long> path_weights;  // w_i per transition
    std::vector<int> chosen;              // path edges selected, 1-based
    long long sub_calls = 0;
};

// Runs `sub` on every consecutive stage pair (each pair re-reduced first),
// stitches the pairs along a maximum-weight path matching and overwrites the
// initial solution on the chosen transitions. Bounds: profit >= (alpha/2)*OPT
// for MIM, cost <= (1 + alpha/2)*OPT for MUM, where alpha is sub's guarantee.
MultistageApproxResult multistage_approx(const TemporalGraph& g, const TwoStageSolver& sub,
                                         Objective mode);

// ---- profit-preserving reduction to two stages -------------------------------
// Every stage i is copied (vertex-disjoint, each edge subdivided into a
// 7-path) into target stage b(i) = 2 - (i mod 2); the 3rd/5th path edges are
// the labels e_i^- / e_i^+, and for every edge shared by consecutive stages
// the vertices of e_i^+ are identified with those of e_{i+1}^-, making the
// two labels one common edge. The target intersection size is then exactly
// sum_i |E_i cap E_{i+1}|.
struct ReductionMap {
    TemporalGraph source;
    TemporalGraph target;
    // paths[i][j]: the 7-path edges (in order, source->target orientation
    // from the smaller endpoint) replacing source.stages[i][j].
    std::vector<std::vector<std::array<Edge, 7>>> paths;
    long long mu_prime = 0;  // number of identifications

    // Target stage (0-based) that carries the copy of source stage i (0-based).
    static int target_stage(int i) { return (i % 2 == 0) ? 0 : 1; }

    const std::array<Edge, 7>& path_for(int stage, const Edge& e) const;
    Edge minus_edge(int stage, const Edge& e) const;  // 3rd path edge, e_i^-
    Edge plus_edge(int stage, const Edge& e) const;   // 5th path edge, e_i^+
};

ReductionMap mim_to_2im_reduce(const TemporalGraph& g);

// Solution transfer in both directions; each preserves the profit exactly.
// lift: e in M_i iff e_i^- in M'_{b(i)}. Throws on infeasible input.
MultistageMatching lift_solution(const ReductionMap& map, const MultistageMatching& two_stage);
MultistageMatching project_solution(const ReductionMap& map, const MultistageMatching& m);

// ---- report-producing pipelines ----------------------------------------------
// Runs both the pair-composition route and the reduction route, returns the
// higher-profit solution with bound max(1/sqrt(8*mu), 1/sqrt(2*(tau-1)*mu)).
SolveReport best_mim(const TemporalGraph& g);

// MUM via ratio transfer: best_mim's solution re-scored under union cost
// (bound 2 - 1/sqrt(r*mu), r = min(2*(tau-1), 8)) and the pair-composition
// route in MUM mode (bound 2 - 1/sqrt(8*mu)); returns the cheaper solution
// with the tighter bound.
SolveReport mum_via_mim(const TemporalGraph& g);

// Independent per-stage perfect matchings; a-priori factor-2 bound for MUM.
SolveReport trivial_mum(const TemporalGraph& g);

// A tempting-but-flawed reuse heuristic for 4 stages: M_i maximizes
// |M_i cap E_{i+1}| for i in {1,2,3}; candidates (M_1,M_1,M_3,M_3) and
// (M^_1,M_2,M_2,M^_3) with lexicographically smallest arbitrary matchings.
// Both candidates are returned with honest feasibility verdicts.
struct FlawedResult {
    MultistageMatching candidate_a;
    MultistageMatching candidate_b;
    core::Verdict verdict_a;
    core::Verdict verdict_b;
};

FlawedResult flawed_maxmpm_heuristic(const TemporalGraph& g);

}  // namespace mpm::approx
