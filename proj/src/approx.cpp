// Approximation pipelines: the iterated-matching 2-stage algorithm, the
// stage-pair composition, the profit-preserving reduction to two stages, the
// ratio-transfer pipelines for union cost, and the flawed reuse heuristic
// kept as a counterexample subject.
#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "mpm/approx.hpp"
#include "mpm/matching.hpp"
#include "mpm/reduce.hpp"

namespace mpm::approx {

namespace {

using core::InfeasibleError;
using core::WeightedGraph;

// Maximum-weight perfect matching of one stage under indicator weights for
// `marked` (lexicographically smallest solution); all-zero weights when
// marked is empty, i.e. the lexicographically smallest perfect matching.
Matching indicator_mwpm(int n, const EdgeSet& stage, const EdgeSet& marked, int stage_index) {
    WeightedGraph wg;
    wg.n = n;
    wg.edges = stage;
    wg.weights.reserve(stage.size());
    for (const Edge& e : stage)
        wg.weights.push_back(core::contains_edge(marked, e) ? 1 : 0);
    auto res = core::max_weight_perfect_matching(wg);
    if (!res)
        throw InfeasibleError("stage " + std::to_string(stage_index) +
                              " has no perfect matching");
    return res->matching;
}

Matching lexmin_pm(const TemporalGraph& g, int stage_index) {
    return indicator_mwpm(g.n, g.stages[stage_index], {}, stage_index);
}

void require_matchable_stages(const TemporalGraph& g) {
    for (int i = 0; i < g.tau(); ++i)
        if (!core::has_perfect_matching(g.n, g.stages[i]))
            throw InfeasibleError("stage " + std::to_string(i + 1) + " has no perfect matching");
}

long long metric(const MultistageMatching& m, Objective obj) {
    return obj == Objective::MIM ? core::profit(m) : core::union_cost(m);
}

CertifiedRatio exact_ratio() { return {CertifiedRatio::Kind::Exact, 0, 1}; }

CertifiedRatio inv_sqrt_ratio(long long radicand) {
    return {CertifiedRatio::Kind::InvSqrt, radicand, 1};
}

CertifiedRatio affine_ratio(long long radicand) {
    return {CertifiedRatio::Kind::Affine, radicand, 1};
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

// ---- certified ratios --------------------------------------------------------

const char* ratio_kind_name(CertifiedRatio::Kind kind) {
    switch (kind) {
        case CertifiedRatio::Kind::Exact: return "exact";
        case CertifiedRatio::Kind::Factor: return "factor";
        case CertifiedRatio::Kind::InvSqrt: return "inv_sqrt";
        case CertifiedRatio::Kind::Affine: return "affine";
    }
    return "?";
}

bool ratio_satisfied(const CertifiedRatio& r, long long value, long long opt, Objective obj) {
    switch (r.kind) {
        case CertifiedRatio::Kind::Exact:
            return value == opt;
        case CertifiedRatio::Kind::Factor:
            if (obj != Objective::MUM)
                throw std::invalid_argument("factor bound applies to union cost only");
            return value <= r.factor * opt;
        case CertifiedRatio::Kind::InvSqrt: {
            if (obj != Objective::MIM)
                throw std::invalid_argument("inv_sqrt bound applies to profit only");
            if (r.radicand < 1) throw std::invalid_argument("inv_sqrt bound needs radicand >= 1");
            // value >= opt/sqrt(R)  <=>  value^2 * R >= opt^2 (both sides >= 0)
            return value >= 0 && value * value * r.radicand >= opt * opt;
        }
        case CertifiedRatio::Kind::Affine: {
            if (obj != Objective::MUM)
                throw std::invalid_argument("affine bound applies to union cost only");
            if (r.radicand < 1) throw std::invalid_argument("affine bound needs radicand >= 1");
            // value <= (2 - 1/sqrt(R)) * opt  <=>  2*opt - value >= opt/sqrt(R)
            const long long d = 2 * opt - value;
            return d >= 0 && d * d * r.radicand >= opt * opt;
        }
    }
    return false;
}

std::string serialize_report(const SolveReport& r) {
    const long long recomputed = metric(r.solution, r.objective);
    if (recomputed != r.value)
        throw std::logic_error("solve report value does not match its solution");
    nlohmann::json j;
    j["method"] = r.method;
    j["objective"] = r.objective == Objective::MIM ? "mim" : "mum";
    j["value"] = recomputed;
    nlohmann::json cr;
    cr["kind"] = ratio_kind_name(r.certified_ratio.kind);
    if (r.certified_ratio.kind == CertifiedRatio::Kind::InvSqrt ||
        r.certified_ratio.kind == CertifiedRatio::Kind::Affine)
        cr["radicand"] = r.certified_ratio.radicand;
    if (r.certified_ratio.kind == CertifiedRatio::Kind::Factor)
        cr["factor"] = r.certified_ratio.factor;
    j["certified_ratio"] = cr;
    j["solution"] = nlohmann::json::parse(core::serialize_solution(r.solution));
    j["iterations"] = r.iterations;
    j["runtime_ms"] = r.runtime_ms;
    j["instance_digest"] = r.instance_digest;
    if (r.pair_rereduce) j["pair_rereduce"] = true;
    return j.dump(2) + "\n";
}

// ---- Algorithm 1 ---------------------------------------------------------------

TwoStageResult approx_2im(const TemporalGraph& g) {
    if (g.tau() != 2) throw std::invalid_argument("approx_2im requires exactly 2 stages");
    const EdgeSet inter = g.intersection(0);

    if (inter.empty()) {
        // The loop condition is vacuous after one iteration; profit 0 is
        // optimal because no edge can repeat across the stages.
        TwoStageResult out;
        out.solution.per_stage = {lexmin_pm(g, 0), lexmin_pm(g, 1)};
        out.iterations = 1;
        return out;
    }

    EdgeSet covered;  // intersection edges seen in some stage-1 matching
    Matching best1, best2;
    long long best_profit = -1;
    long long iterations = 0;
    for (;;) {
        ++iterations;
        EdgeSet uncovered;
        for (const Edge& e : inter)
            if (!core::contains_edge(covered, e)) uncovered.push_back(e);
        Matching m1 = indicator_mwpm(g.n, g.stages[0], uncovered, 0);
        Matching m2 = indicator_mwpm(g.n, g.stages[1], m1, 1);
        const long long p = static_cast<long long>(core::edge_intersection(m1, m2).size());
        if (p >= best_profit) {
            best_profit = p;
            best1 = m1;
            best2 = m2;
        }
        EdgeSet newly = core::edge_intersection(m1, uncovered);
        if (newly.empty())
            throw std::invalid_argument(
                "approx_2im: an iteration covered no new intersection edge; "
                "the instance is not reduced");
        covered = core::edge_union(covered, newly);
        if (covered.size() == inter.size()) break;
    }
    TwoStageResult out;
    out.solution.per_stage = {best1, best2};
    out.iterations = iterations;
    return out;
}

// ---- path DP -------------------------------------------------------------------

PathMatching path_max_weight_matching(const std::vector<long long>& w) {
    const int k = static_cast<int>(w.size());
    std::vector<long long> best(k + 2, 0);  // best[i]: max weight among edges i..k-1
    for (int i = k - 1; i >= 0; --i) best[i] = std::max(best[i + 1], w[i] + best[i + 2]);
    PathMatching out;
    out.weight = k > 0 ? best[0] : 0;
    // Earliest-take greedy: the lexicographically smallest optimal index set.
    // Once the remaining optimum is 0 the empty continuation is lex-smaller
    // than any zero-weight take, so stop.
    for (int i = 0; i < k;) {
        if (best[i] == 0) break;
        if (w[i] + best[i + 2] == best[i]) {
            out.indices.push_back(i + 1);
            i += 2;
        } else {
            ++i;
        }
    }
    return out;
}

// ---- Algorithm 2 ---------------------------------------------------------------

TwoStageSolver make_alg1_solver() {
    TwoStageSolver s;
    s.name = "alg1";
    s.solve = [](const TemporalGraph& pair) { return approx_2im(pair).solution; };
    s.guarantee = [](long long mu) {
        return mu == 0 ? exact_ratio() : inv_sqrt_ratio(2 * mu);
    };
    return s;
}

TwoStageSolver make_alg1_mum_solver() {
    TwoStageSolver s;
    s.name = "alg1-mum";
    // Same solutions as the 2IM solver; since cost = (n_1 + n_2)/2 - profit,
    // its 1/sqrt(2*mu) profit guarantee becomes a 2 - 1/sqrt(2*mu) cost one.
    s.solve = [](const TemporalGraph& pair) { return approx_2im(pair).solution; };
    s.guarantee = [](long long mu) {
        return mu == 0 ? exact_ratio() : affine_ratio(2 * mu);
    };
    return s;
}

MultistageApproxResult multistage_approx(const TemporalGraph& g, const TwoStageSolver& sub,
                                         Objective mode) {
    const int tau = g.tau();
    if (tau < 1) throw std::invalid_argument("multistage_approx: instance has no stages");
    MultistageApproxResult out;
    if (tau == 1) {
        out.solution.per_stage = {lexmin_pm(g, 0)};
        return out;
    }

    std::vector<MultistageMatching> pairs(tau - 1);
    for (int i = 0; i + 1 < tau; ++i) {
        TemporalGraph pg;
        pg.n = g.n;
        pg.stages = {g.stages[i], g.stages[i + 1]};
        std::vector<int> dead;
        TemporalGraph pr = core::reduce(pg, &dead);  // defensive pair re-reduction
        if (!dead.empty())
            throw InfeasibleError("stage " + std::to_string(i + dead.front() + 1) +
                                  " has no perfect matching");
        pairs[i] = sub.solve(pr);
        if (pairs[i].tau() != 2)
            throw std::logic_error("two-stage solver returned " +
                                   std::to_string(pairs[i].tau()) + " stages");
        auto v = core::verify(pr, pairs[i]);
        if (!v.feasible)
            throw std::logic_error("two-stage solver infeasible at transition " +
                                   std::to_string(i) + ": " + v.violation);
        ++out.sub_calls;
    }

    out.solution.per_stage.resize(tau);
    for (int i = 0; i + 1 < tau; ++i) out.solution.per_stage[i] = pairs[i].per_stage[0];
    out.solution.per_stage[tau - 1] = pairs[tau - 2].per_stage[1];

    // w_i is pair i's own 2-stage score: the intersection profit, or via the
    // union identity (n_i + n_{i+1})/2 - |S u T| for union cost.
    for (int i = 0; i + 1 < tau; ++i) {
        const Matching& s = pairs[i].per_stage[0];
        const Matching& t = pairs[i].per_stage[1];
        const long long inter = static_cast<long long>(core::edge_intersection(s, t).size());
        if (mode == Objective::MIM) {
            out.path_weights.push_back(inter);
        } else {
            const long long half =
                (g.stage_vertex_count(i) + g.stage_vertex_count(i + 1)) / 2;
            const long long uni =
                static_cast<long long>(s.size()) + static_cast<long long>(t.size()) - inter;
            out.path_weights.push_back(half - uni);
        }
    }

    PathMatching mp = path_max_weight_matching(out.path_weights);
    out.chosen = mp.indices;
    for (int idx : mp.indices) {  // 1-based transition index
        out.solution.per_stage[idx - 1] = pairs[idx - 1].per_stage[0];
        out.solution.per_stage[idx] = pairs[idx - 1].per_stage[1];
    }
    return out;
}

// ---- reduction to two stages -----------------------------------------------------

const std::array<Edge, 7>& ReductionMap::path_for(int stage, const Edge& e) const {
    const EdgeSet& es = source.stages.at(stage);
    auto it = std::lower_bound(es.begin(), es.end(), e);
    if (it == es.end() || !(*it == e))
        throw std::invalid_argument("reduction map: edge not in source stage " +
                                    std::to_string(stage));
    return paths[stage][static_cast<size_t>(it - es.begin())];
}

Edge ReductionMap::minus_edge(int stage, const Edge& e) const { return path_for(stage, e)[2]; }

Edge ReductionMap::plus_edge(int stage, const Edge& e) const { return path_for(stage, e)[4]; }

ReductionMap mim_to_2im_reduce(const TemporalGraph& g) {
    const int tau = g.tau();
    if (tau < 1) throw std::invalid_argument("mim_to_2im_reduce: instance has no stages");
    ReductionMap map;
    map.source = g;
    map.paths.resize(tau);

    int next = 0;
    // Fresh copy of every stage vertex: copies are vertex-disjoint between
    // stages; only the identified path middles are shared.
    std::vector<std::vector<int>> vcopy(tau, std::vector<int>(g.n, -1));
    for (int i = 0; i < tau; ++i) {
        auto mask = g.stage_vertices(i);
        for (int v = 0; v < g.n; ++v)
            if (mask[v]) vcopy[i][v] = next++;
    }

    TemporalGraph target;
    target.name = g.name;
    target.stages.assign(2, {});
    // plus_pair[e] after processing stage i: the e_i^+ endpoints, consumed as
    // the e_{i+1}^- endpoints when stage i+1 also contains e.
    std::map<Edge, std::pair<int, int>> plus_pair;
    for (int i = 0; i < tau; ++i) {
        std::map<Edge, std::pair<int, int>> next_plus;
        const int ts = ReductionMap::target_stage(i);
        for (const Edge& e : g.stages[i]) {
            int a1 = next++;
            int a2, a3;
            auto shared = plus_pair.find(e);
            if (shared != plus_pair.end()) {
                // e in E_{i-1} cap E_i: identify e_i^- with e_{i-1}^+,
                // pairing vertices by distance from the smaller endpoint.
                a2 = shared->second.first;
                a3 = shared->second.second;
                ++map.mu_prime;
            } else {
                a2 = next++;
                a3 = next++;
            }
            int a4 = next++, a5 = next++, a6 = next++;
            std::array<Edge, 7> p = {Edge(vcopy[i][e.u], a1), Edge(a1, a2), Edge(a2, a3),
                                     Edge(a3, a4),           Edge(a4, a5), Edge(a5, a6),
                                     Edge(a6, vcopy[i][e.v])};
            for (const Edge& pe : p) target.stages[ts].push_back(pe);
            map.paths[i].push_back(p);
            next_plus[e] = {a4, a5};
        }
        plus_pair = std::move(next_plus);
    }
    target.n = next;
    core::canonicalize(target.stages[0]);
    core::canonicalize(target.stages[1]);
    map.target = std::move(target);
    return map;
}

MultistageMatching lift_solution(const ReductionMap& map, const MultistageMatching& two_stage) {
    if (two_stage.tau() != 2)
        throw std::invalid_argument("lift_solution expects a 2-stage solution");
    auto v = core::verify(map.target, two_stage);
    if (!v.feasible)
        throw std::invalid_argument("lift_solution: infeasible input: " + v.violation);

    MultistageMatching m;
    m.per_stage.resize(map.source.tau());
    for (int i = 0; i < map.source.tau(); ++i) {
        const Matching& picked = two_stage.per_stage[ReductionMap::target_stage(i)];
        for (size_t j = 0; j < map.source.stages[i].size(); ++j)
            if (core::contains_edge(picked, map.paths[i][j][2]))  // e_i^- chosen
                m.per_stage[i].push_back(map.source.stages[i][j]);
    }
    auto back = core::verify(map.source, m);
    if (!back.feasible)
        throw std::logic_error("lift_solution produced an infeasible solution: " +
                               back.violation);
    return m;
}

MultistageMatching project_solution(const ReductionMap& map, const MultistageMatching& m) {
    auto v = core::verify(map.source, m);
    if (!v.feasible)
        throw std::invalid_argument("project_solution: infeasible input: " + v.violation);

    MultistageMatching out;
    out.per_stage.assign(2, {});
    for (int i = 0; i < map.source.tau(); ++i) {
        Matching& tgt = out.per_stage[ReductionMap::target_stage(i)];
        for (size_t j = 0; j < map.source.stages[i].size(); ++j) {
            const auto& p = map.paths[i][j];
            if (core::contains_edge(m.per_stage[i], map.source.stages[i][j])) {
                tgt.push_back(p[0]);
                tgt.push_back(p[2]);
                tgt.push_back(p[4]);
                tgt.push_back(p[6]);
            } else {
                tgt.push_back(p[1]);
                tgt.push_back(p[3]);
                tgt.push_back(p[5]);
            }
        }
    }
    core::canonicalize(out.per_stage[0]);
    core::canonicalize(out.per_stage[1]);
    auto fwd = core::verify(map.target, out);
    if (!fwd.feasible)
        throw std::logic_error("project_solution produced an infeasible solution: " +
                               fwd.violation);
    return out;
}

// ---- pipelines -------------------------------------------------------------------

SolveReport best_mim(const TemporalGraph& g) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.objective = Objective::MIM;
    rep.instance_digest = core::instance_digest(g);
    const int tau = g.tau();
    if (tau < 1) throw std::invalid_argument("best_mim: instance has no stages");
    require_matchable_stages(g);
    const long long mu = g.mu();

    if (tau == 1) {
        rep.method = "auto(single-stage)";
        rep.solution.per_stage = {lexmin_pm(g, 0)};
        rep.value = 0;
        rep.certified_ratio = exact_ratio();
        rep.runtime_ms = elapsed_ms(t0);
        return rep;
    }

    // Route A: pair composition over Algorithm 1.
    MultistageApproxResult ra = multistage_approx(g, make_alg1_solver(), Objective::MIM);
    const long long pa = core::profit(ra.solution);

    // Route B: reduction to two stages, Algorithm 1 on the (re-reduced)
    // image, lift back. Subdividing introduces forced path edges, so the
    // image is preprocessed before the 2-stage algorithm runs.
    ReductionMap map = mim_to_2im_reduce(g);
    TemporalGraph image = core::reduce(map.target);
    TwoStageResult rb = approx_2im(image);
    MultistageMatching lifted = lift_solution(map, rb.solution);
    const long long pb = core::profit(lifted);

    if (pa >= pb) {
        rep.method = "auto(alg2)";
        rep.solution = ra.solution;
        rep.value = pa;
        rep.iterations = ra.sub_calls;
        rep.pair_rereduce = true;
    } else {
        rep.method = "auto(reduction)";
        rep.solution = lifted;
        rep.value = pb;
        rep.iterations = rb.iterations;
    }
    if (mu == 0)
        rep.certified_ratio = exact_ratio();
    else if (tau == 2)
        rep.certified_ratio = inv_sqrt_ratio(2 * mu);
    else
        rep.certified_ratio = inv_sqrt_ratio(std::min(8 * mu, 2 * (tau - 1) * mu));
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

SolveReport mum_via_mim(const TemporalGraph& g) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.objective = Objective::MUM;
    rep.instance_digest = core::instance_digest(g);
    const int tau = g.tau();
    if (tau < 1) throw std::invalid_argument("mum_via_mim: instance has no stages");
    require_matchable_stages(g);
    const long long mu = g.mu();

    if (tau == 1) {
        rep.method = "auto(single-stage)";
        rep.solution.per_stage = {lexmin_pm(g, 0)};
        rep.value = 0;
        rep.certified_ratio = exact_ratio();
        rep.runtime_ms = elapsed_ms(t0);
        return rep;
    }

    // Route A: the profit pipeline's solution re-scored under union cost
    // (ratio transfer), bound 2 - 1/sqrt(r*mu) with r = min(2(tau-1), 8).
    SolveReport mim = best_mim(g);
    const long long cost_a = core::union_cost(mim.solution);

    // Route B: pair composition in union-cost mode over the re-scored
    // 2-stage solver, bound 1 + alpha/2 with alpha = 2 - 1/sqrt(2*mu).
    MultistageApproxResult rb = multistage_approx(g, make_alg1_mum_solver(), Objective::MUM);
    const long long cost_b = core::union_cost(rb.solution);

    if (cost_a <= cost_b) {
        rep.method = "auto(best-mim)";
        rep.solution = mim.solution;
        rep.value = cost_a;
        rep.iterations = mim.iterations;
        rep.pair_rereduce = mim.pair_rereduce;
    } else {
        rep.method = "auto(alg2-mum)";
        rep.solution = rb.solution;
        rep.value = cost_b;
        rep.iterations = rb.sub_calls;
        rep.pair_rereduce = true;
    }
    const long long r = std::min<long long>(2 * (tau - 1), 8);
    rep.certified_ratio = mu == 0 ? exact_ratio() : affine_ratio(r * mu);
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

SolveReport trivial_mum(const TemporalGraph& g) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.method = "trivial";
    rep.objective = Objective::MUM;
    rep.instance_digest = core::instance_digest(g);
    if (g.tau() < 1) throw std::invalid_argument("trivial_mum: instance has no stages");
    for (int i = 0; i < g.tau(); ++i) rep.solution.per_stage.push_back(lexmin_pm(g, i));
    rep.value = core::union_cost(rep.solution);
    rep.certified_ratio = {CertifiedRatio::Kind::Factor, 0, 2};
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

FlawedResult flawed_maxmpm_heuristic(const TemporalGraph& g) {
    if (g.tau() != 4)
        throw std::invalid_argument("flawed_maxmpm_heuristic requires exactly 4 stages");
    require_matchable_stages(g);
    // M_i maximizes |M_i cap E_{i+1}| for the first three stages.
    std::vector<Matching> m(3);
    for (int i = 0; i < 3; ++i) m[i] = indicator_mwpm(g.n, g.stages[i], g.stages[i + 1], i);
    const Matching hat1 = lexmin_pm(g, 0);  // "arbitrary", made deterministic
    const Matching hat3 = lexmin_pm(g, 2);

    FlawedResult out;
    out.candidate_a.per_stage = {m[0], m[0], m[2], m[2]};
    out.candidate_b.per_stage = {hat1, m[1], m[1], hat3};
    out.verdict_a = core::verify(g, out.candidate_a);
    out.verdict_b = core::verify(g, out.candidate_b);
    return out;
}

}  // namespace mpm::approx
