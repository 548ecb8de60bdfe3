// Acceptance suite: one line per criterion ("criterion N: pass|FAIL - detail"),
// nonzero exit when any criterion fails. Every numeric bound is checked in
// exact integer or rational arithmetic; timings are wall-clock budgets.
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "mpm/approx.hpp"
#include "mpm/core.hpp"
#include "mpm/exact.hpp"
#include "mpm/gadgets.hpp"
#include "mpm/lp.hpp"
#include "mpm/matching.hpp"
#include "mpm/reduce.hpp"
#include "oracles.hpp"

using namespace mpm;
using namespace mpm::core;
namespace oracle = mpm::test_oracles;

namespace {

int failed_criteria = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s - %s\n", criterion, ok ? "pass" : "FAIL", detail.c_str());
    if (!ok) ++failed_criteria;
}

// Runs one criterion body, converting stray exceptions into a FAIL line so a
// crash in one criterion never hides the others.
void run(int criterion, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        report(criterion, ok, detail);
    } catch (const std::exception& e) {
        report(criterion, false, std::string("exception: ") + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// Seeded reduced feasible instance with mu >= min_mu.
TemporalGraph reduced_instance(std::uint64_t seed, int n, int tau, long long min_mu) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        TemporalGraph g = gadgets::gen_random(n, tau, 0.5, seed + 104729 * attempt);
        TemporalGraph r = reduce(g);
        if (r.mu() >= min_mu) return r;
    }
}

// ---- criterion 1: exact_solve vs product-space search -------------------------

std::pair<bool, std::string> criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    oracle::Rng rng(202608151);
    int checked = 0, infeasible = 0, mismatches = 0;
    while (checked < 200) {
        int n = rng.uniform(1, 8);
        int tau = rng.uniform(1, 4);
        TemporalGraph g = oracle::random_instance(rng, n, tau, rng.uniform(25, 75));
        // Keep the literal product-space oracle affordable: resample when the
        // combination count explodes (the instances stay seeded and random).
        long long combos = 1;
        for (int i = 0; i < tau && combos <= 200000; ++i)
            combos *= std::max<long long>(
                1, static_cast<long long>(oracle::all_perfect_matchings(n, g.stages[i]).size()));
        if (combos > 200000) continue;
        ++checked;
        for (Objective obj : {Objective::MIM, Objective::MUM}) {
            auto expect = oracle::product_space_opt(g, obj);
            if (!expect) {
                ++infeasible;
                try {
                    exact::exact_solve(g, obj);
                    ++mismatches;  // solver claims feasible, oracle disagrees
                } catch (const InfeasibleError&) {
                }
                continue;
            }
            auto got = exact::exact_solve(g, obj);
            Verdict v = verify(g, got.solution);
            bool ok = got.value == *expect && v.feasible &&
                      (obj == Objective::MIM ? v.profit : v.union_cost) == got.value;
            if (!ok) ++mismatches;
        }
    }
    double secs = seconds_since(t0);
    bool ok = mismatches == 0 && secs < 60.0;
    return {ok, fmt("%d instances, both objectives, %d infeasible sides, %d mismatches, "
                    "%.1f s (budget 60 s)",
                    checked, infeasible, mismatches, secs)};
}

// ---- criterion 2: weighted matching engine vs enumeration ---------------------

bool is_bipartite(int n, const EdgeSet& edges) {
    std::vector<std::vector<int>> adj(n);
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v]) {
                if (color[w] < 0) {
                    color[w] = color[v] ^ 1;
                    q.push(w);
                } else if (color[w] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::pair<bool, std::string> criterion2() {
    oracle::Rng rng(202608152);
    int mismatches = 0, feasible = 0, odd_cycles = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int n = rng.uniform(2, 10);
        int percent = trial % 25 == 0 ? 100 : rng.uniform(20, 90);
        WeightedGraph g = oracle::random_weighted_graph(rng, n, percent, rng.uniform(1, 20));
        if (!is_bipartite(g.n, g.edges)) ++odd_cycles;
        auto fast = core::max_weight_perfect_matching(g);
        auto slow = oracle::brute_mwpm(g);
        if (fast.has_value() != slow.has_value()) {
            ++mismatches;
            continue;
        }
        if (!fast) continue;
        ++feasible;
        if (fast->weight != slow->weight || fast->matching != slow->matching) ++mismatches;
    }
    bool ok = mismatches == 0;
    return {ok, fmt("500 weighted graphs (%d with perfect matchings, %d non-bipartite), "
                    "%d mismatches",
                    feasible, odd_cycles, mismatches)};
}

// ---- criterion 3: 2-stage ratio, profit >= 1, iteration bound ------------------

std::pair<bool, std::string> criterion3() {
    int ratio_bad = 0, profit_bad = 0, iter_bad = 0;
    long long worst_mu = 0;
    for (int trial = 0; trial < 100; ++trial) {
        TemporalGraph g = reduced_instance(310000 + trial * 31, 2 * (1 + trial % 5), 2, 1);
        const long long mu = g.mu();
        worst_mu = std::max(worst_mu, mu);
        auto r = approx::approx_2im(g);
        Verdict v = verify(g, r.solution);
        long long opt = exact::exact_solve(g, Objective::MIM).value;
        // profit * sqrt(2 mu) >= OPT, squared into integers.
        if (!v.feasible || v.profit * v.profit * 2 * mu < opt * opt) ++ratio_bad;
        if (v.profit < 1) ++profit_bad;  // E_cap is nonempty on every instance
        if (r.iterations > mu) ++iter_bad;
    }
    bool ok = ratio_bad == 0 && profit_bad == 0 && iter_bad == 0;
    return {ok, fmt("100 reduced 2-stage instances (mu up to %lld): %d ratio, %d profit, "
                    "%d iteration violations",
                    worst_mu, ratio_bad, profit_bad, iter_bad)};
}

// ---- criteria 4, 6, 7 share one battery ----------------------------------------

struct MultistageCase {
    TemporalGraph g;
    long long opt_mim = 0;
    long long opt_mum = 0;
};

std::vector<MultistageCase> multistage_battery() {
    std::vector<MultistageCase> out;
    for (int trial = 0; trial < 100; ++trial) {
        MultistageCase c;
        c.g = reduced_instance(460000 + trial * 47, 2 * (1 + trial % 4), 2 + trial % 3, 0);
        c.opt_mim = exact::exact_solve(c.g, Objective::MIM).value;
        c.opt_mum = exact::exact_solve(c.g, Objective::MUM).value;
        out.push_back(std::move(c));
    }
    return out;
}

std::pair<bool, std::string> criterion4(const std::vector<MultistageCase>& battery) {
    int bad = 0;
    for (const auto& c : battery) {
        auto r = approx::multistage_approx(c.g, approx::make_alg1_solver(), Objective::MIM);
        Verdict v = verify(c.g, r.solution);
        const long long mu = c.g.mu();
        // profit * sqrt(8 mu) >= OPT; with mu = 0 this forces OPT = 0.
        if (!v.feasible || v.profit * v.profit * 8 * mu < c.opt_mim * c.opt_mim) ++bad;
    }
    return {bad == 0, fmt("100 reduced instances (tau up to 4): %d bound violations", bad)};
}

std::pair<bool, std::string> criterion6(const std::vector<MultistageCase>& battery) {
    int bad = 0;
    for (const auto& c : battery) {
        auto rep = approx::mum_via_mim(c.g);
        Verdict v = verify(c.g, rep.solution);
        const long long mu = c.g.mu();
        const long long r = std::min<long long>(2 * (c.g.tau() - 1), 8);
        bool within;
        if (mu == 0) {
            // Empty consecutive intersections force every solution to the
            // same cost, so the only honest bound is exact optimality.
            within = rep.value == c.opt_mum;
        } else {
            const long long d = 2 * c.opt_mum - rep.value;
            within = d >= 0 && d * d * r * mu >= c.opt_mum * c.opt_mum;
        }
        if (!v.feasible || rep.value != v.union_cost || !within) ++bad;
    }
    return {bad == 0, fmt("mum_via_mim vs (2 - 1/sqrt(r*mu)) * OPT on the criterion-4 "
                          "battery: %d violations",
                          bad)};
}

std::pair<bool, std::string> criterion7(const std::vector<MultistageCase>& battery) {
    int bad = 0;
    for (const auto& c : battery) {
        auto r = approx::multistage_approx(c.g, approx::make_alg1_mum_solver(), Objective::MUM);
        Verdict v = verify(c.g, r.solution);
        const long long mu = c.g.mu();
        bool within;
        if (mu == 0) {
            within = v.union_cost == c.opt_mum;
        } else {
            // 1 + alpha2/2 with alpha2 = 2 - 1/sqrt(2 mu) equals 2 - 1/sqrt(8 mu).
            const long long d = 2 * c.opt_mum - v.union_cost;
            within = d >= 0 && d * d * 8 * mu >= c.opt_mum * c.opt_mum;
        }
        if (!v.feasible || !within) ++bad;
    }
    return {bad == 0,
            fmt("pair-composed union-cost solver on the same battery: %d violations", bad)};
}

// ---- criterion 5: the 2-stage reduction ---------------------------------------

std::pair<bool, std::string> criterion5() {
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        TemporalGraph g = reduced_instance(550000 + trial * 53, 2 * (1 + trial % 3),
                                           1 + trial % 3, 0);
        auto map = approx::mim_to_2im_reduce(g);

        long long inter_total = 0;
        for (int i = 0; i + 1 < g.tau(); ++i)
            inter_total += static_cast<long long>(g.intersection(i).size());
        if (map.mu_prime != inter_total) {
            ++bad;
            continue;
        }

        auto src = exact::exact_solve(g, Objective::MIM);
        auto dst = exact::exact_solve(map.target, Objective::MIM);
        if (src.value != dst.value) {
            ++bad;
            continue;
        }

        MultistageMatching projected = approx::project_solution(map, src.solution);
        MultistageMatching back = approx::lift_solution(map, projected);
        MultistageMatching lifted = approx::lift_solution(map, dst.solution);
        bool ok = profit(projected) == src.value && back.per_stage == src.solution.per_stage &&
                  verify(map.target, projected).feasible && verify(g, lifted).feasible &&
                  profit(lifted) == dst.value;
        if (!ok) ++bad;
    }
    return {bad == 0, fmt("50 instances: optimum equality, mu' count and lift/project "
                          "round-trips, %d violations",
                          bad)};
}

// ---- criterion 8: the MaxCut profit gadget -------------------------------------

struct GadgetInput {
    std::string name;
    int n;
    EdgeSet edges;
};

// Compacts away isolated vertices (cut- and edge-preserving), since the
// generator requires every vertex to carry an incidence.
GadgetInput strip_isolated(const GadgetInput& in) {
    std::vector<int> relabel(in.n, -1);
    int next = 0;
    for (const Edge& e : in.edges) {
        if (relabel[e.u] < 0) relabel[e.u] = next++;
        if (relabel[e.v] < 0) relabel[e.v] = next++;
    }
    GadgetInput out{in.name, next, {}};
    for (const Edge& e : in.edges) out.edges.emplace_back(relabel[e.u], relabel[e.v]);
    canonicalize(out.edges);
    return out;
}

std::pair<bool, std::string> criterion8() {
    std::vector<GadgetInput> inputs = {
        {"empty0", 0, {}},
        {"K1", 1, {}},
        {"empty2", 2, {}},
        {"K2", 2, {Edge(0, 1)}},
        {"empty3", 3, {}},
        {"K2+iso", 3, {Edge(0, 1)}},
        {"P3", 3, {Edge(0, 1), Edge(1, 2)}},
        {"K3", 3, {Edge(0, 1), Edge(0, 2), Edge(1, 2)}},
        {"empty4", 4, {}},
        {"K2+2iso", 4, {Edge(0, 1)}},
        {"2K2", 4, {Edge(0, 1), Edge(2, 3)}},
        {"P3+iso", 4, {Edge(0, 1), Edge(1, 2)}},
        {"P4", 4, {Edge(0, 1), Edge(1, 2), Edge(2, 3)}},
        {"K1,3", 4, {Edge(0, 1), Edge(0, 2), Edge(0, 3)}},
        {"K3+iso", 4, {Edge(0, 1), Edge(0, 2), Edge(1, 2)}},
        {"paw", 4, {Edge(0, 1), Edge(0, 2), Edge(1, 2), Edge(2, 3)}},
        {"C4", 4, {Edge(0, 1), Edge(0, 3), Edge(1, 2), Edge(2, 3)}},
        {"diamond", 4, {Edge(0, 1), Edge(0, 2), Edge(1, 2), Edge(1, 3), Edge(2, 3)}},
        {"K4", 4, {Edge(0, 1), Edge(0, 2), Edge(0, 3), Edge(1, 2), Edge(1, 3), Edge(2, 3)}},
    };
    {
        GadgetInput k5{"K5", 5, {}}, c5{"C5", 5, {}};
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) k5.edges.emplace_back(u, v);
        for (int v = 0; v < 5; ++v) c5.edges.emplace_back(v, (v + 1) % 5);
        canonicalize(c5.edges);
        inputs.push_back(std::move(k5));
        inputs.push_back(std::move(c5));
    }

    std::vector<std::string> value_bad, shape_bad, bip_bad;
    for (const GadgetInput& raw : inputs) {
        GadgetInput in = strip_isolated(raw);
        auto gad = gadgets::gen_maxcut_gadget(in.n, in.edges, 0);
        const TemporalGraph& gg = gad.graph;
        const long long want =
            3 * static_cast<long long>(in.edges.size()) + exact::exact_maxcut(in.n, in.edges);

        // Value identity: the independent cycle-structure oracle everywhere,
        // cross-checked by exact_solve wherever the enumeration fits (K5's
        // stage-2 matching count is the one case beyond any sane cap).
        bool value_ok = oracle::cycle_exact_2im(gg) == want;
        if (raw.name != "K5") {
            long long cap = raw.name == "C5" ? (1 << 12) : exact::kDefaultEnumCap;
            value_ok = value_ok && exact::exact_solve(gg, Objective::MIM, cap).value == want;
        }
        if (!value_ok) value_bad.push_back(raw.name);

        bool shape_ok = gg.tau() == 2 && gg.spanning() &&
                        oracle::disjoint_even_cycles(gg.n, gg.stages[0]) &&
                        oracle::disjoint_even_cycles(gg.n, gg.stages[1]) &&
                        oracle::disjoint_two_paths(gg.n, gg.intersection(0)) &&
                        reduce(gg).stages == gg.stages;
        if (!shape_ok) shape_bad.push_back(raw.name);
        if (!gg.union_bipartite()) bip_bad.push_back(raw.name);
    }

    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
        return s;
    };
    bool ok = value_bad.empty() && shape_bad.empty() && bip_bad.empty();
    std::string detail =
        fmt("%zu inputs: value identity and cycle/2-path/spanning/reduced predicates hold",
            inputs.size());
    if (!value_bad.empty()) detail += "; value identity FAILS for " + join(value_bad);
    if (!shape_bad.empty()) detail += "; structural predicates FAIL for " + join(shape_bad);
    if (!bip_bad.empty())
        detail += "; union-bipartite FAILS for the non-bipartite inputs (" + join(bip_bad) +
                  ") - a union graph containing the input's odd cycle pattern can never be "
                  "bipartite; see README 'Known limitations'";
    return {ok, detail};
}

// ---- criterion 9: the integrality-gap certificate ------------------------------

std::pair<bool, std::string> criterion9() {
    bool ok = true;
    std::string detail;
    for (int k = 3; k <= 5; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        auto cert = lp::certify_gap(k);
        auto inst = gadgets::gen_lp_gap(k);
        auto model = lp::build_lp(inst.graph);
        auto chk = lp::check_assignment(model, gadgets::gen_lp_gap_fractional(k));
        double secs = seconds_since(t0);
        bool this_ok = cert.ip_opt == 1 && cert.lp_lb == lp::Rational(k + 1) &&
                       cert.gap_lb == lp::Rational(k + 1) &&
                       inst.graph.mu() == static_cast<long long>(k + 1) * (k + 1) &&
                       chk.feasible && chk.objective == lp::Rational(k + 1) && secs < 30.0;
        ok = ok && this_ok;
        detail += fmt("%sk=%d: gap %s in %.1f s%s", k == 3 ? "" : "; ", k,
                      lp::format_rational(cert.gap_lb).c_str(), secs, this_ok ? "" : " (FAIL)");
    }
    return {ok, detail};
}

// ---- criterion 10: the flawed heuristic vs its counterexample -------------------

std::pair<bool, std::string> criterion10() {
    auto ce = gadgets::gen_counterexample();
    auto fr = approx::flawed_maxmpm_heuristic(ce.graph);
    auto derived = oracle::product_space_opt(ce.graph, Objective::MIM);
    long long solved = exact::exact_solve(ce.graph, Objective::MIM).value;
    bool ok = !fr.verdict_a.feasible && !fr.verdict_b.feasible && derived.has_value() &&
              *derived == 6 && solved == 6;
    return {ok, fmt("both candidates infeasible (%s / %s); exact optimum %lld "
                    "(oracle %lld) is unreachable by the heuristic",
                    fr.verdict_a.feasible ? "feasible" : "infeasible",
                    fr.verdict_b.feasible ? "feasible" : "infeasible", solved,
                    derived ? *derived : -1)};
}

// ---- criterion 11: closed-form family values ------------------------------------

std::pair<bool, std::string> criterion11() {
    auto tc = gadgets::gen_two_cycles(6);
    long long tc_mim = exact::exact_solve(tc, Objective::MIM).value;
    long long tc_mum = exact::exact_solve(tc, Objective::MUM).value;
    auto alt = gadgets::gen_alternating(2);
    long long alt_mim = exact::exact_solve(alt, Objective::MIM).value;
    bool ok = tc_mim == 1 && tc_mum == 5 && alt_mim == 0;
    return {ok, fmt("two-cycles(6): MIM %lld (want 1), MUM %lld (want 5); "
                    "alternating(2): MIM %lld (want 0)",
                    tc_mim, tc_mum, alt_mim)};
}

}  // namespace

int main() {
    run(1, criterion1);
    run(2, criterion2);
    run(3, criterion3);

    std::vector<MultistageCase> battery;
    try {
        battery = multistage_battery();
    } catch (const std::exception& e) {
        std::printf("battery construction failed: %s\n", e.what());
    }
    run(4, [&] { return criterion4(battery); });
    run(5, criterion5);
    run(6, [&] { return criterion6(battery); });
    run(7, [&] { return criterion7(battery); });
    run(8, criterion8);
    run(9, criterion9);
    run(10, criterion10);
    run(11, criterion11);

    if (failed_criteria == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failed_criteria);
    return 1;
}
