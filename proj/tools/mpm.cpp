// mpm: command-line toolkit for multistage perfect matching problems.
// Subcommands: solve, generate, verify, reduce, certify-gap, bench. Reports
// go to standard output, diagnostics to standard error. Exit codes: 0 success,
// 1 usage/parse error, 2 infeasible instance (or flawed-heuristic run where
// both candidates are infeasible).
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpm/approx.hpp"
#include "mpm/core.hpp"
#include "mpm/exact.hpp"
#include "mpm/gadgets.hpp"
#include "mpm/lp.hpp"
#include "mpm/reduce.hpp"

namespace {

using mpm::core::MultistageMatching;
using mpm::core::Objective;
using mpm::core::TemporalGraph;
using mpm::approx::CertifiedRatio;
using mpm::approx::SolveReport;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// ---- solve --------------------------------------------------------------------

struct SolveOptions {
    std::string in;
    std::string objective = "mim";
    std::string method = "auto";
    long long cap = mpm::exact::kDefaultEnumCap;
    bool no_reduce = false;
};

CertifiedRatio ratio_for(Objective obj, long long radicand) {
    if (radicand == 0) return {CertifiedRatio::Kind::Exact, 0, 1};
    if (obj == Objective::MIM) return {CertifiedRatio::Kind::InvSqrt, radicand, 1};
    return {CertifiedRatio::Kind::Affine, radicand, 1};
}

int run_flawed(const TemporalGraph& g, const std::string& digest,
               std::chrono::steady_clock::time_point t0) {
    auto fr = mpm::approx::flawed_maxmpm_heuristic(g);
    auto candidate = [](const MultistageMatching& m, const mpm::core::Verdict& v) {
        nlohmann::json c;
        c["solution"] = nlohmann::json::parse(mpm::core::serialize_solution(m));
        c["feasible"] = v.feasible;
        c["profit"] = v.profit;
        c["union_cost"] = v.union_cost;
        c["violation"] = v.violation;
        return c;
    };
    nlohmann::json rep;
    rep["method"] = "flawed";
    rep["objective"] = "mim";
    rep["candidates"]["a"] = candidate(fr.candidate_a, fr.verdict_a);
    rep["candidates"]["b"] = candidate(fr.candidate_b, fr.verdict_b);
    const bool a_ok = fr.verdict_a.feasible, b_ok = fr.verdict_b.feasible;
    if (a_ok || b_ok) {
        long long best = std::max(a_ok ? fr.verdict_a.profit : -1,
                                  b_ok ? fr.verdict_b.profit : -1);
        rep["value"] = best;
    } else {
        rep["value"] = nullptr;
    }
    rep["instance_digest"] = digest;
    rep["runtime_ms"] = ms_since(t0);
    std::cout << rep.dump(2) << "\n";
    return (a_ok || b_ok) ? kExitOk : kExitInfeasible;
}

int run_solve(const SolveOptions& opt) {
    const TemporalGraph input = mpm::core::parse_instance(read_file(opt.in));
    const std::string digest = mpm::core::instance_digest(input);
    const Objective obj = opt.objective == "mim" ? Objective::MIM : Objective::MUM;

    TemporalGraph g = input;
    if (!opt.no_reduce) {
        std::vector<int> dead;
        g = mpm::core::reduce(input, &dead);
        if (!dead.empty()) {
            std::cerr << "infeasible: stage " << dead.front() + 1
                      << " has no perfect matching\n";
            return kExitInfeasible;
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    if (opt.method == "flawed") {
        if (obj != Objective::MIM)
            throw CLI::ValidationError("--method flawed targets the intersection profit; "
                                       "use --objective mim");
        return run_flawed(g, digest, t0);
    }

    SolveReport rep;
    rep.objective = obj;
    const long long mu = g.mu();
    if (opt.method == "exact") {
        auto ex = mpm::exact::exact_solve(g, obj, opt.cap);
        rep.method = "exact";
        rep.value = ex.value;
        rep.solution = ex.solution;
        rep.certified_ratio = {CertifiedRatio::Kind::Exact, 0, 1};
        rep.runtime_ms = ms_since(t0);
    } else if (opt.method == "alg1") {
        auto r2 = mpm::approx::approx_2im(g);
        rep.method = "alg1";
        rep.solution = r2.solution;
        rep.iterations = r2.iterations;
        rep.value = obj == Objective::MIM ? mpm::core::profit(r2.solution)
                                          : mpm::core::union_cost(r2.solution);
        rep.certified_ratio = ratio_for(obj, 2 * mu);
        rep.runtime_ms = ms_since(t0);
    } else if (opt.method == "alg2") {
        auto sub = obj == Objective::MIM ? mpm::approx::make_alg1_solver()
                                         : mpm::approx::make_alg1_mum_solver();
        auto mr = mpm::approx::multistage_approx(g, sub, obj);
        rep.method = "alg2";
        rep.solution = mr.solution;
        rep.iterations = mr.sub_calls;
        rep.pair_rereduce = true;
        rep.value = obj == Objective::MIM ? mpm::core::profit(mr.solution)
                                          : mpm::core::union_cost(mr.solution);
        rep.certified_ratio = ratio_for(obj, 8 * mu);
        rep.runtime_ms = ms_since(t0);
    } else if (opt.method == "reduction") {
        auto map = mpm::approx::mim_to_2im_reduce(g);
        TemporalGraph image = mpm::core::reduce(map.target);
        auto r2 = mpm::approx::approx_2im(image);
        rep.method = "reduction";
        rep.solution = mpm::approx::lift_solution(map, r2.solution);
        rep.iterations = r2.iterations;
        rep.value = obj == Objective::MIM ? mpm::core::profit(rep.solution)
                                          : mpm::core::union_cost(rep.solution);
        rep.certified_ratio = ratio_for(obj, 2 * map.mu_prime);
        rep.runtime_ms = ms_since(t0);
    } else if (opt.method == "auto") {
        rep = obj == Objective::MIM ? mpm::approx::best_mim(g) : mpm::approx::mum_via_mim(g);
    } else {  // trivial
        if (obj != Objective::MUM)
            throw CLI::ValidationError("--method trivial certifies only the union cost; "
                                       "use --objective mum");
        rep = mpm::approx::trivial_mum(g);
    }
    rep.instance_digest = digest;
    std::cout << mpm::approx::serialize_report(rep);
    return kExitOk;
}

// ---- generate -----------------------------------------------------------------

void emit_instance(const TemporalGraph& g, const std::string& labels_json,
                   const std::string& labels_out) {
    std::cout << mpm::core::serialize_instance(g);
    if (!labels_out.empty()) {
        if (labels_json.empty())
            throw CLI::ValidationError("this generator produces no labels");
        write_file(labels_out, labels_json);
    }
}

// ---- verify / reduce ----------------------------------------------------------

int run_verify(const std::string& in, const std::string& solution) {
    const TemporalGraph g = mpm::core::parse_instance(read_file(in));
    const MultistageMatching m = mpm::core::parse_solution(read_file(solution));
    const auto v = mpm::core::verify(g, m);
    nlohmann::json rep;
    rep["feasible"] = v.feasible;
    rep["profit"] = v.profit;
    rep["union_cost"] = v.union_cost;
    rep["violation"] = v.violation;
    rep["instance_digest"] = mpm::core::instance_digest(g);
    std::cout << rep.dump(2) << "\n";
    return v.feasible ? kExitOk : kExitInfeasible;
}

int run_reduce(const std::string& in) {
    const TemporalGraph g = mpm::core::parse_instance(read_file(in));
    std::vector<int> dead;
    const TemporalGraph r = mpm::core::reduce(g, &dead);
    std::cout << mpm::core::serialize_instance(r);
    for (int s : dead)
        std::cerr << "infeasible: stage " << s + 1 << " has no perfect matching\n";
    return dead.empty() ? kExitOk : kExitInfeasible;
}

// ---- bench ----------------------------------------------------------------------

struct BenchOptions {
    int n = 8;
    int tau = 3;
    int count = 20;
    std::uint64_t seed = 1;
    double p = 0.5;
    long long cap = mpm::exact::kDefaultEnumCap;
};

struct BenchRow {
    long long mu = 0;
    bool have_exact = false;
    long long exact_mim = 0, exact_mum = 0;
    long long alg2 = 0, red = 0, mvm = 0, triv = 0;
};

int run_bench(const BenchOptions& opt) {
    std::vector<BenchRow> rows(opt.count);
    for (int i = 0; i < opt.count; ++i) {
        TemporalGraph g = mpm::gadgets::gen_random(opt.n, opt.tau, opt.p, opt.seed + i);
        BenchRow& row = rows[i];
        row.mu = g.mu();
        try {
            row.exact_mim = mpm::exact::exact_solve(g, Objective::MIM, opt.cap).value;
            row.exact_mum = mpm::exact::exact_solve(g, Objective::MUM, opt.cap).value;
            row.have_exact = true;
        } catch (const std::overflow_error&) {
            row.have_exact = false;  // cap exceeded; ratios print as "-"
        }
        row.alg2 = mpm::core::profit(
            mpm::approx::multistage_approx(g, mpm::approx::make_alg1_solver(), Objective::MIM)
                .solution);
        auto map = mpm::approx::mim_to_2im_reduce(g);
        auto r2 = mpm::approx::approx_2im(mpm::core::reduce(map.target));
        row.red = mpm::core::profit(mpm::approx::lift_solution(map, r2.solution));
        row.mvm = mpm::approx::mum_via_mim(g).value;
        row.triv = mpm::approx::trivial_mum(g).value;
    }

    std::printf("%4s %4s %4s %4s %7s %6s %8s %6s %8s %7s %6s %8s %6s %8s\n", "idx", "n",
                "tau", "mu", "exMIM", "alg2", "ratio", "red", "ratio", "exMUM", "mvm", "ratio",
                "triv", "ratio");
    // MIM ratios are profit/OPT (want >= 1/sqrt(8*mu)); MUM ratios cost/OPT.
    std::vector<std::vector<double>> ratio_cols(4);
    auto ratio_cell = [](bool have, long long val, long long opt_val,
                         std::vector<double>& col) {
        if (!have) return std::string("-");
        double r = opt_val == 0 ? 1.0 : static_cast<double>(val) / static_cast<double>(opt_val);
        if (opt_val == 0 && val != 0) r = 0.0;  // profit above an optimum of 0 cannot happen
        col.push_back(r);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", r);
        return std::string(buf);
    };
    for (int i = 0; i < opt.count; ++i) {
        const BenchRow& r = rows[i];
        auto num = [&](long long v) { return r.have_exact ? std::to_string(v) : std::string("-"); };
        std::printf("%4d %4d %4d %4lld %7s %6lld %8s %6lld %8s %7s %6lld %8s %6lld %8s\n", i,
                    opt.n, opt.tau, r.mu, num(r.exact_mim).c_str(), r.alg2,
                    ratio_cell(r.have_exact, r.alg2, r.exact_mim, ratio_cols[0]).c_str(), r.red,
                    ratio_cell(r.have_exact, r.red, r.exact_mim, ratio_cols[1]).c_str(),
                    num(r.exact_mum).c_str(), r.mvm,
                    ratio_cell(r.have_exact, r.mvm, r.exact_mum, ratio_cols[2]).c_str(), r.triv,
                    ratio_cell(r.have_exact, r.triv, r.exact_mum, ratio_cols[3]).c_str());
    }
    auto agg = [&](const std::vector<double>& col, bool want_min) {
        if (col.empty()) return std::string("-");
        double m = want_min ? *std::min_element(col.begin(), col.end())
                            : std::accumulate(col.begin(), col.end(), 0.0) / col.size();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", m);
        return std::string(buf);
    };
    std::printf("%4s %4s %4s %4s %7s %6s %8s %6s %8s %7s %6s %8s %6s %8s\n", "min", "", "", "",
                "", "", agg(ratio_cols[0], true).c_str(), "", agg(ratio_cols[1], true).c_str(),
                "", "", agg(ratio_cols[2], true).c_str(), "", agg(ratio_cols[3], true).c_str());
    std::printf("%4s %4s %4s %4s %7s %6s %8s %6s %8s %7s %6s %8s %6s %8s\n", "mean", "", "",
                "", "", "", agg(ratio_cols[0], false).c_str(), "",
                agg(ratio_cols[1], false).c_str(), "", "", agg(ratio_cols[2], false).c_str(),
                "", agg(ratio_cols[3], false).c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multistage perfect matching toolkit"};
    app.require_subcommand(1);
    int rc = kExitOk;

    SolveOptions sopt;
    auto* solve = app.add_subcommand("solve", "run a solver on an instance file");
    solve->add_option("--in", sopt.in, "instance file (JSON)")->required();
    solve->add_option("--objective", sopt.objective, "mim | mum")
        ->check(CLI::IsMember({"mim", "mum"}));
    solve->add_option("--method", sopt.method,
                      "exact | alg1 | alg2 | reduction | auto | trivial | flawed")
        ->check(CLI::IsMember(
            {"exact", "alg1", "alg2", "reduction", "auto", "trivial", "flawed"}));
    solve->add_option("--cap", sopt.cap, "per-stage enumeration cap for --method exact");
    solve->add_flag("--no-reduce", sopt.no_reduce, "skip the reduction preprocessing step");
    solve->callback([&] { rc = run_solve(sopt); });

    auto* gen = app.add_subcommand("generate", "emit a benchmark/hardness instance");
    gen->require_subcommand(1);
    std::string labels_out;

    struct {
        std::string in;
        long long k = 0;
    } mc;
    auto* g_mc = gen->add_subcommand("maxcut",
                                     "cut-threshold gadget from a single-stage instance");
    g_mc->add_option("--in", mc.in, "single-stage instance holding the input graph")
        ->required();
    g_mc->add_option("--k", mc.k, "cut threshold (profit threshold is 3|E| + k)");
    g_mc->add_option("--labels-out", labels_out, "write the labels side-document here");
    g_mc->callback([&] {
        const TemporalGraph in = mpm::core::parse_instance(read_file(mc.in));
        if (in.tau() != 1)
            throw CLI::ValidationError("generate maxcut expects a single-stage instance");
        auto gad = mpm::gadgets::gen_maxcut_gadget(in.n, in.stages[0], mc.k);
        emit_instance(gad.graph, gad.labels.to_json(), labels_out);
    });

    int lp_k = 3;
    auto* g_lp = gen->add_subcommand("lp-gap", "integrality-gap family instance");
    g_lp->add_option("--k", lp_k, "gap parameter (k >= 3)")->required();
    g_lp->add_option("--labels-out", labels_out, "write the labels side-document here");
    g_lp->callback([&] {
        auto li = mpm::gadgets::gen_lp_gap(lp_k);
        emit_instance(li.graph, li.labels.to_json(), labels_out);
    });

    auto* g_ce = gen->add_subcommand("counterexample",
                                     "4-stage instance defeating the reuse heuristic");
    g_ce->add_option("--labels-out", labels_out, "write the labels side-document here");
    g_ce->callback([&] {
        auto li = mpm::gadgets::gen_counterexample();
        emit_instance(li.graph, li.labels.to_json(), labels_out);
    });

    int tc_k = 6;
    auto* g_tc = gen->add_subcommand("two-cycles", "two k-cycles sharing exactly one edge");
    g_tc->add_option("--k", tc_k, "cycle length (even, >= 6)")->required();
    g_tc->callback([&] { emit_instance(mpm::gadgets::gen_two_cycles(tc_k), "", labels_out); });

    int alt_tau = 2;
    auto* g_alt = gen->add_subcommand("alternating",
                                      "4-vertex stages with empty consecutive intersections");
    g_alt->add_option("--tau", alt_tau, "stage count (>= 2)")->required();
    g_alt->callback(
        [&] { emit_instance(mpm::gadgets::gen_alternating(alt_tau), "", labels_out); });

    struct {
        int n = 8;
        int tau = 3;
        double p = 0.5;
        std::uint64_t seed = 1;
    } rnd;
    auto* g_rnd = gen->add_subcommand("random", "seeded random feasible instance");
    g_rnd->add_option("--n", rnd.n, "vertex count (even, >= 2)")->required();
    g_rnd->add_option("--tau", rnd.tau, "stage count (>= 1)")->required();
    g_rnd->add_option("--p", rnd.p, "edge probability (0 < p <= 1)");
    g_rnd->add_option("--seed", rnd.seed, "RNG seed");
    g_rnd->callback([&] {
        emit_instance(mpm::gadgets::gen_random(rnd.n, rnd.tau, rnd.p, rnd.seed), "",
                      labels_out);
    });

    struct {
        std::string in, solution;
    } ver;
    auto* verify = app.add_subcommand("verify", "check a solution against an instance");
    verify->add_option("--in", ver.in, "instance file")->required();
    verify->add_option("--solution", ver.solution, "solution file")->required();
    verify->callback([&] { rc = run_verify(ver.in, ver.solution); });

    std::string red_in;
    auto* reduce = app.add_subcommand("reduce", "strip edges outside all perfect matchings");
    reduce->add_option("--in", red_in, "instance file")->required();
    reduce->callback([&] { rc = run_reduce(red_in); });

    int gap_k = 3;
    auto* gap = app.add_subcommand("certify-gap",
                                   "exact-rational LP gap certificate for the gap family");
    gap->add_option("--k", gap_k, "gap parameter (k >= 3)")->required();
    gap->callback([&] {
        auto cert = mpm::lp::certify_gap(gap_k);
        nlohmann::json rep;
        rep["ip_opt"] = cert.ip_opt;
        rep["lp_lb"] = mpm::lp::format_rational(cert.lp_lb);
        rep["gap_lb"] = mpm::lp::format_rational(cert.gap_lb);
        std::cout << rep.dump(2) << "\n";
    });

    BenchOptions bopt;
    auto* bench = app.add_subcommand("bench", "seeded random batch across all methods");
    bench->add_option("--n", bopt.n, "vertex count per instance");
    bench->add_option("--tau", bopt.tau, "stage count per instance");
    bench->add_option("--count", bopt.count, "number of instances");
    bench->add_option("--seed", bopt.seed, "base seed; instance i uses seed + i");
    bench->add_option("--p", bopt.p, "edge probability");
    bench->add_option("--cap", bopt.cap, "enumeration cap for the exact columns");
    bench->callback([&] { rc = run_bench(bopt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const mpm::core::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return rc;
}
