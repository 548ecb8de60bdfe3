// Tests for the exact-rational LP module: model construction (degree rows,
// odd-set rows, caps), assignment checking in canonical row order, integral
// points, the gap certificate and the text export.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "mpm/core.hpp"
#include "mpm/exact.hpp"
#include "mpm/gadgets.hpp"
#include "mpm/lp.hpp"

using namespace mpm::core;
using namespace mpm::lp;
using mpm::exact::exact_solve;
using mpm::gadgets::LabeledInstance;

// Triangle 0-1-2 with a pendant edge 2-3 in stage 1; stage 2 is a matching.
static TemporalGraph pendant_triangle() {
    TemporalGraph g;
    g.n = 4;
    g.stages = {{Edge(0, 1), Edge(0, 2), Edge(1, 2), Edge(2, 3)},
                {Edge(0, 1), Edge(2, 3)}};
    return g;
}

TEST_CASE("rational formatting round-trips and normalizes") {
    CHECK(format_rational(Rational(10, 4)) == "5/2");
    CHECK(format_rational(Rational(7)) == "7");
    CHECK(format_rational(Rational(0)) == "0");
    CHECK(format_rational(Rational(-3, 6)) == "-1/2");
    CHECK(parse_rational("5/2") == Rational(5, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational(format_rational(Rational(22, 7))) == Rational(22, 7));
}

TEST_CASE("build_lp shapes the model") {
    TemporalGraph g = pendant_triangle();

    SUBCASE("without odd-set rows") {
        LpModel m = build_lp(g);
        CHECK(m.inter == EdgeSet{Edge(0, 1), Edge(2, 3)});
        CHECK(m.blossom_rows.empty());
        CHECK(m.blossom_cap == 0);
    }
    SUBCASE("cap 3 emits exactly the factor-critical triangle") {
        LpModel m = build_lp(g, 3);
        REQUIRE(m.blossom_rows.size() == 1);
        CHECK(m.blossom_rows[0].stage == 0);
        CHECK(m.blossom_rows[0].members == std::vector<int>{0, 1, 2});
    }
    SUBCASE("cap must be odd and >= 3") {
        CHECK_THROWS_AS(build_lp(g, 2), std::invalid_argument);
        CHECK_THROWS_AS(build_lp(g, 4), std::invalid_argument);
        CHECK_THROWS_AS(build_lp(g, -3), std::invalid_argument);
    }
    SUBCASE("only 2-stage instances are modeled") {
        TemporalGraph bad;
        bad.n = 2;
        bad.stages = {{Edge(0, 1)}};
        CHECK_THROWS_AS(build_lp(bad), std::invalid_argument);
        bad.stages = {{Edge(0, 1)}, {Edge(0, 1)}, {Edge(0, 1)}};
        CHECK_THROWS_AS(build_lp(bad), std::invalid_argument);
    }
}

TEST_CASE("check_assignment reports the first violated row in canonical order") {
    TemporalGraph g = pendant_triangle();
    LpModel model = build_lp(g, 3);

    // Start from a point violating several row families at once.
    FractionalAssignment a;
    a.x[0][Edge(0, 1)] = Rational(1, 2);
    a.x[0][Edge(0, 2)] = Rational(1, 2);
    a.x[0][Edge(1, 2)] = Rational(1, 2);
    a.x[0][Edge(2, 3)] = 0;
    a.x[1][Edge(0, 1)] = 1;
    a.x[1][Edge(2, 3)] = 1;
    for (const Edge& e : model.inter) a.z[e] = 0;

    // Degree row first: vertex 2 in stage 1 sums to 3/2 (and vertex 3 to 0).
    CheckResult r = check_assignment(model, a);
    CHECK_FALSE(r.feasible);
    CHECK(r.violated.rfind("degree:", 0) == 0);

    // A negative variable makes bounds fail before the degree rows.
    a.x[0][Edge(2, 3)] = Rational(-1, 2);
    r = check_assignment(model, a);
    CHECK_FALSE(r.feasible);
    CHECK(r.violated.rfind("bounds:", 0) == 0);

    // Missing variables are a usage error, not a violation.
    FractionalAssignment incomplete;
    CHECK_THROWS_AS(check_assignment(model, incomplete), std::invalid_argument);
}

TEST_CASE("all-half point on twin triangles trips only the odd-set row") {
    TemporalGraph tri2;
    tri2.n = 3;
    tri2.stages = {{Edge(0, 1), Edge(0, 2), Edge(1, 2)},
                   {Edge(0, 1), Edge(0, 2), Edge(1, 2)}};
    LpModel model = build_lp(tri2, 3);
    CHECK(model.blossom_rows.size() == 2);  // one triangle per stage

    FractionalAssignment h;
    for (const Edge& e : tri2.stages[0]) {
        h.x[0][e] = Rational(1, 2);
        h.x[1][e] = Rational(1, 2);
        h.z[e] = Rational(1, 2);
    }
    CheckResult r = check_assignment(model, h);
    CHECK_FALSE(r.feasible);
    CHECK(r.violated.rfind("blossom:", 0) == 0);
    CHECK(r.objective == Rational(3, 2));  // objective is reported regardless

    // Without odd-set rows the same point is feasible: the integrality gap
    // of the degree-only relaxation in miniature.
    LpModel loose = build_lp(tri2);
    CheckResult r2 = check_assignment(loose, h);
    CHECK(r2.feasible);
    CHECK(r2.objective == Rational(3, 2));
}

TEST_CASE("a z above its stage indicators trips a cap row") {
    LabeledInstance inst = mpm::gadgets::gen_lp_gap(3);
    LpModel model = build_lp(inst.graph);
    FractionalAssignment frac = mpm::gadgets::gen_lp_gap_fractional(3);
    CHECK(check_assignment(model, frac).feasible);

    frac.z[inst.labels.at("shared[0,0]")] = 1;
    CheckResult r = check_assignment(model, frac);
    CHECK_FALSE(r.feasible);
    CHECK(r.violated.rfind("cap:", 0) == 0);
}

TEST_CASE("integral points of exact solutions are feasible with matching objective") {
    LabeledInstance inst = mpm::gadgets::gen_lp_gap(3);
    LpModel model = build_lp(inst.graph);
    auto ex = exact_solve(inst.graph, Objective::MIM);
    FractionalAssignment ia = assignment_from_solution(model, ex.solution);
    CheckResult r = check_assignment(model, ia);
    CHECK(r.feasible);
    CHECK(r.objective == Rational(ex.value));

    // Same under odd-set rows: integral matchings satisfy every blossom row.
    LpModel strict = build_lp(inst.graph, 3);
    CHECK(check_assignment(strict, ia).feasible);
}

TEST_CASE("certify_gap produces the k+1 gap certificate") {
    for (int k = 3; k <= 5; ++k) {
        GapCertificate cert = certify_gap(k);
        CHECK(cert.ip_opt == 1);
        CHECK(cert.lp_lb == Rational(k + 1));
        CHECK(cert.gap_lb == Rational(k + 1));
    }
    CHECK_THROWS_AS(certify_gap(2), std::invalid_argument);
}

TEST_CASE("export_lp_text lists objective, rows and bounds") {
    LpModel model = build_lp(pendant_triangle(), 3);
    std::string text = export_lp_text(model);
    CHECK(text.find("Maximize") != std::string::npos);
    CHECK(text.find("odd0:") != std::string::npos);
    CHECK(text.find("Bounds") != std::string::npos);
}
