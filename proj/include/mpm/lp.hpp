// The natural LP relaxation of 2-stage MIM: exact-rational model construction,
// feasibility checking of fractional points, and integrality-gap certification
// against the exact optimum. No LP solver: the gap certificate only needs the
// exact integral optimum plus a feasibility check of an explicit fractional
// point, so everything here is exact arithmetic.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mpm/core.hpp"

namespace mpm::lp {

using core::Edge;
using core::EdgeSet;
using core::MultistageMatching;
using core::TemporalGraph;

using Rational = boost::multiprecision::cpp_rational;

// "p/q" with the "/q" omitted for integers; parse accepts both forms.
std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& text);

// One odd-set (blossom) row: sum of x over stage edges inside `members`
// is at most (|members|-1)/2.
struct BlossomRow {
    int stage = 0;                  // 0-based
    std::vector<int> members;       // sorted, odd size >= 3
};

// max sum z_e  s.t.  per-vertex degree equalities per stage, z_e <= x^l_e for
// every intersection edge, optional odd-set rows, and 0 <= vars <= 1.
struct LpModel {
    TemporalGraph g;                // the 2-stage instance (stages canonical)
    EdgeSet inter;                  // E_1 cap E_2, canonical
    int blossom_cap = 0;            // 0: no odd-set rows requested
    std::vector<BlossomRow> blossom_rows;
};

// Exact rational value per variable: x[l][e] for stage l edge e, z[e] for
// intersection edges.
struct FractionalAssignment {
    std::array<std::map<Edge, Rational>, 2> x;
    std::map<Edge, Rational> z;
};

// Builds the model for a 2-stage instance. blossom_cap = 0 omits the odd-set
// rows entirely; otherwise it must be odd and >= 3, and one row is emitted
// per odd vertex set of size <= cap whose induced stage subgraph is
// factor-critical (every other odd-set row is implied by the degree
// equalities, the variable bounds and these rows).
LpModel build_lp(const TemporalGraph& g, int blossom_cap = 0);

// Exact evaluation of an assignment against every model row, in canonical
// order: variable bounds, degree equalities (stage then vertex), odd-set
// rows, then the z <= x caps (edge then stage). `violated` describes the
// first failing row, or is empty. The objective is reported either way.
struct CheckResult {
    bool feasible = false;
    Rational objective;
    std::string violated;
};

CheckResult check_assignment(const LpModel& model, const FractionalAssignment& a);

// The integral point of a 2-stage perfect matching: x = edge indicators,
// z = min of the two stages' indicators.
FractionalAssignment assignment_from_solution(const LpModel& model,
                                              const MultistageMatching& m);

// Integrality-gap certificate for the k-parameterized gap family: the exact
// integral optimum, the fractional objective of the constructed feasible
// point (a lower bound on the LP optimum), and their ratio. Throws
// std::logic_error if any certified identity (ip_opt = 1, lp_lb = k+1)
// fails to hold.
struct GapCertificate {
    long long ip_opt = 0;
    Rational lp_lb;
    Rational gap_lb;
};

GapCertificate certify_gap(int k);

// Human-readable LP exchange text (objective, rows, bounds). One-way export
// for external solvers; nothing in this repository parses it back.
std::string export_lp_text(const LpModel& model);

}  // namespace mpm::lp
