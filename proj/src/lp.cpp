#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mpm/exact.hpp"
#include "mpm/gadgets.hpp"
#include "mpm/lp.hpp"
#include "mpm/matching.hpp"

namespace mpm::lp {

namespace {

std::string edge_tag(const Edge& e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

std::string var_x(int stage, const Edge& e) {
    return "x" + std::to_string(stage + 1) + "[" + edge_tag(e) + "]";
}

// True iff the graph induced on `members` (odd size) has a perfect matching
// after deleting any single member, i.e. is factor-critical. Only these
// odd sets get a row: every other odd-set inequality is implied by the
// degree equalities, the [0,1] bounds and the factor-critical rows.
bool factor_critical(int n, const EdgeSet& induced, const std::vector<int>& members) {
    const int want = static_cast<int>(members.size() - 1) / 2;
    for (int w : members) {
        EdgeSet rest;
        for (const Edge& e : induced)
            if (e.u != w && e.v != w) rest.push_back(e);
        if (core::max_matching_size(n, rest) != want) return false;
    }
    return true;
}

}  // namespace

std::string format_rational(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos)
            return Rational(boost::multiprecision::cpp_int(text));
        const boost::multiprecision::cpp_int num(text.substr(0, slash));
        const boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

LpModel build_lp(const TemporalGraph& g, int blossom_cap) {
    if (g.tau() != 2) throw std::invalid_argument("build_lp requires exactly 2 stages");
    LpModel model;
    model.g = g;
    model.inter = g.intersection(0);
    model.blossom_cap = blossom_cap;
    if (blossom_cap == 0) return model;
    if (blossom_cap < 3 || blossom_cap % 2 == 0)
        throw std::invalid_argument("blossom cap must be odd and >= 3");

    for (int stage = 0; stage < 2; ++stage) {
        std::vector<int> verts;
        auto mask = g.stage_vertices(stage);
        for (int v = 0; v < g.n; ++v)
            if (mask[v]) verts.push_back(v);
        const int nv = static_cast<int>(verts.size());
        for (int size = 3; size <= std::min(blossom_cap, nv); size += 2) {
            // lexicographic combinations of `size` stage vertices
            std::vector<int> pick(size);
            for (int i = 0; i < size; ++i) pick[i] = i;
            for (;;) {
                std::vector<int> members(size);
                for (int i = 0; i < size; ++i) members[i] = verts[pick[i]];
                EdgeSet induced;
                for (const Edge& e : g.stages[stage])
                    if (std::binary_search(members.begin(), members.end(), e.u) &&
                        std::binary_search(members.begin(), members.end(), e.v))
                        induced.push_back(e);
                if (static_cast<int>(induced.size()) >= size &&
                    factor_critical(g.n, induced, members))
                    model.blossom_rows.push_back({stage, members});
                int i = size - 1;
                while (i >= 0 && pick[i] == nv - size + i) --i;
                if (i < 0) break;
                ++pick[i];
                for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return model;
}

CheckResult check_assignment(const LpModel& model, const FractionalAssignment& a) {
    // Coverage first: exactly one value per model variable.
    for (int stage = 0; stage < 2; ++stage) {
        for (const Edge& e : model.g.stages[stage])
            if (!a.x[stage].count(e))
                throw std::invalid_argument("missing value for " + var_x(stage, e));
        if (a.x[stage].size() != model.g.stages[stage].size())
            for (const auto& [e, val] : a.x[stage])
                if (!core::contains_edge(model.g.stages[stage], e))
                    throw std::invalid_argument("unknown variable " + var_x(stage, e));
    }
    for (const Edge& e : model.inter)
        if (!a.z.count(e))
            throw std::invalid_argument("missing value for z[" + edge_tag(e) + "]");
    if (a.z.size() != model.inter.size())
        for (const auto& [e, val] : a.z)
            if (!core::contains_edge(model.inter, e))
                throw std::invalid_argument("unknown variable z[" + edge_tag(e) + "]");

    CheckResult res;
    for (const Edge& e : model.inter) res.objective += a.z.at(e);
    auto fail = [&res](const std::string& msg) {
        res.feasible = false;
        res.violated = msg;
        return res;
    };

    // Variable bounds, in canonical variable order.
    for (int stage = 0; stage < 2; ++stage)
        for (const Edge& e : model.g.stages[stage]) {
            const Rational& v = a.x[stage].at(e);
            if (v < 0 || v > 1)
                return fail("bounds: " + var_x(stage, e) + " = " + format_rational(v));
        }
    for (const Edge& e : model.inter) {
        const Rational& v = a.z.at(e);
        if (v < 0 || v > 1)
            return fail("bounds: z[" + edge_tag(e) + "] = " + format_rational(v));
    }

    // Degree equalities: every matched vertex's incident stage values sum to 1.
    for (int stage = 0; stage < 2; ++stage) {
        std::vector<Rational> sum(model.g.n);
        for (const Edge& e : model.g.stages[stage]) {
            sum[e.u] += a.x[stage].at(e);
            sum[e.v] += a.x[stage].at(e);
        }
        auto mask = model.g.stage_vertices(stage);
        for (int v = 0; v < model.g.n; ++v)
            if (mask[v] && sum[v] != 1)
                return fail("degree: stage " + std::to_string(stage + 1) + ", vertex " +
                            std::to_string(v) + " sums to " + format_rational(sum[v]));
    }

    // Odd-set rows.
    for (const BlossomRow& row : model.blossom_rows) {
        Rational sum;
        for (const Edge& e : model.g.stages[row.stage])
            if (std::binary_search(row.members.begin(), row.members.end(), e.u) &&
                std::binary_search(row.members.begin(), row.members.end(), e.v))
                sum += a.x[row.stage].at(e);
        const Rational rhs((static_cast<int>(row.members.size()) - 1) / 2);
        if (sum > rhs) {
            std::string set = "{";
            for (size_t i = 0; i < row.members.size(); ++i)
                set += (i ? "," : "") + std::to_string(row.members[i]);
            return fail("blossom: stage " + std::to_string(row.stage + 1) + ", W=" + set +
                        "} sums to " + format_rational(sum) + " > " + format_rational(rhs));
        }
    }

    // Caps z_e <= x^l_e on every intersection edge.
    for (const Edge& e : model.inter)
        for (int stage = 0; stage < 2; ++stage)
            if (a.z.at(e) > a.x[stage].at(e))
                return fail("cap: z[" + edge_tag(e) + "] = " + format_rational(a.z.at(e)) +
                            " exceeds " + var_x(stage, e) + " = " +
                            format_rational(a.x[stage].at(e)));

    res.feasible = true;
    return res;
}

FractionalAssignment assignment_from_solution(const LpModel& model,
                                              const MultistageMatching& m) {
    if (m.tau() != 2)
        throw std::invalid_argument("assignment_from_solution expects a 2-stage solution");
    FractionalAssignment a;
    for (int stage = 0; stage < 2; ++stage)
        for (const Edge& e : model.g.stages[stage])
            a.x[stage][e] = core::contains_edge(m.per_stage[stage], e) ? 1 : 0;
    for (const Edge& e : model.inter) a.z[e] = std::min(a.x[0][e], a.x[1][e]);
    return a;
}

GapCertificate certify_gap(int k) {
    const gadgets::LabeledInstance inst = gadgets::gen_lp_gap(k);
    const exact::ExactResult ip = exact::exact_solve(inst.graph, core::Objective::MIM);
    const LpModel model = build_lp(inst.graph);
    const CheckResult chk = check_assignment(model, gadgets::gen_lp_gap_fractional(k));
    if (!chk.feasible)
        throw std::logic_error("certify_gap: fractional witness infeasible: " + chk.violated);
    GapCertificate cert;
    cert.ip_opt = ip.value;
    cert.lp_lb = chk.objective;
    if (cert.ip_opt != 1)
        throw std::logic_error("certify_gap: integral optimum is " +
                               std::to_string(cert.ip_opt) + ", expected 1");
    if (cert.lp_lb != Rational(k + 1))
        throw std::logic_error("certify_gap: fractional objective is " +
                               format_rational(cert.lp_lb) + ", expected " +
                               std::to_string(k + 1));
    cert.gap_lb = cert.lp_lb / cert.ip_opt;
    return cert;
}

std::string export_lp_text(const LpModel& model) {
    auto vx = [](int stage, const Edge& e) {
        return "x" + std::to_string(stage + 1) + "_" + std::to_string(e.u) + "_" +
               std::to_string(e.v);
    };
    auto vz = [](const Edge& e) {
        return "z_" + std::to_string(e.u) + "_" + std::to_string(e.v);
    };
    std::ostringstream os;
    os << "Maximize\n obj:";
    if (model.inter.empty()) os << " 0";
    for (const Edge& e : model.inter) os << " + " << vz(e);
    os << "\nSubject To\n";
    for (int stage = 0; stage < 2; ++stage) {
        auto mask = model.g.stage_vertices(stage);
        for (int v = 0; v < model.g.n; ++v) {
            if (!mask[v]) continue;
            os << " deg" << stage + 1 << "_" << v << ":";
            for (const Edge& e : model.g.stages[stage])
                if (e.u == v || e.v == v) os << " + " << vx(stage, e);
            os << " = 1\n";
        }
    }
    for (size_t r = 0; r < model.blossom_rows.size(); ++r) {
        const BlossomRow& row = model.blossom_rows[r];
        os << " odd" << r << ":";
        for (const Edge& e : model.g.stages[row.stage])
            if (std::binary_search(row.members.begin(), row.members.end(), e.u) &&
                std::binary_search(row.members.begin(), row.members.end(), e.v))
                os << " + " << vx(row.stage, e);
        os << " <= " << (row.members.size() - 1) / 2 << "\n";
    }
    for (const Edge& e : model.inter)
        for (int stage = 0; stage < 2; ++stage)
            os << " cap" << stage + 1 << "_" << e.u << "_" << e.v << ": + " << vz(e)
               << " - " << vx(stage, e) << " <= 0\n";
    os << "Bounds\n";
    for (int stage = 0; stage < 2; ++stage)
        for (const Edge& e : model.g.stages[stage])
            os << " 0 <= " << vx(stage, e) << " <= 1\n";
    for (const Edge& e : model.inter) os << " 0 <= " << vz(e) << " <= 1\n";
    os << "End\n";
    return os.str();
}

}  // namespace mpm::lp
