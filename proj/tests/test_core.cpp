// Tests for the core data model: edges, temporal graphs, objective metrics,
// feasibility verification and the JSON instance/solution formats.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "mpm/core.hpp"
#include "oracles.hpp"

using namespace mpm::core;
namespace oracle = mpm::test_oracles;

TEST_CASE("Edge construction is canonical and ordering is lexicographic") {
    Edge e(5, 2);
    CHECK(e.u == 2);
    CHECK(e.v == 5);
    CHECK(Edge(2, 5) == Edge(5, 2));
    CHECK(Edge(0, 1) < Edge(0, 2));
    CHECK(Edge(0, 9) < Edge(1, 2));
}

TEST_CASE("canonicalize sorts and deduplicates") {
    EdgeSet s = {Edge(3, 1), Edge(0, 2), Edge(1, 3), Edge(0, 1), Edge(2, 0)};
    canonicalize(s);
    CHECK(s == EdgeSet{Edge(0, 1), Edge(0, 2), Edge(1, 3)});

    EdgeSet empty;
    canonicalize(empty);
    CHECK(empty.empty());
}

TEST_CASE("contains_edge and set operations on canonical lists") {
    EdgeSet a = {Edge(0, 1), Edge(1, 2), Edge(2, 3)};
    EdgeSet b = {Edge(1, 2), Edge(3, 4)};

    CHECK(contains_edge(a, Edge(1, 2)));
    CHECK(contains_edge(a, Edge(2, 1)));
    CHECK_FALSE(contains_edge(a, Edge(0, 2)));
    CHECK_FALSE(contains_edge(EdgeSet{}, Edge(0, 1)));

    CHECK(edge_intersection(a, b) == EdgeSet{Edge(1, 2)});
    CHECK(edge_union(a, b) == EdgeSet{Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4)});
    CHECK(edge_intersection(a, EdgeSet{}).empty());
    CHECK(edge_union(EdgeSet{}, b) == b);
}

static TemporalGraph two_stage_square() {
    // Stage 1: the 4-cycle 0-1-2-3; stage 2: the two diagonally opposite pairs
    // plus one shared edge (0,1).
    TemporalGraph g;
    g.n = 4;
    g.stages = {
        {Edge(0, 1), Edge(0, 3), Edge(1, 2), Edge(2, 3)},
        {Edge(0, 1), Edge(2, 3)},
    };
    return g;
}

TEST_CASE("TemporalGraph accessors: tau, intersection, mu, stage vertices") {
    TemporalGraph g = two_stage_square();
    CHECK(g.tau() == 2);
    CHECK(g.intersection(0) == EdgeSet{Edge(0, 1), Edge(2, 3)});
    CHECK(g.mu() == 2);
    CHECK(g.stage_vertex_count(0) == 4);
    CHECK(g.stage_vertex_count(1) == 4);
    CHECK(g.spanning());

    // A vertex untouched by one stage breaks spanning but not the accessors.
    g.n = 5;
    CHECK_FALSE(g.spanning());
    auto active = g.stage_vertices(0);
    CHECK(active[3] != 0);
    CHECK(active[4] == 0);

    TemporalGraph single;
    single.n = 2;
    single.stages = {{Edge(0, 1)}};
    CHECK(single.mu() == 0);
}

TEST_CASE("union_bipartite distinguishes odd and even union cycles") {
    TemporalGraph even;
    even.n = 4;
    even.stages = {{Edge(0, 1), Edge(2, 3)}, {Edge(1, 2), Edge(0, 3)}};
    CHECK(even.union_bipartite());  // union is C4

    TemporalGraph odd;
    odd.n = 3;
    odd.stages = {{Edge(0, 1)}, {Edge(1, 2)}, {Edge(0, 2)}};
    CHECK_FALSE(odd.union_bipartite());  // union is a triangle

    TemporalGraph edgeless;
    edgeless.n = 3;
    edgeless.stages = {{}};
    CHECK(edgeless.union_bipartite());
}

TEST_CASE("profit and union_cost satisfy the per-transition identity") {
    // |M_i u M_{i+1}| = |M_i| + |M_{i+1}| - |M_i `intersect` M_{i+1}| summed
    // over transitions ties the two metrics together for any solution shape.
    oracle::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        MultistageMatching m;
        int tau = rng.uniform(1, 4);
        for (int i = 0; i < tau; ++i) {
            Matching mi;
            int cnt = rng.uniform(0, 4);
            for (int j = 0; j < cnt; ++j) {
                int u = rng.uniform(0, 9);
                int v = rng.uniform(0, 9);
                if (u != v) mi.emplace_back(u, v);
            }
            canonicalize(mi);
            m.per_stage.push_back(mi);
        }
        long long sizes = 0;
        for (int i = 0; i + 1 < tau; ++i)
            sizes += static_cast<long long>(m.per_stage[i].size() + m.per_stage[i + 1].size());
        CHECK(union_cost(m) == sizes - profit(m));
    }
}

TEST_CASE("verify accepts a feasible solution and reports the metrics") {
    TemporalGraph g = two_stage_square();
    MultistageMatching m;
    m.per_stage = {{Edge(0, 1), Edge(2, 3)}, {Edge(0, 1), Edge(2, 3)}};
    Verdict v = verify(g, m);
    CHECK(v.feasible);
    CHECK(v.violation.empty());
    CHECK(v.profit == 2);
    CHECK(v.union_cost == 2);
}

TEST_CASE("verify names the first violation in scan order") {
    TemporalGraph g = two_stage_square();

    SUBCASE("edge outside the stage") {
        MultistageMatching m;
        m.per_stage = {{Edge(0, 2), Edge(1, 3)}, {Edge(0, 1), Edge(2, 3)}};
        Verdict v = verify(g, m);
        CHECK_FALSE(v.feasible);
        CHECK(v.violation == "stage 1: edge (0,2) is not an edge of the stage");
    }
    SUBCASE("unmatched stage vertex") {
        MultistageMatching m;
        m.per_stage = {{Edge(0, 1)}, {Edge(0, 1), Edge(2, 3)}};
        Verdict v = verify(g, m);
        CHECK_FALSE(v.feasible);
        CHECK(v.violation == "stage 1: vertex 2 is unmatched");
    }
    SUBCASE("doubly matched vertex") {
        MultistageMatching m;
        m.per_stage = {{Edge(0, 1), Edge(0, 3), Edge(1, 2), Edge(2, 3)},
                       {Edge(0, 1), Edge(2, 3)}};
        Verdict v = verify(g, m);
        CHECK_FALSE(v.feasible);
        CHECK(v.violation == "stage 1: vertex 0 is matched more than once");
    }
    SUBCASE("matched vertex outside the stage") {
        TemporalGraph g2;
        g2.n = 4;
        g2.stages = {{Edge(0, 1), Edge(2, 3)}, {Edge(0, 1)}};
        MultistageMatching m;
        m.per_stage = {{Edge(0, 1), Edge(2, 3)}, {Edge(0, 1), Edge(2, 3)}};
        Verdict v = verify(g2, m);
        CHECK_FALSE(v.feasible);
        CHECK(v.violation == "stage 2: edge (2,3) is not an edge of the stage");
    }
    SUBCASE("stage-count mismatch throws") {
        MultistageMatching m;
        m.per_stage = {{Edge(0, 1), Edge(2, 3)}};
        CHECK_THROWS_AS(verify(g, m), std::invalid_argument);
    }
}

TEST_CASE("instance serialization round-trips byte-stably") {
    TemporalGraph g = two_stage_square();
    g.name = "square";
    g.meta_json = R"({"k":3})";
    std::string text = serialize_instance(g);
    TemporalGraph back = parse_instance(text);
    CHECK(back.n == g.n);
    CHECK(back.stages == g.stages);
    CHECK(back.name == "square");
    CHECK(serialize_instance(back) == text);

    // Edges arrive unsorted and reversed; the serialization is still canonical.
    TemporalGraph messy;
    messy.n = 4;
    messy.stages = {{Edge(3, 2), Edge(1, 0)}};
    TemporalGraph clean;
    clean.n = 4;
    clean.stages = {{Edge(0, 1), Edge(2, 3)}};
    CHECK(serialize_instance(messy) == serialize_instance(clean));
}

TEST_CASE("parse_instance rejects malformed documents with located errors") {
    CHECK_THROWS_WITH(parse_instance(R"({"n": 2, "stages": [[[0, 2]]]})"),
                      doctest::Contains("endpoint outside"));
    CHECK_THROWS_WITH(parse_instance(R"({"n": 2, "stages": [[[1, 1]]]})"),
                      doctest::Contains("self-loop at vertex 1"));
    CHECK_THROWS_WITH(parse_instance(R"({"n": 2, "stages": [[[0, 1], [1, 0]]]})"),
                      doctest::Contains("duplicate edge (0,1)"));
    CHECK_THROWS_WITH(parse_instance(R"({"n": 3, "stages": [[], [[0, 3]]]})"),
                      doctest::Contains("stage 2"));
    CHECK_THROWS_WITH(parse_instance("not json"), doctest::Contains("malformed instance"));
    CHECK_THROWS_WITH(parse_instance(R"({"n": 2})"), doctest::Contains("stages"));
    CHECK_THROWS_WITH(parse_instance(R"({"n": -1, "stages": [[]]})"),
                      doctest::Contains("non-negative"));
    CHECK_THROWS_WITH(parse_instance(R"({"n": 2, "stages": []})"),
                      doctest::Contains("non-empty"));
}

TEST_CASE("solution serialization round-trips") {
    MultistageMatching m;
    m.per_stage = {{Edge(0, 1), Edge(2, 3)}, {}, {Edge(1, 2)}};
    MultistageMatching back = parse_solution(serialize_solution(m));
    CHECK(back.per_stage == m.per_stage);

    CHECK_THROWS_WITH(parse_solution("[]"), doctest::Contains("stages"));
    CHECK_THROWS_WITH(parse_solution(R"({"stages": [[[0]]]})"),
                      doctest::Contains("pair of integers"));
}

TEST_CASE("instance digest is deterministic and canonical") {
    TemporalGraph g = two_stage_square();
    std::string d1 = instance_digest(g);
    CHECK(d1.size() == 16);
    CHECK(d1.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(instance_digest(g) == d1);

    // Digest depends on content, not on edge ordering in memory.
    TemporalGraph shuffled = g;
    std::reverse(shuffled.stages[0].begin(), shuffled.stages[0].end());
    CHECK(instance_digest(shuffled) == d1);

    TemporalGraph other = g;
    other.stages[1].push_back(Edge(1, 2));
    CHECK(instance_digest(other) != d1);

    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") != fnv1a64("b"));
}
