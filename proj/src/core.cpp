#include "mpm/core.hpp"

#include <algorithm>
#include <queue>

#include "json.hpp"

namespace mpm::core {

using nlohmann::json;

void canonicalize(EdgeSet& edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool contains_edge(const EdgeSet& edges, const Edge& e) {
    return std::binary_search(edges.begin(), edges.end(), e);
}

EdgeSet edge_intersection(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

EdgeSet edge_union(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

EdgeSet TemporalGraph::intersection(int i) const {
    return edge_intersection(stages.at(i), stages.at(i + 1));
}

long long TemporalGraph::mu() const {
    long long best = 0;
    for (int i = 0; i + 1 < tau(); ++i)
        best = std::max(best, static_cast<long long>(intersection(i).size()));
    return best;
}

std::vector<char> TemporalGraph::stage_vertices(int i) const {
    std::vector<char> mask(n, 0);
    for (const Edge& e : stages.at(i)) {
        mask[e.u] = 1;
        mask[e.v] = 1;
    }
    return mask;
}

int TemporalGraph::stage_vertex_count(int i) const {
    auto mask = stage_vertices(i);
    return static_cast<int>(std::count(mask.begin(), mask.end(), 1));
}

bool TemporalGraph::spanning() const {
    for (int i = 0; i < tau(); ++i)
        if (stage_vertex_count(i) != n) return false;
    return true;
}

bool TemporalGraph::union_bipartite() const {
    std::vector<std::vector<int>> adj(n);
    for (const EdgeSet& stage : stages)
        for (const Edge& e : stage) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (color[v] == -1) {
                    color[v] = color[u] ^ 1;
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

long long profit(const MultistageMatching& m) {
    long long total = 0;
    for (int i = 0; i + 1 < m.tau(); ++i)
        total += static_cast<long long>(
            edge_intersection(m.per_stage[i], m.per_stage[i + 1]).size());
    return total;
}

long long union_cost(const MultistageMatching& m) {
    long long total = 0;
    for (int i = 0; i + 1 < m.tau(); ++i)
        total += static_cast<long long>(edge_union(m.per_stage[i], m.per_stage[i + 1]).size());
    return total;
}

Verdict verify(const TemporalGraph& g, const MultistageMatching& m) {
    if (g.tau() != m.tau())
        throw std::invalid_argument("verify: solution has " + std::to_string(m.tau()) +
                                    " stages but instance has " + std::to_string(g.tau()));
    Verdict out;
    out.profit = profit(m);
    out.union_cost = union_cost(m);
    for (int i = 0; i < g.tau(); ++i) {
        const Matching& mi = m.per_stage[i];
        // Containment first: every matching edge must be a stage edge.
        for (const Edge& e : mi) {
            if (!contains_edge(g.stages[i], e)) {
                out.violation = "stage " + std::to_string(i + 1) + ": edge (" +
                                std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") is not an edge of the stage";
                return out;
            }
        }
        // Degree check on V(E_i): every vertex with a stage edge must be
        // matched exactly once; vertices untouched by the stage are free.
        std::vector<int> deg(g.n, 0);
        for (const Edge& e : mi) {
            ++deg[e.u];
            ++deg[e.v];
        }
        auto active = g.stage_vertices(i);
        for (int v = 0; v < g.n; ++v) {
            if (active[v] && deg[v] != 1) {
                out.violation = "stage " + std::to_string(i + 1) + ": vertex " +
                                std::to_string(v) +
                                (deg[v] == 0 ? " is unmatched" : " is matched more than once");
                return out;
            }
            if (!active[v] && deg[v] != 0) {
                out.violation = "stage " + std::to_string(i + 1) + ": vertex " +
                                std::to_string(v) + " is outside the stage but matched";
                return out;
            }
        }
    }
    out.feasible = true;
    return out;
}

// ---- JSON ------------------------------------------------------------------

namespace {

EdgeSet parse_stage(const json& jstage, int n, int stage_index) {
    const std::string where = "stage " + std::to_string(stage_index + 1);
    if (!jstage.is_array()) throw std::runtime_error(where + ": expected an array of edges");
    EdgeSet edges;
    edges.reserve(jstage.size());
    for (const json& je : jstage) {
        if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
            !je[1].is_number_integer())
            throw std::runtime_error(where + ": each edge must be a pair of integers");
        long long a = je[0].get<long long>();
        long long b = je[1].get<long long>();
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::runtime_error(where + ": edge (" + std::to_string(a) + "," +
                                     std::to_string(b) + ") has an endpoint outside [0," +
                                     std::to_string(n) + ")");
        if (a == b)
            throw std::runtime_error(where + ": self-loop at vertex " + std::to_string(a));
        edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
    }
    EdgeSet sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw std::runtime_error(where + ": duplicate edge (" +
                                     std::to_string(sorted[i].u) + "," +
                                     std::to_string(sorted[i].v) + ")");
    return sorted;
}

json edges_to_json(const EdgeSet& edges) {
    json out = json::array();
    for (const Edge& e : edges) out.push_back(json::array({e.u, e.v}));
    return out;
}

}  // namespace

TemporalGraph parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw std::runtime_error(std::string("malformed instance document: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("stages"))
        throw std::runtime_error("instance document must be an object with \"n\" and \"stages\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 0)
        throw std::runtime_error("\"n\" must be a non-negative integer");
    TemporalGraph g;
    g.n = j["n"].get<int>();
    if (!j["stages"].is_array() || j["stages"].empty())
        throw std::runtime_error("\"stages\" must be a non-empty array");
    int idx = 0;
    for (const json& js : j["stages"]) g.stages.push_back(parse_stage(js, g.n, idx++));
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw std::runtime_error("\"name\" must be a string");
        g.name = j["name"].get<std::string>();
    }
    if (j.contains("meta")) {
        if (!j["meta"].is_object()) throw std::runtime_error("\"meta\" must be an object");
        g.meta_json = j["meta"].dump();
    }
    return g;
}

std::string serialize_instance(const TemporalGraph& g) {
    json j;
    j["n"] = g.n;
    json stages = json::array();
    // Stage lists are emitted in canonical sorted order regardless of the
    // in-memory order, so serialization (and the digest built on it) is a
    // pure function of the instance content.
    for (EdgeSet s : g.stages) {
        canonicalize(s);
        stages.push_back(edges_to_json(s));
    }
    j["stages"] = std::move(stages);
    if (!g.name.empty()) j["name"] = g.name;
    if (!g.meta_json.empty()) j["meta"] = json::parse(g.meta_json);
    return j.dump(2) + "\n";
}

MultistageMatching parse_solution(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw std::runtime_error(std::string("malformed solution document: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("stages") || !j["stages"].is_array())
        throw std::runtime_error("solution document must be an object with a \"stages\" array");
    MultistageMatching m;
    for (const json& js : j["stages"]) {
        if (!js.is_array()) throw std::runtime_error("each solution stage must be an edge array");
        Matching mi;
        for (const json& je : js) {
            if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
                !je[1].is_number_integer())
                throw std::runtime_error("each solution edge must be a pair of integers");
            mi.emplace_back(je[0].get<int>(), je[1].get<int>());
        }
        canonicalize(mi);
        m.per_stage.push_back(std::move(mi));
    }
    return m;
}

std::string serialize_solution(const MultistageMatching& m) {
    json j;
    json stages = json::array();
    for (const Matching& s : m.per_stage) stages.push_back(edges_to_json(s));
    j["stages"] = std::move(stages);
    return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64-bit offset basis
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string instance_digest(const TemporalGraph& g) {
    std::uint64_t h = fnv1a64(serialize_instance(g));
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace mpm::core
