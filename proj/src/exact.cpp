// Exact oracles: perfect matching enumeration, the stage DP for MIM/MUM and
// exhaustive Max-Cut.
#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpm/exact.hpp"

namespace mpm::exact {

std::vector<Matching> enumerate_perfect_matchings(int n, const EdgeSet& stage, long long cap,
                                                  int stage_index) {
    if (cap < 1) throw std::invalid_argument("enumeration cap must be >= 1");
    std::vector<std::vector<int>> adj(n);
    std::vector<char> active(n, 0);
    for (const Edge& e : stage) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
        active[e.u] = active[e.v] = 1;
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    int active_count = 0;
    for (int v = 0; v < n; ++v) active_count += active[v];
    std::vector<Matching> out;
    if (active_count % 2 != 0) return out;

    // Always extend at the lowest unmatched active vertex, partners in
    // ascending order: the emission order is then exactly the lexicographic
    // order of the canonical edge lists.
    std::vector<char> used(n, 0);
    Matching cur;
    std::function<void(int)> rec = [&](int lowest) {
        while (lowest < n && (!active[lowest] || used[lowest])) ++lowest;
        if (lowest == n) {
            if (static_cast<long long>(out.size()) >= cap) {
                std::string msg = "perfect matching enumeration exceeded cap " +
                                  std::to_string(cap);
                if (stage_index >= 0)
                    msg = "stage " + std::to_string(stage_index + 1) + ": " + msg;
                throw std::overflow_error(msg);
            }
            out.push_back(cur);
            return;
        }
        for (int u : adj[lowest]) {
            if (used[u]) continue;
            used[lowest] = used[u] = 1;
            cur.emplace_back(lowest, u);
            rec(lowest + 1);
            cur.pop_back();
            used[lowest] = used[u] = 0;
        }
    };
    rec(0);
    return out;
}

namespace {

long long transition_score(const Matching& a, const Matching& b, Objective obj) {
    long long inter = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    if (obj == Objective::MIM) return inter;
    return static_cast<long long>(a.size()) + static_cast<long long>(b.size()) - inter;
}

}  // namespace

ExactResult exact_solve(const TemporalGraph& g, Objective objective, long long cap) {
    const int tau = g.tau();
    if (tau == 0) throw std::invalid_argument("exact_solve: instance has no stages");

    std::vector<std::vector<Matching>> lists(tau);
    ExactResult res;
    res.objective = objective;
    for (int i = 0; i < tau; ++i) {
        lists[i] = enumerate_perfect_matchings(g.n, g.stages[i], cap, i);
        if (lists[i].empty())
            throw core::InfeasibleError("stage " + std::to_string(i + 1) +
                                        " has no perfect matching");
        res.pm_counts.push_back(static_cast<long long>(lists[i].size()));
    }

    const bool maximize = objective == Objective::MIM;
    const long long worst =
        maximize ? std::numeric_limits<long long>::min() : std::numeric_limits<long long>::max();
    auto better = [&](long long a, long long b) { return maximize ? a > b : a < b; };

    // score[i][j]: best objective over stages i..tau-1 given M_i = lists[i][j].
    std::vector<std::vector<long long>> score(tau);
    score[tau - 1].assign(lists[tau - 1].size(), 0);
    for (int i = tau - 2; i >= 0; --i) {
        score[i].assign(lists[i].size(), worst);
        const int ci = static_cast<int>(lists[i].size());
        const int cn = static_cast<int>(lists[i + 1].size());
#pragma omp parallel for schedule(dynamic)
        for (int j = 0; j < ci; ++j) {
            long long best = worst;
            for (int k = 0; k < cn; ++k) {
                long long v =
                    transition_score(lists[i][j], lists[i + 1][k], objective) + score[i + 1][k];
                if (better(v, best)) best = v;
            }
            score[i][j] = best;
        }
    }

    // Forward pass: lowest enumeration index = lexicographically smallest
    // stage matching, so taking the first optimal index at every stage yields
    // the lexicographically smallest optimal witness.
    int pick = 0;
    for (size_t j = 1; j < score[0].size(); ++j)
        if (better(score[0][j], score[0][pick])) pick = static_cast<int>(j);
    res.value = score[0][pick];
    res.solution.per_stage.push_back(lists[0][pick]);
    for (int i = 0; i + 1 < tau; ++i) {
        const long long need = score[i][pick];
        int next = -1;
        for (size_t k = 0; k < lists[i + 1].size(); ++k) {
            long long v = transition_score(lists[i][pick], lists[i + 1][k], objective) +
                          score[i + 1][k];
            if (v == need) {
                next = static_cast<int>(k);
                break;
            }
        }
        if (next == -1) throw std::logic_error("exact_solve: witness reconstruction failed");
        res.solution.per_stage.push_back(lists[i + 1][next]);
        pick = next;
    }
    return res;
}

long long exact_maxcut(int n, const EdgeSet& edges) {
    if (n < 0 || n > 24) throw std::invalid_argument("exact_maxcut: n must be in [0, 24]");
    if (n <= 1 || edges.empty()) return 0;
    std::vector<std::vector<int>> adj(n);
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    // Gray-code walk over all subsets with vertex 0 fixed outside S (the cut
    // is symmetric under complement), updating the cut value per flip.
    std::vector<char> side(n, 0);
    long long cut = 0, best = 0;
    const unsigned long long total = 1ull << (n - 1);
    for (unsigned long long it = 1; it < total; ++it) {
        int v = __builtin_ctzll(it) + 1;  // vertex to flip (never vertex 0)
        long long delta = 0;
        for (int u : adj[v]) delta += (side[u] == side[v]) ? 1 : -1;
        side[v] ^= 1;
        cut += delta;
        best = std::max(best, cut);
    }
    return best;
}

}  // namespace mpm::exact
