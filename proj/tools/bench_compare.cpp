// bench_compare: times the serial reference kernels against their OpenMP
// counterparts on a seeded batch and verifies the outputs agree bit-for-bit.
// Kernels: the per-edge allowed-edge filter (reduce) and the exact stage DP
// (whose transition scoring is a parallel loop). On a single hardware thread
// the comparison degenerates to parity-checking the two code paths, which is
// the point: identical results, table to standard output.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mpm/core.hpp"
#include "mpm/exact.hpp"
#include "mpm/gadgets.hpp"
#include "mpm/reduce.hpp"

using namespace mpm;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void set_threads(int k) {
#ifdef _OPENMP
    omp_set_num_threads(k);
#else
    (void)k;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    int n = 26, tau = 4, count = 12;
    std::uint64_t seed = 1;
    if (argc > 1) n = std::atoi(argv[1]);
    if (argc > 2) tau = std::atoi(argv[2]);
    if (argc > 3) count = std::atoi(argv[3]);
    if (argc > 4) seed = std::strtoull(argv[4], nullptr, 10);
    if (n < 2 || n % 2 != 0 || tau < 1 || count < 1) {
        std::fprintf(stderr, "usage: bench_compare [n even>=2] [tau>=1] [count>=1] [seed]\n");
        return 1;
    }
    const int hw = max_threads();
    std::printf("batch: %d instances, n=%d, tau=%d, seed=%llu, %d thread(s)\n", count, n, tau,
                static_cast<unsigned long long>(seed), hw);

    std::vector<core::TemporalGraph> batch;
    for (int i = 0; i < count; ++i)
        batch.push_back(gadgets::gen_random(n, tau, 0.35, seed + i));

    // ---- allowed-edge filter: serial reference vs parallel ----
    double serial_ms = 0, parallel_ms = 0;
    bool equal = true;
    {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<core::EdgeSet> ref;
        for (const auto& g : batch)
            for (const auto& stage : g.stages) ref.push_back(core::allowed_edges_serial(g.n, stage));
        serial_ms = ms_since(t0);

        t0 = std::chrono::steady_clock::now();
        std::vector<core::EdgeSet> par;
        for (const auto& g : batch)
            for (const auto& stage : g.stages) par.push_back(core::allowed_edges(g.n, stage));
        parallel_ms = ms_since(t0);
        equal = ref == par;
    }
    std::printf("%-22s %10.2fms %12.2fms  speedup %5.2fx  %s\n", "allowed_edges", serial_ms,
                parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                equal ? "equal" : "MISMATCH");
    bool all_equal = equal;

    // ---- exact stage DP: 1 thread vs all threads ----
    {
        // Smaller instances: the DP cost is the product of consecutive
        // perfect-matching counts, so temper n for this kernel.
        std::vector<core::TemporalGraph> small;
        for (int i = 0; i < count; ++i)
            small.push_back(gadgets::gen_random(10, tau, 0.6, seed + 100 + i));

        set_threads(1);
        auto t0 = std::chrono::steady_clock::now();
        std::vector<long long> ref;
        for (const auto& g : small)
            ref.push_back(exact::exact_solve(g, core::Objective::MIM).value);
        serial_ms = ms_since(t0);

        set_threads(hw);
        t0 = std::chrono::steady_clock::now();
        std::vector<long long> par;
        for (const auto& g : small)
            par.push_back(exact::exact_solve(g, core::Objective::MIM).value);
        parallel_ms = ms_since(t0);
        equal = ref == par;
        all_equal = all_equal && equal;
    }
    std::printf("%-22s %10.2fms %12.2fms  speedup %5.2fx  %s\n", "exact_dp(1 vs all)", serial_ms,
                parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                equal ? "equal" : "MISMATCH");

    return all_equal ? 0 : 1;
}
