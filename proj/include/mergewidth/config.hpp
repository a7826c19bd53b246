#pragma once

#include <cstdint>
#include <vector>

namespace mw {

/// Budgets and knobs shared across the library. Defaults match the
/// documented caps; everything is overridable from the CLI.
struct RunConfig {
    // Exact flip enumeration allowed while p*(p+1)/2 <= this many pair bits
    // stay enumerable; expressed as a part-count cap.
    int flip_exact_cap = 6;

    // Exhaustive width oracle (mw/tmw/pmw/dmw) vertex budget.
    int oracle_budget = 5;

    // Subset-DP approximation budget (n <= 20 with an explicit flag).
    int dp_budget = 16;

    // Exact VC-dimension budget.
    int vc_budget = 16;

    // Exact neighbourhood complexity: trace sets of size <= m on <= n vertices.
    int pi_exact_m = 4;
    int pi_exact_n = 64;

    // Sampled flip metric: uniform samples plus greedy local-search restarts.
    int sample_flips = 1024;
    int greedy_restarts = 8;

    uint64_t seed = 0;

    std::vector<int> radii = {1, 2, 3};
};

}  // namespace mw
