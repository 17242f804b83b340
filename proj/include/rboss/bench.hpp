#pragma once

#include <cstdint>
#include <vector>

#include "rboss/index.hpp"

namespace rboss {

struct BenchResult {
    uint64_t samples = 0;
    // mean microseconds per call
    double nextcontained_tree = 0, nextcontained_lcs = 0;
    double buildl_tree = 0, buildl_lcs = 0;
    double foverlaps_tree = 0, foverlaps_lcs = 0;
    double rc_search = 0, rc_perm = 0;  // rc_perm < 0 when the permutation is absent
};

// Draws `samples` solid rows with the seeded generator and times the tree
// path against the LCS baseline (index must be built with keep_lcs).
BenchResult run_bench(const RBossIndex& idx, uint64_t samples, uint64_t seed = 42);

}  // namespace rboss
