#include "rboss/bench.hpp"

#include <chrono>
#include <map>
#include <random>

#include "rboss/dna.hpp"
#include "rboss/overlap.hpp"
#include "rboss/vo_baseline.hpp"

namespace rboss {

namespace {

// foverlaps with the baseline nextcontained driving buildL, for the
// tree-vs-LCS comparison. Result must agree with the tree path.
std::vector<Overlap> foverlaps_lcs(const RBossIndex& idx, uint64_t row) {
    std::vector<uint64_t> L = vo::buildL_lcs(idx, row);
    if (L.empty()) return {};
    uint32_t o_min = idx.llabel_len(L.back());
    std::vector<uint8_t> rc_label = reverse_complement_ranks(idx.label(row));
    uint64_t row_rc = idx.rc_node(row);
    std::vector<uint8_t> q(rc_label.begin(), rc_label.begin() + o_min);
    VoNode range = idx.backwardsearch(q);
    std::map<uint64_t, uint32_t> best;
    for (uint32_t o = o_min; o <= idx.k() - 2 && !range.empty(); ++o) {
        if (o > o_min) {
            range = idx.lf_step(range, rc_label[o - 1]);
            if (range.empty()) break;
        }
        for (uint64_t w : idx.solids_in_range(range.lo, range.hi)) {
            if (w == row || w == row_rc) continue;
            uint64_t target = idx.rc_node(w);
            if (!idx.is_pnode(target)) continue;
            auto [it, inserted] = best.emplace(target, o);
            if (!inserted && it->second < o) it->second = o;
        }
    }
    std::vector<Overlap> out;
    for (auto [t, o] : best) out.push_back({t, o});
    return out;
}

template <typename F>
double time_us(const std::vector<uint64_t>& rows, F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    uint64_t sink = 0;
    for (uint64_t r : rows) sink += fn(r);
    auto t1 = std::chrono::steady_clock::now();
    volatile uint64_t keep = sink;
    (void)keep;
    double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
    return us / static_cast<double>(rows.size());
}

}  // namespace

BenchResult run_bench(const RBossIndex& idx, uint64_t samples, uint64_t seed) {
    BenchResult res;
    res.samples = samples;
    std::mt19937_64 rng(seed);
    const uint64_t s = idx.solid_bits().ones();
    std::vector<uint64_t> rows(samples);
    for (auto& r : rows) r = idx.solid_bits().select1(rng() % s + 1);

    res.nextcontained_tree = time_us(rows, [&](uint64_t r) { return nextcontained(idx, r); });
    res.buildl_tree = time_us(rows, [&](uint64_t r) { return buildL(idx, r).size(); });
    res.foverlaps_tree = time_us(rows, [&](uint64_t r) { return foverlaps(idx, r).size(); });
    if (idx.has_lcs()) {
        res.nextcontained_lcs =
            time_us(rows, [&](uint64_t r) { return vo::nextcontained_lcs(idx, r, idx.m()); });
        res.buildl_lcs = time_us(rows, [&](uint64_t r) { return vo::buildL_lcs(idx, r).size(); });
        res.foverlaps_lcs = time_us(rows, [&](uint64_t r) { return foverlaps_lcs(idx, r).size(); });
    }
    res.rc_search = time_us(rows, [&](uint64_t r) { return idx.rc_node_via_search(r); });
    if (idx.has_rc_perm()) res.rc_perm = time_us(rows, [&](uint64_t r) { return idx.rc_node(r); });
    else res.rc_perm = -1;
    return res;
}

}  // namespace rboss
