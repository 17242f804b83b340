#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "rboss/dna.hpp"
#include "rboss/index.hpp"
#include "rboss/overlap.hpp"
#include "rboss/simulate.hpp"
#include "rboss/vo_baseline.hpp"

using namespace rboss;

namespace {

const std::vector<std::string> kEx1 = {"atttggagta", "gtattggaaa", "agtattggaa", "caatactcca"};

struct Fixture {
    ReadSet rs;
    RBossIndex idx;
    oracle::LabelMatrix lm;
    Fixture(const std::vector<std::string>& reads, uint32_t k, uint32_t m)
        : rs(make_read_set(reads, BuildConfig{k, m})),
          idx(build_index(rs, BuildConfig{k, m, true, true})),
          lm(oracle::enumerate_labels(rs, k, m)) {}
};

std::set<std::pair<std::string, uint32_t>> as_label_set(const Fixture& fx,
                                                        const std::vector<Overlap>& ovs) {
    std::set<std::pair<std::string, uint32_t>> out;
    for (const auto& ov : ovs) out.insert({fx.idx.label_str(ov.target), ov.len});
    return out;
}

std::set<std::pair<std::string, uint32_t>> as_label_set(const Fixture& fx,
                                                        const std::vector<oracle::OverlapRef>& ovs) {
    std::set<std::pair<std::string, uint32_t>> out;
    for (const auto& ov : ovs) out.insert({fx.lm.labels[ov.target - 1], ov.len});
    return out;
}

}  // namespace

TEST_CASE("nextcontained on EX1") {
    Fixture fx(kEx1, 11, 2);
    uint64_t r1 = fx.lm.row("atttggagta");
    uint64_t c = nextcontained(fx.idx, r1);
    CHECK(fx.lm.labels[c - 1] == "$$$tggagta");
    // the chain continues through shorter linkers and ends below m
    c = nextcontained(fx.idx, c);
    CHECK(fx.lm.labels[c - 1] == "$$$$$$agta");
    c = nextcontained(fx.idx, c);
    CHECK(fx.lm.labels[c - 1] == "$$$$$$$gta");
    c = nextcontained(fx.idx, c);
    CHECK(fx.lm.labels[c - 1] == "$$$$$$$$ta");
    CHECK(nextcontained(fx.idx, c) == 0);
}

TEST_CASE("nextcontained equals string oracle, tree oracle and LCS baseline on every row") {
    for (uint64_t seed : {201ull, 202ull, 203ull, 204ull}) {
        oracle::Instance ins = oracle::random_instance(seed);
        Fixture fx(ins.reads, ins.k, ins.m);
        oracle::OverlapTree ot = oracle::build_overlap_tree_explicit(fx.lm);
        for (uint64_t r = 1; r <= fx.idx.num_rows(); ++r) {
            uint64_t got = nextcontained(fx.idx, r);
            CHECK(got == oracle::nextcontained_str(fx.lm, r));
            CHECK(got == oracle::nextcontained_tree(ot, r));
            CHECK(got == vo::nextcontained_lcs(fx.idx, r, ins.m));
        }
    }
}

TEST_CASE("buildL on EX1 matches the four-linker chain") {
    Fixture fx(kEx1, 11, 2);
    uint64_t r1 = fx.lm.row("atttggagta");
    auto L = buildL_with_lengths(fx.idx, r1);
    REQUIRE(L.size() == 4);
    CHECK(fx.lm.labels[L[0].row - 1] == "$$$tggagta");
    CHECK(L[0].len == 7);
    CHECK(L[1].len == 4);
    CHECK(L[2].len == 3);
    CHECK(L[3].len == 2);
    // strictly decreasing lengths within [m..k-2]
    for (size_t i = 0; i < L.size(); ++i) {
        CHECK(L[i].len >= fx.idx.m());
        CHECK(L[i].len <= fx.idx.k() - 2);
        if (i > 0) CHECK(L[i].len < L[i - 1].len);
    }
    // a node with no matching suffix has an empty list
    uint64_t r2 = fx.lm.row("gtattggaaa");
    CHECK(buildL(fx.idx, r2).empty());
}

TEST_CASE("forward overlaps of the first worked-example read") {
    Fixture fx(kEx1, 11, 2);
    uint64_t r1 = fx.lm.row("atttggagta");
    auto got = as_label_set(fx, foverlaps(fx.idx, r1));
    std::set<std::pair<std::string, uint32_t>> expect = {
        {"gtattggaaa", 3},  // R2 at o=3
        {"agtattggaa", 4},  // R3 at o=4
        {"tggagtattg", 7},  // R4^rc at o=7
    };
    CHECK(got == expect);
    // R2 has no forward overlaps
    CHECK(foverlaps(fx.idx, fx.lm.row("gtattggaaa")).empty());
}

TEST_CASE("forward and backward overlaps of the third worked-example read") {
    Fixture fx(kEx1, 11, 2);
    uint64_t r3 = fx.lm.row("agtattggaa");
    auto fwd = as_label_set(fx, foverlaps(fx.idx, r3));
    CHECK(fwd == std::set<std::pair<std::string, uint32_t>>{{"gtattggaaa", 9}});
    auto bwd = as_label_set(fx, boverlaps(fx.idx, r3));
    CHECK(bwd == std::set<std::pair<std::string, uint32_t>>{{"atttggagta", 4},
                                                            {"tggagtattg", 7}});
}

TEST_CASE("foverlaps and boverlaps equal the brute-force oracle") {
    int instances = 0;
    for (uint64_t seed = 300; seed < 330; ++seed) {
        oracle::Instance ins = oracle::random_instance(seed);
        Fixture fx(ins.reads, ins.k, ins.m);
        ++instances;
        for (uint64_t j = 1; j <= fx.idx.num_solid(); ++j) {
            uint64_t v = fx.idx.solid_bits().select1(j);
            CHECK(as_label_set(fx, foverlaps(fx.idx, v)) ==
                  as_label_set(fx, oracle::foverlaps_brute(fx.lm, v)));
            CHECK(as_label_set(fx, boverlaps(fx.idx, v)) ==
                  as_label_set(fx, oracle::boverlaps_brute(fx.lm, v)));
        }
    }
    CHECK(instances == 30);
}

TEST_CASE("boverlaps is the mirror of foverlaps") {
    for (uint64_t seed : {401ull, 402ull}) {
        oracle::Instance ins = oracle::random_instance(seed);
        Fixture fx(ins.reads, ins.k, ins.m);
        std::map<uint64_t, std::set<std::pair<uint64_t, uint32_t>>> fwd_of;
        for (uint64_t j = 1; j <= fx.idx.num_solid(); ++j) {
            uint64_t v = fx.idx.solid_bits().select1(j);
            for (const auto& ov : foverlaps(fx.idx, v)) fwd_of[ov.target].insert({v, ov.len});
        }
        for (uint64_t j = 1; j <= fx.idx.num_solid(); ++j) {
            uint64_t v = fx.idx.solid_bits().select1(j);
            std::set<std::pair<uint64_t, uint32_t>> got;
            for (const auto& ov : boverlaps(fx.idx, v)) got.insert({ov.target, ov.len});
            CHECK(got == fwd_of[v]);
        }
    }
}

TEST_CASE("weighted overlaps on EX1") {
    Fixture fx(kEx1, 11, 2);
    uint64_t r1 = fx.lm.row("atttggagta");
    auto w = weighted_foverlaps(fx.idx, r1);
    REQUIRE(w.size() == 3);
    // targets and lengths agree with the plain scan
    auto plain = foverlaps(fx.idx, r1);
    REQUIRE(plain.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(w[i].target == plain[i].target);
        CHECK(w[i].len == plain[i].len);
    }
    // The smallest contained linker here is "ta", whose reverse complement is
    // itself; the initial range holds only the query's own row, so all three
    // targets surface during the extension and carry weight 0.
    for (const auto& ov : w) CHECK(ov.weight == 0);
    for (const auto& ov : w)
        CHECK(ov.weight <= (ov.len >= fx.idx.m() ? ov.len - fx.idx.m() : 0));
}

TEST_CASE("no pairwise transitive chains exist among the EX1 targets") {
    // the literal reading of the transitivity definition: some solid w with
    // valid overlaps from both ends, the first one longer
    Fixture fx(kEx1, 11, 2);
    uint64_t r1 = fx.lm.row("atttggagta");
    for (const auto& ov : oracle::foverlaps_brute(fx.lm, r1))
        CHECK(!oracle::transitive_pair(fx.lm, r1, ov.target));
}

TEST_CASE("weighted overlaps equal the structural oracle") {
    for (uint64_t seed = 500; seed < 520; ++seed) {
        oracle::Instance ins = oracle::random_instance(seed);
        if (ins.reads.size() > 20) ins.reads.resize(20);
        if (ins.reads.size() < 4) continue;
        Fixture fx(ins.reads, ins.k, ins.m);
        oracle::OverlapTree ot = oracle::build_overlap_tree_explicit(fx.lm);
        for (uint64_t j = 1; j <= fx.idx.num_solid(); ++j) {
            uint64_t v = fx.idx.solid_bits().select1(j);
            auto got = weighted_foverlaps(fx.idx, v);
            auto expect = oracle::weighted_foverlaps_brute(fx.lm, ot, v);
            REQUIRE(got.size() == expect.size());
            for (size_t i = 0; i < got.size(); ++i) {
                CHECK(fx.idx.label_str(got[i].target) == fx.lm.labels[expect[i].target - 1]);
                CHECK(got[i].len == expect[i].len);
                CHECK(got[i].weight == expect[i].weight);
                CHECK(got[i].irreducible == expect[i].irreducible);
            }
        }
    }
}

TEST_CASE("tiled pattern: one irreducible overlap with three unique transitive witnesses") {
    // Five reads stepping along a genome in increments of 3. The farthest
    // target (minimal overlap, o = 8) is the irreducible one; the three reads
    // between the ends witness it, all confirmed during the extension.
    std::string g = simulate_genome(32, 2024);
    std::vector<std::string> reads;
    for (int i = 0; i < 5; ++i) reads.push_back(g.substr(3 * i, 20));
    Fixture fx(reads, 21, 4);
    uint64_t v = fx.lm.row(reads[0]);
    auto w = weighted_foverlaps(fx.idx, v);
    uint64_t irreducible = 0;
    for (const auto& ov : w) {
        if (!ov.irreducible) continue;
        ++irreducible;
        CHECK(fx.idx.label_str(ov.target) == reads[4]);
        CHECK(ov.len == 8);
        CHECK(ov.weight == 3);
    }
    CHECK(irreducible == 1);
    // structural oracle agrees on the pattern
    oracle::OverlapTree ot = oracle::build_overlap_tree_explicit(fx.lm);
    auto expect = oracle::weighted_foverlaps_brute(fx.lm, ot, v);
    REQUIRE(expect.size() == w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        CHECK(w[i].weight == expect[i].weight);
        CHECK(w[i].irreducible == expect[i].irreducible);
    }
}

TEST_CASE("weighted foverlaps and boverlaps agree on targets with the plain scans") {
    for (uint64_t seed : {601ull, 602ull}) {
        oracle::Instance ins = oracle::random_instance(seed);
        Fixture fx(ins.reads, ins.k, ins.m);
        for (uint64_t j = 1; j <= fx.idx.num_solid(); ++j) {
            uint64_t v = fx.idx.solid_bits().select1(j);
            auto plain = foverlaps(fx.idx, v);
            auto weighted = weighted_foverlaps(fx.idx, v);
            REQUIRE(plain.size() == weighted.size());
            for (size_t i = 0; i < plain.size(); ++i) {
                CHECK(plain[i].target == weighted[i].target);
                CHECK(plain[i].len == weighted[i].len);
                CHECK(weighted[i].weight <=
                      (weighted[i].len >= fx.idx.m() ? weighted[i].len - fx.idx.m() : 0));
            }
        }
    }
}
