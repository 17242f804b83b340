#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rboss/dna.hpp"
#include "rboss/index.hpp"
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

}  // namespace

TEST_CASE("lcs array values and prev/next queries") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        uint64_t n = 1 + rng() % 4000;
        uint32_t maxv = 1 + static_cast<uint32_t>(rng() % 120);
        std::vector<uint32_t> vals(n);
        for (auto& v : vals) v = rng() % (maxv + 1);
        LcsArray a(vals, maxv);
        for (int q = 0; q < 800; ++q) {
            uint64_t i = rng() % n + 1;
            CHECK(a.access(i) == vals[i - 1]);
            uint32_t t = rng() % (maxv + 2);
            uint64_t prev = 0;
            for (uint64_t p = i; p >= 1; --p)
                if (vals[p - 1] < t) {
                    prev = p;
                    break;
                }
            CHECK(a.prev_less(i, t) == prev);
            uint64_t next = 0;
            for (uint64_t p = i; p <= n; ++p)
                if (vals[p - 1] < t) {
                    next = p;
                    break;
                }
            CHECK(a.next_less(i, t) == next);
        }
    }
}

TEST_CASE("lcs values equal adjacent-label common suffix lengths") {
    Fixture fx(kEx1, 11, 2);
    REQUIRE(fx.idx.has_lcs());
    const LcsArray& lcs = fx.idx.lcs();
    REQUIRE(lcs.size() == fx.idx.num_rows());
    CHECK(lcs.access(1) == 0);
    for (uint64_t r = 2; r <= fx.idx.num_rows(); ++r) {
        const std::string& a = fx.lm.labels[r - 2];
        const std::string& b = fx.lm.labels[r - 1];
        uint32_t h = 0;
        while (h < a.size() && a[a.size() - 1 - h] == b[b.size() - 1 - h] &&
               a[a.size() - 1 - h] != '$')
            ++h;
        CHECK(lcs.access(r) == std::min<uint32_t>(h, fx.idx.k() - 2));
    }
}

TEST_CASE("shorter expands to the full suffix range") {
    Fixture fx(kEx1, 11, 2);
    // shorter(solid(atttggagta), 7) covers every row suffixed by tggagta
    uint64_t r1 = fx.lm.row("atttggagta");
    VoNode v{r1, r1, 10};
    VoNode u = vo::shorter(fx.idx, v, 7);
    VoNode expect = fx.idx.backwardsearch(to_ranks("tggagta"));
    CHECK(u.lo == expect.lo);
    CHECK(u.hi == expect.hi);
    bool has_linker = false;
    for (uint64_t r = u.lo; r <= u.hi; ++r)
        has_linker |= fx.lm.labels[r - 1] == "$$$tggagta";
    CHECK(has_linker);
    // shorter to order 1: all rows ending with the node's last symbol
    VoNode one = vo::shorter(fx.idx, v, 1);
    VoNode all_a = fx.idx.backwardsearch(to_ranks("a"));
    CHECK(one.lo == all_a.lo);
    CHECK(one.hi == all_a.hi);
    CHECK_THROWS(vo::shorter(fx.idx, v, 10));
}

TEST_CASE("longer splits ranges consistently with shorter") {
    Fixture fx(kEx1, 11, 2);
    VoNode ta = fx.idx.backwardsearch(to_ranks("ta"));
    auto nodes10 = vo::longer(fx.idx, ta, 10);
    // the order-10 nodes ending "ta": atttggagta and $^8ta
    uint64_t full_order = 0;
    for (const auto& nd : nodes10) {
        CHECK(nd.order == 10);
        for (uint64_t r = nd.lo; r <= nd.hi; ++r) {
            std::string lab = fx.lm.labels[r - 1];
            CHECK(lab.substr(8) == "ta");
        }
        full_order += nd.width();
    }
    CHECK(full_order == ta.width());
    // round trip: shorter of any longer-node covers the original range
    for (const auto& nd : nodes10) {
        VoNode back = vo::shorter(fx.idx, nd, 2);
        CHECK(back.lo <= ta.lo);
        CHECK(back.hi >= ta.hi);
    }
    // longer beyond max order is empty
    uint64_t r1 = fx.lm.row("atttggagta");
    CHECK(vo::longer(fx.idx, VoNode{r1, r1, 10}, 11).empty());
}

TEST_CASE("maxlen finds rows with the requested edge") {
    Fixture fx(kEx1, 11, 2);
    VoNode gta = fx.idx.backwardsearch(to_ranks("gta"));
    auto row_t = vo::maxlen(fx.idx, gta, sym::t);
    REQUIRE(row_t.has_value());
    auto syms = fx.idx.out_symbols(*row_t);
    CHECK(std::find(syms.begin(), syms.end(), sym::t) != syms.end());
    // '$' maxlen finds an s-node in range
    VoNode all_a = fx.idx.backwardsearch(to_ranks("a"));
    auto snode = vo::maxlen(fx.idx, all_a, sym::dollar);
    REQUIRE(snode.has_value());
    CHECK(fx.idx.has_dollar_edge(*snode));
    // absent edge
    VoNode ta = fx.idx.backwardsearch(to_ranks("gagta"));
    CHECK(!vo::maxlen(fx.idx, ta, sym::g).has_value());
}

TEST_CASE("nextcontained_lcs on EX1 follows the figure chain") {
    Fixture fx(kEx1, 11, 2);
    uint64_t r1 = fx.lm.row("atttggagta");
    uint64_t c1 = vo::nextcontained_lcs(fx.idx, r1, 2);
    CHECK(fx.lm.labels[c1 - 1] == "$$$tggagta");
    uint64_t c2 = vo::nextcontained_lcs(fx.idx, c1, 2);
    CHECK(fx.lm.labels[c2 - 1] == "$$$$$$agta");
    uint64_t c3 = vo::nextcontained_lcs(fx.idx, c2, 2);
    CHECK(fx.lm.labels[c3 - 1] == "$$$$$$$gta");
    uint64_t c4 = vo::nextcontained_lcs(fx.idx, c3, 2);
    CHECK(fx.lm.labels[c4 - 1] == "$$$$$$$$ta");
    CHECK(vo::nextcontained_lcs(fx.idx, c4, 2) == 0);
}

TEST_CASE("nextcontained_lcs equals the string oracle everywhere") {
    for (uint64_t seed : {71ull, 72ull, 73ull}) {
        oracle::Instance ins = oracle::random_instance(seed);
        Fixture fx(ins.reads, ins.k, ins.m);
        uint64_t step = fx.idx.num_rows() <= 2500 ? 1 : fx.idx.num_rows() / 877;
        for (uint64_t r = 1; r <= fx.idx.num_rows(); r += step)
            CHECK(vo::nextcontained_lcs(fx.idx, r, ins.m) == oracle::nextcontained_str(fx.lm, r));
    }
}
