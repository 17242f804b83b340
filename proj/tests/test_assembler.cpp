#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "oracles.hpp"
#include "rboss/assembler.hpp"
#include "rboss/dna.hpp"
#include "rboss/index.hpp"
#include "rboss/read_set.hpp"
#include "rboss/simulate.hpp"

using namespace rboss;

namespace {

const std::vector<std::string> kEx1 = {"atttggagta", "gtattggaaa", "agtattggaa", "caatactcca"};

RBossIndex build_with_n(const std::vector<std::string>& reads, uint32_t k, uint32_t m) {
    BuildConfig cfg{k, m, false, true};
    ReadSet rs = make_read_set(reads, cfg);
    RBossIndex idx = build_index(rs, cfg);
    idx.set_nonextensible(mark_non_extensible_direct(idx));
    return idx;
}

bool substring_of_either(const std::string& s, const std::string& genome,
                         const std::string& genome_rc) {
    return genome.find(s) != std::string::npos || genome_rc.find(s) != std::string::npos;
}

}  // namespace

TEST_CASE("extensibility on EX1") {
    RBossIndex idx = build_with_n(kEx1, 11, 2);
    oracle::LabelMatrix lm =
        oracle::enumerate_labels(make_read_set(kEx1, BuildConfig{11, 2}), 11, 2);
    uint64_t r1 = lm.row("atttggagta");
    uint64_t r3 = lm.row("agtattggaa");
    CHECK(!is_right_extensible(idx, r1));  // diverging continuations
    CHECK(is_right_extensible(idx, r3));   // unique continuation through R2
    auto cont = right_continuation(idx, r3);
    REQUIRE(cont.has_value());
    CHECK(idx.label_str(cont->next) == "gtattggaaa");
    CHECK(cont->symbols.size() == 1);  // o = 9 overlap appends one symbol
    for (uint64_t j = 1; j <= idx.num_solid(); ++j) {
        uint64_t v = idx.solid_bits().select1(j);
        CHECK(is_left_extensible(idx, v) == is_right_extensible(idx, idx.rc_node(v)));
    }
}

TEST_CASE("interior nodes with one edge are extensible when k is below read length") {
    std::string g = simulate_genome(120, 71);
    std::vector<std::string> reads;
    for (int i = 0; i + 40 <= 120; i += 10) reads.push_back(g.substr(i, 40));
    RBossIndex idx = build_with_n(reads, 15, 4);
    uint64_t interior_re = 0;
    for (uint64_t j = 1; j <= idx.num_solid(); ++j) {
        uint64_t v = idx.solid_bits().select1(j);
        if (!idx.has_dollar_edge(v) && idx.traversable_outdegree(v) == 1) {
            CHECK(is_right_extensible(idx, v));
            ++interior_re;
        }
    }
    CHECK(interior_re > 0);
}

TEST_CASE("non-extensible marking on EX1") {
    RBossIndex idx = build_with_n(kEx1, 11, 2);
    oracle::LabelMatrix lm =
        oracle::enumerate_labels(make_read_set(kEx1, BuildConfig{11, 2}), 11, 2);
    CHECK(idx.is_nonextensible(lm.row("atttggagta")));
    CHECK(!idx.is_nonextensible(lm.row("agtattggaa")));
}

TEST_CASE("a node with two traversable edges is marked") {
    std::vector<std::string> reads = {"aacgtacgca", "aacgtacgtt", "ccaacgtacg"};
    RBossIndex idx = build_with_n(reads, 8, 3);
    bool found = false;
    for (uint64_t j = 1; j <= idx.num_solid(); ++j) {
        uint64_t v = idx.solid_bits().select1(j);
        if (idx.traversable_outdegree(v) > 1) {
            CHECK(idx.is_nonextensible(v));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("dfs marking equals the direct marking") {
    for (uint64_t seed : {801ull, 802ull, 803ull, 804ull, 805ull, 806ull}) {
        oracle::Instance ins = oracle::random_instance(seed);
        BuildConfig cfg{ins.k, ins.m, false, true};
        ReadSet rs = make_read_set(ins.reads, cfg);
        RBossIndex idx = build_index(rs, cfg);
        SparseBitVector direct = mark_non_extensible_direct(idx);
        SparseBitVector dfs = mark_non_extensible_dfs(idx);
        CHECK(direct == dfs);
    }
    BuildConfig cfg{11, 2, false, true};
    ReadSet rs = make_read_set(kEx1, cfg);
    RBossIndex ex1 = build_index(rs, cfg);
    CHECK(mark_non_extensible_direct(ex1) == mark_non_extensible_dfs(ex1));
}

TEST_CASE("isolated read spells itself") {
    std::vector<std::string> reads = {"acgtacgtacgtacgtacta", "ccccccggggggttttaaaa"};
    RBossIndex idx = build_with_n(reads, 21, 2);
    auto contigs = spell_maximal_paths(idx);
    REQUIRE(contigs.size() == 2);
    std::set<std::string> got;
    for (const auto& c : contigs) got.insert(c.sequence);
    std::set<std::string> expect;
    for (const auto& r : reads) expect.insert(std::min(r, reverse_complement_str(r)));
    CHECK(got == expect);
}

TEST_CASE("error-free tiling reassembles into genome substrings") {
    std::string genome = simulate_genome(2000, 577);
    std::string genome_rc = reverse_complement_str(genome);
    std::vector<std::string> reads = tile_reads(genome, 15, 100, 0.0, 91);
    RBossIndex idx = build_with_n(reads, 101, 30);
    auto contigs = spell_maximal_paths(idx);
    REQUIRE(!contigs.empty());
    for (const auto& c : contigs) CHECK(substring_of_either(c.sequence, genome, genome_rc));
    AssemblyStats st = assembly_stats(contigs);
    CHECK(st.max_len > 1000);
    auto unitigs = spell_unitigs(idx);
    AssemblyStats ust = assembly_stats(unitigs);
    CHECK(st.mean_len >= ust.mean_len);
    for (const auto& u : unitigs) CHECK(substring_of_either(u.sequence, genome, genome_rc));
}

TEST_CASE("contig set is invariant under read order permutation") {
    std::string genome = simulate_genome(800, 311);
    std::vector<std::string> reads = tile_reads(genome, 8, 60, 0.0, 13);
    RBossIndex idx1 = build_with_n(reads, 61, 20);
    auto c1 = spell_maximal_paths(idx1);
    std::mt19937_64 rng(5);
    std::vector<std::string> shuffled = reads;
    for (size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng() % i]);
    RBossIndex idx2 = build_with_n(shuffled, 61, 20);
    auto c2 = spell_maximal_paths(idx2);
    REQUIRE(c1.size() == c2.size());
    for (size_t i = 0; i < c1.size(); ++i) CHECK(c1[i].sequence == c2[i].sequence);
}

TEST_CASE("threaded spelling matches single-threaded") {
    std::string genome = simulate_genome(1200, 99);
    std::vector<std::string> reads = tile_reads(genome, 10, 80, 0.0, 7);
    RBossIndex idx = build_with_n(reads, 81, 25);
    AssembleOptions one, four;
    four.threads = 4;
    auto c1 = spell_maximal_paths(idx, one);
    auto c4 = spell_maximal_paths(idx, four);
    REQUIRE(c1.size() == c4.size());
    for (size_t i = 0; i < c1.size(); ++i) CHECK(c1[i].sequence == c4[i].sequence);
}

TEST_CASE("contig output round trip") {
    std::string genome = simulate_genome(600, 42);
    std::vector<std::string> reads = tile_reads(genome, 6, 50, 0.0, 3);
    RBossIndex idx = build_with_n(reads, 51, 15);
    auto contigs = spell_maximal_paths(idx);
    write_contigs(contigs, "contigs_test.fasta");
    std::vector<std::string> raw;
    {
        std::ifstream in("contigs_test.fasta");
        std::string line, seq;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] == '>') {
                if (!seq.empty()) raw.push_back(seq);
                seq.clear();
            } else seq += line;
        }
        if (!seq.empty()) raw.push_back(seq);
    }
    std::set<std::string> expect;
    for (const auto& c : contigs) expect.insert(c.sequence);
    std::set<std::string> got(raw.begin(), raw.end());
    CHECK(got == expect);
    CHECK(raw.size() == contigs.size());
    // empty contig list writes an empty file
    write_contigs({}, "contigs_empty.fasta");
    std::ifstream empty("contigs_empty.fasta");
    std::string all((std::istreambuf_iterator<char>(empty)), std::istreambuf_iterator<char>());
    CHECK(all.empty());
}

TEST_CASE("simulated reads tile the genome at the requested depth") {
    SimulatedReads sim = simulate_reads(3000, 9.0, 120, 0.0, 404);
    std::string rc = reverse_complement_str(sim.genome);
    std::vector<uint32_t> depth(sim.genome.size(), 0);
    for (const auto& r : sim.reads) {
        bool fwd = sim.genome.find(r) != std::string::npos;
        bool bwd = rc.find(r) != std::string::npos;
        CHECK((fwd || bwd));
        size_t pos = fwd ? sim.genome.find(r) : sim.genome.size() - 120 - rc.find(r);
        for (size_t i = pos; i < pos + 120 && i < depth.size(); ++i) ++depth[i];
    }
    uint64_t covered = 0;
    double total = 0;
    for (uint32_t d : depth) {
        covered += d > 0;
        total += d;
    }
    CHECK(covered == depth.size());  // no gaps
    CHECK(total / static_cast<double>(depth.size()) == doctest::Approx(9.0).epsilon(0.15));
    // errors only perturb symbols, never lengths or counts
    SimulatedReads noisy = simulate_reads(1000, 5.0, 50, 0.02, 404);
    CHECK(noisy.reads.size() == simulate_reads(1000, 5.0, 50, 0.0, 404).reads.size());
    for (const auto& r : noisy.reads) CHECK(r.size() == 50);
}

TEST_CASE("assembly stats") {
    std::vector<Contig> cs;
    for (auto len : {10, 20, 30}) cs.push_back({std::string(static_cast<size_t>(len), 'a'), 1, 0, 0});
    AssemblyStats st = assembly_stats(cs);
    CHECK(st.contigs == 3);
    CHECK(st.total_len == 60);
    CHECK(st.mean_len == doctest::Approx(20.0));
    CHECK(st.max_len == 30);
    CHECK(st.n50 == 30);
}
