// Exercises the installed command line binary end to end. The binary path
// arrives as argv[1] from ctest.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rboss/dna.hpp"

using nlohmann::json;

static std::string g_binary;

namespace {

int run(const std::string& args, const std::string& out_file) {
    std::string cmd = g_binary + " " + args + " > " + out_file + " 2> " + out_file + ".err";
    return std::system(cmd.c_str());
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    return json::parse(in);
}

}  // namespace

TEST_CASE("cli end to end") {
    // EX1 as FASTA
    {
        std::ofstream f("cli_ex1.fa");
        f << ">r1\natttggagta\n>r2\ngtattggaaa\n>r3\nagtattggaa\n>r4\ncaatactcca\n";
    }
    REQUIRE(run("build cli_ex1.fa -k 11 -m 2 -o cli_ex1.idx --keep-lcs --keep-rc-perm",
                "cli_build.json") == 0);
    json b = read_json("cli_build.json");
    CHECK(b["nodes"] == 75);

    REQUIRE(run("stats cli_ex1.idx", "cli_stats.json") == 0);
    json s = read_json("cli_stats.json");
    CHECK(s["n"] == 75);
    CHECK(s["solid"] == 8);
    CHECK(s["linker"] == 67);
    CHECK(s["tree_nodes"] == s["tree_internal"].get<uint64_t>() + 75);
    CHECK(s["bits_per_input_symbol"].get<double>() > 0.0);

    REQUIRE(run("overlaps cli_ex1.idx --read 1 --dir fwd", "cli_ov.json") == 0);
    json ov = read_json("cli_ov.json");
    REQUIRE(ov["forward"].size() == 3);
    std::set<std::pair<std::string, uint32_t>> got;
    for (const auto& o : ov["forward"])
        got.insert(std::make_pair(o["label"].get<std::string>(), o["o"].get<uint32_t>()));
    std::set<std::pair<std::string, uint32_t>> expect = {
        {"gtattggaaa", 3}, {"agtattggaa", 4}, {"tggagtattg", 7}};
    CHECK(got == expect);

    REQUIRE(run("overlaps cli_ex1.idx --read 3 --dir both --weighted", "cli_ov3.json") == 0);
    json ov3 = read_json("cli_ov3.json");
    CHECK(ov3["forward"].size() == 1);
    CHECK(ov3["backward"].size() == 2);

    // bad invocations fail with a machine-readable error
    CHECK(run("overlaps cli_ex1.idx --read 99", "cli_bad.json") != 0);
    {
        std::ifstream err("cli_bad.json.err");
        std::string line;
        std::getline(err, line);
        CHECK(json::parse(line).contains("error"));
    }
    CHECK(run("overlaps cli_ex1.idx", "cli_bad2.json") != 0);

    // simulate -> build -> assemble
    REQUIRE(run("simulate --len 1500 --cov 12 --rlen 80 --seed 5 -o cli_sim.fastq "
                "--genome-out cli_genome.fa",
                "cli_sim.json") == 0);
    REQUIRE(run("build cli_sim.fastq -k 81 -m 25 -o cli_sim.idx", "cli_simb.json") == 0);
    REQUIRE(run("assemble cli_sim.idx -o cli_contigs.fasta --threads 2", "cli_asm.json") == 0);
    json asm_out = read_json("cli_asm.json");
    CHECK(asm_out["contigs"].get<uint64_t>() >= 1);
    // every contig is a substring of the simulated genome or its rc
    std::string genome;
    {
        std::ifstream g("cli_genome.fa");
        std::string line;
        while (std::getline(g, line))
            if (!line.empty() && line[0] != '>') genome += line;
    }
    std::string genome_rc = rboss::reverse_complement_str(genome);
    {
        std::ifstream c("cli_contigs.fasta");
        std::string line, seq;
        uint64_t checked = 0;
        auto flush = [&]() {
            if (seq.empty()) return;
            bool ok = genome.find(seq) != std::string::npos ||
                      genome_rc.find(seq) != std::string::npos;
            CHECK(ok);
            ++checked;
            seq.clear();
        };
        while (std::getline(c, line)) {
            if (line.empty()) continue;
            if (line[0] == '>') flush();
            else seq += line;
        }
        flush();
        CHECK(checked == asm_out["contigs"].get<uint64_t>());
    }

    // bench runs on an LCS-enabled index
    REQUIRE(run("bench cli_ex1.idx --samples 50", "cli_bench.json") == 0);
    json bench = read_json("cli_bench.json");
    CHECK(bench["mean_us"]["nextcontained"]["tree"].get<double>() >= 0.0);
    // bench without LCS fails cleanly
    CHECK(run("bench cli_sim.idx", "cli_bench2.json") != 0);
}

int main(int argc, char** argv) {
    if (argc > 1) g_binary = argv[argc - 1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv);
    return ctx.run();
}
