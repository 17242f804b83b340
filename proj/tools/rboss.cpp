// rboss: build and query read-overlap indexes, assemble contigs.
//
// Subcommands: build, stats, overlaps, assemble, bench, simulate.
// Machine-readable output is JSON on stdout; errors go to stderr as JSON
// with a nonzero exit code.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "rboss/assembler.hpp"
#include "rboss/bench.hpp"
#include "rboss/dna.hpp"
#include "rboss/index.hpp"
#include "rboss/overlap.hpp"
#include "rboss/read_set.hpp"
#include "rboss/simulate.hpp"

using nlohmann::json;

namespace {

json overlap_list_json(const rboss::RBossIndex& idx, const std::vector<rboss::Overlap>& ovs) {
    json arr = json::array();
    for (const auto& ov : ovs) {
        arr.push_back({{"row", ov.target},
                       {"label", idx.label_str(ov.target)},
                       {"o", ov.len}});
    }
    return arr;
}

json weighted_list_json(const rboss::RBossIndex& idx,
                        const std::vector<rboss::WeightedOverlap>& ovs) {
    json arr = json::array();
    for (const auto& ov : ovs) {
        arr.push_back({{"row", ov.target},
                       {"label", idx.label_str(ov.target)},
                       {"o", ov.len},
                       {"weight", ov.weight},
                       {"irreducible", ov.irreducible}});
    }
    return arr;
}

int cmd_build(const std::string& input, const std::string& out_path, uint32_t k, uint32_t m,
              bool keep_lcs, bool keep_rc_perm) {
    rboss::BuildConfig cfg{k, m, keep_lcs, keep_rc_perm};
    rboss::ReadSet rs = rboss::ingest_reads(input, cfg);
    if (rs.dropped() > 0)
        std::cerr << "dropped " << rs.dropped() << " read(s) with non-acgt symbols\n";
    rboss::RBossIndex idx = rboss::build_index(rs, cfg);
    idx.set_nonextensible(rboss::mark_non_extensible_direct(idx));
    idx.save_file(out_path);
    json out{{"index", out_path}, {"k", k},      {"m", m},
             {"reads", rs.num_reads()},          {"read_len", rs.read_len()},
             {"nodes", idx.num_rows()},          {"edges", idx.num_edges()}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_stats(const std::string& idx_path) {
    rboss::RBossIndex idx = rboss::RBossIndex::load_file(idx_path);
    auto cs = idx.component_sizes();
    uint64_t s_nodes = 0, p_nodes = idx.pnode_bits().ones();
    for (uint64_t j = 1; j <= idx.num_solid(); ++j)
        if (idx.has_dollar_edge(idx.solid_bits().select1(j))) ++s_nodes;
    double input_symbols = static_cast<double>(idx.num_reads() * idx.read_len());
    json out{
        {"k", idx.k()},
        {"m", idx.m()},
        {"reads", idx.num_reads()},
        {"read_len", idx.read_len()},
        {"n", idx.num_rows()},
        {"e", idx.num_edges()},
        {"solid", idx.num_solid()},
        {"linker", idx.num_linker()},
        {"p_nodes", p_nodes},
        {"s_nodes", s_nodes},
        {"tree_nodes", idx.tree().num_nodes()},
        {"tree_internal", idx.tree().num_internal()},
        {"bits_per_input_symbol", input_symbols > 0 ? 8.0 * cs.total / input_symbols : 0.0},
        {"components_bytes",
         {{"E", cs.edges},
          {"B", cs.boundary},
          {"S", cs.solid},
          {"P", cs.pnode},
          {"N", cs.nonext},
          {"T", cs.tree},
          {"LCS", cs.lcs},
          {"rc_perm", cs.rc_perm},
          {"total", cs.total}}},
    };
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_overlaps(const std::string& idx_path, uint64_t read_id, const std::string& seq,
                 const std::string& dir, bool weighted) {
    rboss::RBossIndex idx = rboss::RBossIndex::load_file(idx_path);
    uint64_t row;
    if (!seq.empty()) {
        rboss::VoNode r = idx.backwardsearch(rboss::to_ranks(seq));
        if (r.empty() || r.lo != r.hi || !idx.is_solid(r.lo))
            throw std::runtime_error("sequence does not identify a single solid node");
        row = r.lo;
    } else {
        if (read_id == 0 || read_id > idx.num_reads())
            throw std::runtime_error("read id out of range");
        row = idx.read_prefix_row(2 * (read_id - 1));
    }
    json out{{"row", row}, {"label", idx.label_str(row)}};
    if (dir == "fwd" || dir == "both") {
        if (weighted) out["forward"] = weighted_list_json(idx, rboss::weighted_foverlaps(idx, row));
        else out["forward"] = overlap_list_json(idx, rboss::foverlaps(idx, row));
    }
    if (dir == "bwd" || dir == "both") {
        if (weighted) out["backward"] = weighted_list_json(idx, rboss::weighted_boverlaps(idx, row));
        else out["backward"] = overlap_list_json(idx, rboss::boverlaps(idx, row));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_assemble(const std::string& idx_path, const std::string& out_path, uint32_t min_len,
                 uint32_t threads) {
    rboss::RBossIndex idx = rboss::RBossIndex::load_file(idx_path);
    rboss::AssembleOptions opt;
    opt.min_len = min_len;
    opt.threads = threads;
    auto contigs = rboss::spell_maximal_paths(idx, opt);
    rboss::write_contigs(contigs, out_path);
    auto st = rboss::assembly_stats(contigs);
    json out{{"contigs", st.contigs},
             {"total_len", st.total_len},
             {"mean_len", st.mean_len},
             {"max_len", st.max_len},
             {"n50", st.n50},
             {"output", out_path}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_bench(const std::string& idx_path, uint64_t samples, uint64_t seed) {
    rboss::RBossIndex idx = rboss::RBossIndex::load_file(idx_path);
    if (!idx.has_lcs())
        throw std::runtime_error("bench needs an index built with --keep-lcs");
    rboss::BenchResult r = rboss::run_bench(idx, samples, seed);
    auto ratio = [](double base, double tree) { return tree > 0 ? base / tree : 0.0; };
    json out{{"samples", r.samples},
             {"mean_us",
              {{"nextcontained", {{"tree", r.nextcontained_tree},
                                  {"lcs", r.nextcontained_lcs},
                                  {"ratio", ratio(r.nextcontained_lcs, r.nextcontained_tree)}}},
               {"buildL", {{"tree", r.buildl_tree},
                           {"lcs", r.buildl_lcs},
                           {"ratio", ratio(r.buildl_lcs, r.buildl_tree)}}},
               {"foverlaps", {{"tree", r.foverlaps_tree},
                              {"lcs", r.foverlaps_lcs},
                              {"ratio", ratio(r.foverlaps_lcs, r.foverlaps_tree)}}},
               {"rc", {{"search", r.rc_search}, {"perm", r.rc_perm}}}}}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_simulate(uint64_t len, double cov, uint64_t rlen, double err, uint64_t seed,
                 const std::string& out_path, const std::string& genome_out) {
    rboss::SimulatedReads sim = rboss::simulate_reads(len, cov, rlen, err, seed);
    rboss::write_fastq(sim.reads, out_path);
    if (!genome_out.empty()) rboss::write_fasta({sim.genome}, genome_out, "genome");
    json out{{"reads", sim.reads.size()},
             {"read_len", rlen},
             {"genome_len", len},
             {"coverage", cov},
             {"output", out_path}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rboss: succinct read-overlap index and assembler"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "build an index from FASTA/FASTQ reads");
    std::string b_input, b_out;
    uint32_t b_k = 0, b_m = 2;
    bool b_lcs = false, b_rcp = false;
    build->add_option("input", b_input, "FASTA/FASTQ file")->required();
    build->add_option("-k", b_k, "dBG order (node labels have length k-1)")->required();
    build->add_option("-m", b_m, "minimum overlap length")->required();
    build->add_option("-o,--output", b_out, "index output path")->required();
    build->add_flag("--keep-lcs", b_lcs, "retain the LCS baseline structure");
    build->add_flag("--keep-rc-perm", b_rcp, "retain the reverse-complement permutation");

    // stats
    auto* stats = app.add_subcommand("stats", "print index statistics as JSON");
    std::string s_idx;
    stats->add_option("index", s_idx, "index file")->required();

    // overlaps
    auto* ovl = app.add_subcommand("overlaps", "compute overlaps of a read or sequence");
    std::string o_idx, o_seq, o_dir = "fwd";
    uint64_t o_read = 0;
    bool o_weighted = false;
    ovl->add_option("index", o_idx, "index file")->required();
    ovl->add_option("--read", o_read, "1-based read id");
    ovl->add_option("--seq", o_seq, "full node label instead of a read id");
    ovl->add_option("--dir", o_dir, "fwd|bwd|both")
        ->check(CLI::IsMember({"fwd", "bwd", "both"}));
    ovl->add_flag("--weighted", o_weighted, "report weighted irreducible overlaps");

    // assemble
    auto* asmb = app.add_subcommand("assemble", "spell maximal paths into contigs");
    std::string a_idx, a_out;
    uint32_t a_minlen = 0, a_threads = 1;
    asmb->add_option("index", a_idx, "index file")->required();
    asmb->add_option("-o,--output", a_out, "FASTA output")->required();
    asmb->add_option("--min-len", a_minlen, "minimum contig length (default k-1)");
    asmb->add_option("--threads", a_threads, "worker threads")->check(CLI::PositiveNumber);

    // bench
    auto* bench = app.add_subcommand("bench", "compare tree and LCS query paths");
    std::string be_idx;
    uint64_t be_samples = 1000, be_seed = 42;
    bench->add_option("index", be_idx, "index file (built with --keep-lcs)")->required();
    bench->add_option("--samples", be_samples, "sampled solid nodes");
    bench->add_option("--seed", be_seed, "sampling seed");

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate synthetic error-free or noisy reads");
    uint64_t si_len = 0, si_rlen = 0, si_seed = 1;
    double si_cov = 0, si_err = 0;
    std::string si_out, si_genome;
    sim->add_option("--len", si_len, "genome length")->required();
    sim->add_option("--cov", si_cov, "coverage depth")->required();
    sim->add_option("--rlen", si_rlen, "read length")->required();
    sim->add_option("--error-rate", si_err, "per-base substitution rate");
    sim->add_option("--seed", si_seed, "RNG seed");
    sim->add_option("-o,--output", si_out, "FASTQ output")->required();
    sim->add_option("--genome-out", si_genome, "also write the genome as FASTA");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(b_input, b_out, b_k, b_m, b_lcs, b_rcp);
        if (*stats) return cmd_stats(s_idx);
        if (*ovl) {
            if ((o_read == 0) == o_seq.empty())
                throw std::runtime_error("pass exactly one of --read or --seq");
            return cmd_overlaps(o_idx, o_read, o_seq, o_dir, o_weighted);
        }
        if (*asmb) return cmd_assemble(a_idx, a_out, a_minlen, a_threads);
        if (*bench) return cmd_bench(be_idx, be_samples, be_seed);
        if (*sim) return cmd_simulate(si_len, si_cov, si_rlen, si_err, si_seed, si_out, si_genome);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
