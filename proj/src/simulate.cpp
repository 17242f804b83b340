#include "rboss/simulate.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include "rboss/dna.hpp"

namespace rboss {

std::string simulate_genome(uint64_t length, uint64_t seed) {
    static const char bases[] = "acgt";
    std::mt19937_64 rng(seed);
    std::string g(length, 'a');
    for (auto& ch : g) ch = bases[rng() % 4];
    return g;
}

std::vector<std::string> tile_reads(const std::string& genome, double coverage, uint64_t read_len,
                                    double error_rate, uint64_t seed) {
    const uint64_t g = genome.size();
    if (read_len == 0 || read_len > g) throw std::invalid_argument("tile_reads: bad read length");
    if (coverage <= 0) throw std::invalid_argument("tile_reads: coverage must be positive");
    uint64_t num = static_cast<uint64_t>(std::ceil(static_cast<double>(g) * coverage / read_len));
    if (num < 2) num = 2;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    static const char bases[] = "acgt";
    std::vector<std::string> reads;
    reads.reserve(num);
    for (uint64_t i = 0; i < num; ++i) {
        uint64_t pos = (num == 1) ? 0 : (i * (g - read_len)) / (num - 1);
        std::string r = genome.substr(pos, read_len);
        if (rng() & 1) r = reverse_complement_str(r);
        if (error_rate > 0) {
            std::bernoulli_distribution flip(error_rate);
            for (auto& ch : r)
                if (flip(rng)) {
                    char nb = bases[rng() % 4];
                    while (nb == ch) nb = bases[rng() % 4];
                    ch = nb;
                }
        }
        reads.push_back(std::move(r));
    }
    return reads;
}

SimulatedReads simulate_reads(uint64_t genome_len, double coverage, uint64_t read_len,
                              double error_rate, uint64_t seed) {
    SimulatedReads out;
    out.genome = simulate_genome(genome_len, seed);
    out.reads = tile_reads(out.genome, coverage, read_len, error_rate, seed + 1);
    return out;
}

void write_fastq(const std::vector<std::string>& reads, const std::string& path) {
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error("cannot write FASTQ: " + path);
    uint64_t ix = 0;
    for (const auto& r : reads) {
        outf << "@read_" << ++ix << "\n" << r << "\n+\n" << std::string(r.size(), 'I') << "\n";
    }
}

void write_fasta(const std::vector<std::string>& seqs, const std::string& path,
                 const std::string& name_prefix) {
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error("cannot write FASTA: " + path);
    uint64_t ix = 0;
    for (const auto& s : seqs) outf << ">" << name_prefix << "_" << ++ix << "\n" << s << "\n";
}

}  // namespace rboss
