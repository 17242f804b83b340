#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rboss {

struct SimulatedReads {
    std::string genome;
    std::vector<std::string> reads;  // each a substring of the genome or its rc
};

// Random genome over acgt, deterministic in the seed.
std::string simulate_genome(uint64_t length, uint64_t seed);

// Tiles ceil(length*coverage/read_len) reads evenly across the genome so
// every base is covered; strand and substitution errors are drawn from the
// seeded generator. error_rate 0 keeps reads exact.
SimulatedReads simulate_reads(uint64_t genome_len, double coverage, uint64_t read_len,
                              double error_rate, uint64_t seed);

// Same, over a caller-provided genome.
std::vector<std::string> tile_reads(const std::string& genome, double coverage, uint64_t read_len,
                                    double error_rate, uint64_t seed);

void write_fastq(const std::vector<std::string>& reads, const std::string& path);
void write_fasta(const std::vector<std::string>& seqs, const std::string& path,
                 const std::string& name_prefix = "read");

}  // namespace rboss
