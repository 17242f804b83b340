#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rboss {

struct BuildConfig {
    uint32_t k = 0;              // node labels have length k-1
    uint32_t m = 2;              // minimum overlap length, 2 <= m <= k-2
    bool keep_lcs = false;       // retain the LCS array (baseline / bench)
    bool keep_rc_perm = false;   // retain the solid-node reverse-complement permutation
};

// Validated collection of equal-length DNA reads. members() enumerates
// R* = reads plus their reverse complements, interleaved R1, R1', R2, R2', ...
class ReadSet {
public:
    ReadSet() = default;
    explicit ReadSet(std::vector<std::string> reads, std::vector<std::string> ids = {},
                     uint64_t dropped = 0);

    uint64_t num_reads() const { return reads_.size(); }   // r
    uint64_t read_len() const { return z_; }               // z
    uint64_t dropped() const { return dropped_; }

    const std::vector<std::string>& reads() const { return reads_; }
    const std::string& read(uint64_t i) const { return reads_[i]; }  // 0-based
    const std::string& id(uint64_t i) const { return ids_[i]; }

    // Member j of R*, 0-based: even j -> read j/2, odd j -> its reverse complement.
    std::string member(uint64_t j) const;
    uint64_t num_members() const { return 2 * reads_.size(); }

private:
    std::vector<std::string> reads_;  // lowercase acgt, equal length
    std::vector<std::string> ids_;
    uint64_t z_ = 0;
    uint64_t dropped_ = 0;
};

// Reads FASTA or FASTQ (detected from the first record marker). Records with
// symbols outside acgt/ACGT are dropped and counted; throws if fewer than two
// reads survive, lengths are unequal, or cfg.k exceeds z+1.
ReadSet ingest_reads(const std::string& path, const BuildConfig& cfg);

// Same validation, starting from in-memory records.
ReadSet make_read_set(const std::vector<std::string>& raw_reads, const BuildConfig& cfg,
                      std::vector<std::string> ids = {});

}  // namespace rboss
