#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rboss/bitvector.hpp"
#include "rboss/index.hpp"

namespace rboss {

// Longest-common-suffix array of adjacent rows, values capped at k-2, in a
// levelwise wavelet tree so "previous/next entry < t" runs in O(log k).
// This is the variable-order machinery kept as baseline and oracle; the
// production query path uses the overlap tree instead.
class LcsArray {
public:
    LcsArray() = default;
    LcsArray(const std::vector<uint32_t>& values, uint32_t max_value);

    uint64_t size() const { return n_; }
    uint32_t access(uint64_t i) const;  // 1-based

    // Largest p <= i with value[p] < t, or 0.
    uint64_t prev_less(uint64_t i, uint32_t t) const;
    // Smallest p >= i with value[p] < t, or 0 when none.
    uint64_t next_less(uint64_t i, uint32_t t) const;

    void save(std::ostream& out) const;
    void load(std::istream& in);
    bool operator==(const LcsArray& o) const { return n_ == o.n_ && levels_ == o.levels_; }
    size_t byte_size() const {
        size_t s = 0;
        for (const auto& l : levels_) s += l.byte_size();
        return s;
    }

private:
    uint64_t n_ = 0;
    uint32_t max_value_ = 0;
    uint8_t depth_ = 0;
    std::vector<BitVector> levels_;
};

// VO-BOSS operations over the index (requires keep_lcs at build time).
namespace vo {

// Maximal range containing v whose rows all share v's last k2 symbols.
VoNode shorter(const RBossIndex& idx, const VoNode& v, uint32_t k2);

// Order-k2 nodes (k2 > v.order) whose labels end with v's label.
std::vector<VoNode> longer(const RBossIndex& idx, const VoNode& v, uint32_t k2);

// Some max-order row in v's range with an outgoing edge labeled c ('$' allowed).
std::optional<uint64_t> maxlen(const RBossIndex& idx, const VoNode& v, uint8_t c);

// Algorithm-A1-style nextcontained via shorter + label inspection,
// O(k^2 log sigma). Returns the linker row, or 0.
uint64_t nextcontained_lcs(const RBossIndex& idx, uint64_t row, uint32_t m);
uint64_t nextcontained_lcs(const RBossIndex& idx, const VoNode& v, uint32_t m);

// Iterated nextcontained_lcs.
std::vector<uint64_t> buildL_lcs(const RBossIndex& idx, uint64_t row);

}  // namespace vo

}  // namespace rboss
