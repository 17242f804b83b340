#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rboss/bitvector.hpp"

namespace rboss {

// Immutable sequence over a small integer alphabet [1..sigma] with
// access / rank / select, stored as a levelwise (pointerless) wavelet tree.
// sigma <= 16. Positions and ordinals are 1-based.
class SymbolSequence {
public:
    SymbolSequence() = default;
    SymbolSequence(const std::vector<uint8_t>& symbols, uint8_t sigma);

    uint64_t size() const { return n_; }
    uint8_t sigma() const { return sigma_; }

    uint8_t access(uint64_t i) const;            // symbol at position i
    uint64_t rank(uint8_t c, uint64_t i) const;  // occurrences of c in [1..i]
    uint64_t select(uint8_t c, uint64_t j) const;

    void save(std::ostream& out) const;
    void load(std::istream& in);

    bool operator==(const SymbolSequence& other) const {
        return n_ == other.n_ && sigma_ == other.sigma_ && levels_ == other.levels_;
    }

    size_t byte_size() const {
        size_t s = 0;
        for (const auto& l : levels_) s += l.byte_size();
        return s;
    }

private:
    uint64_t n_ = 0;
    uint8_t sigma_ = 0;
    uint8_t depth_ = 0;  // bits per code
    std::vector<BitVector> levels_;
};

}  // namespace rboss
