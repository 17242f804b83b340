#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace rboss {

// Plain bit vector with rank/select support.
//
// Bits are stored in 64-bit words. The rank directory is two-level
// (cumulative counts every 512 bits, 16-bit relative counts per word),
// select binary-searches the directory. Positions and ordinals in the
// public interface are 1-based; rank(b, i) counts occurrences of b in
// positions [1..i]. Immutable once built.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(const std::vector<bool>& bits);
    BitVector(const std::vector<uint64_t>& words, uint64_t n_bits);

    // Builder-style construction: append bits, then freeze().
    void push_back(bool b);
    void freeze();

    bool get(uint64_t i) const {  // 1-based
        return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1ull;
    }

    uint64_t size() const { return n_; }
    uint64_t ones() const { return total_ones_; }
    uint64_t zeros() const { return n_ - total_ones_; }

    // Number of occurrences of b in [1..i]; i may be 0 (empty prefix) up to n.
    uint64_t rank(bool b, uint64_t i) const;
    uint64_t rank1(uint64_t i) const;
    uint64_t rank0(uint64_t i) const { return i - rank1(i); }

    // 1-based position of the j-th occurrence of b, 1 <= j <= rank_b(n).
    uint64_t select(bool b, uint64_t j) const;
    uint64_t select1(uint64_t j) const;
    uint64_t select0(uint64_t j) const;

    void save(std::ostream& out) const;
    void load(std::istream& in);

    bool operator==(const BitVector& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }

    size_t byte_size() const { return words_.size() * 8 + super_.size() * 8 + block_.size() * 2; }

private:
    void build_directories();
    uint64_t rank1_unchecked(uint64_t i) const;  // i in [0..n]

    std::vector<uint64_t> words_;
    uint64_t n_ = 0;
    uint64_t total_ones_ = 0;
    // super_[s]: ones before superblock s (512 bits each); block_[w]: ones in the
    // superblock before word w.
    std::vector<uint64_t> super_;
    std::vector<uint16_t> block_;
    bool frozen_ = false;
};

// Positions of a sparse set of 1s, stored explicitly. Rank is a binary
// search, select is array access. Used for bitmaps that are almost empty.
class SparseBitVector {
public:
    SparseBitVector() = default;
    SparseBitVector(uint64_t n, std::vector<uint64_t> positions_sorted);

    uint64_t size() const { return n_; }
    uint64_t ones() const { return pos_.size(); }
    bool get(uint64_t i) const;              // 1-based
    uint64_t rank1(uint64_t i) const;        // ones in [1..i]
    uint64_t select1(uint64_t j) const;      // 1-based

    void save(std::ostream& out) const;
    void load(std::istream& in);

    bool operator==(const SparseBitVector& other) const {
        return n_ == other.n_ && pos_ == other.pos_;
    }

    const std::vector<uint64_t>& positions() const { return pos_; }

private:
    uint64_t n_ = 0;
    std::vector<uint64_t> pos_;  // sorted, 1-based
};

}  // namespace rboss
