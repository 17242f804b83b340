#include "rboss/bitvector.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

#include "rboss/io_util.hpp"

namespace rboss {

namespace {

constexpr uint64_t kWordsPerSuper = 8;  // 512 bits per superblock

// 0-based position of the r-th (1-based) set bit inside w.
inline unsigned select_in_word(uint64_t w, unsigned r) {
    while (r > 1) {
        w &= w - 1;
        --r;
    }
    return static_cast<unsigned>(std::countr_zero(w));
}

}  // namespace

BitVector::BitVector(const std::vector<bool>& bits) {
    words_.assign((bits.size() + 63) / 64, 0);
    n_ = bits.size();
    for (uint64_t i = 0; i < n_; ++i)
        if (bits[i]) words_[i >> 6] |= 1ull << (i & 63);
    build_directories();
}

BitVector::BitVector(const std::vector<uint64_t>& words, uint64_t n_bits) {
    words_ = words;
    n_ = n_bits;
    words_.resize((n_ + 63) / 64, 0);
    if (n_ & 63) words_.back() &= (1ull << (n_ & 63)) - 1;  // clear tail
    build_directories();
}

void BitVector::push_back(bool b) {
    assert(!frozen_);
    if ((n_ & 63) == 0) words_.push_back(0);
    if (b) words_.back() |= 1ull << (n_ & 63);
    ++n_;
}

void BitVector::freeze() { build_directories(); }

void BitVector::build_directories() {
    frozen_ = true;
    const size_t nw = words_.size();
    const size_t nsb = (nw + kWordsPerSuper - 1) / kWordsPerSuper;
    super_.assign(nsb + 1, 0);
    block_.assign(nw, 0);
    uint64_t acc = 0, in_super = 0;
    for (size_t w = 0; w < nw; ++w) {
        if (w % kWordsPerSuper == 0) {
            super_[w / kWordsPerSuper] = acc;
            in_super = 0;
        }
        block_[w] = static_cast<uint16_t>(in_super);
        uint64_t pc = static_cast<uint64_t>(std::popcount(words_[w]));
        acc += pc;
        in_super += pc;
    }
    super_[nsb] = acc;
    total_ones_ = acc;
}

uint64_t BitVector::rank1_unchecked(uint64_t i) const {
    // count of ones in the first i bits (i.e. 0-based exclusive prefix)
    if (i == 0) return 0;
    const uint64_t w = (i - 1) >> 6;
    const uint64_t lo_bits = i & 63;
    uint64_t r = super_[w / kWordsPerSuper] + block_[w];
    uint64_t mask = lo_bits ? ((1ull << lo_bits) - 1) : ~0ull;
    return r + static_cast<uint64_t>(std::popcount(words_[w] & mask));
}

uint64_t BitVector::rank1(uint64_t i) const {
    if (i > n_) throw std::out_of_range("BitVector::rank: position past end");
    return rank1_unchecked(i);
}

uint64_t BitVector::rank(bool b, uint64_t i) const { return b ? rank1(i) : rank0(i); }

uint64_t BitVector::select1(uint64_t j) const {
    if (j == 0 || j > total_ones_) throw std::out_of_range("BitVector::select1: ordinal out of range");
    // superblock search
    size_t lo = 0, hi = super_.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (super_[mid] < j) lo = mid; else hi = mid - 1;
    }
    uint64_t rem = j - super_[lo];
    size_t w = lo * kWordsPerSuper;
    const size_t w_end = std::min(words_.size(), (lo + 1) * kWordsPerSuper);
    while (w + 1 < w_end && block_[w + 1] < rem) ++w;
    rem -= block_[w];
    return (w << 6) + select_in_word(words_[w], static_cast<unsigned>(rem)) + 1;
}

uint64_t BitVector::select0(uint64_t j) const {
    if (j == 0 || j > zeros()) throw std::out_of_range("BitVector::select0: ordinal out of range");
    size_t lo = 0, hi = super_.size() - 1;
    auto zeros_before_super = [&](size_t s) { return s * 512 > n_ ? n_ - super_[s] : s * 512 - super_[s]; };
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (zeros_before_super(mid) < j) lo = mid; else hi = mid - 1;
    }
    uint64_t rem = j - zeros_before_super(lo);
    size_t w = lo * kWordsPerSuper;
    const size_t w_end = std::min(words_.size(), (lo + 1) * kWordsPerSuper);
    auto zeros_in_block_prefix = [&](size_t ww) {  // zeros in superblock before word ww
        return (ww - lo * kWordsPerSuper) * 64 - block_[ww];
    };
    while (w + 1 < w_end && zeros_in_block_prefix(w + 1) < rem) ++w;
    rem -= zeros_in_block_prefix(w);
    return (w << 6) + select_in_word(~words_[w], static_cast<unsigned>(rem)) + 1;
}

uint64_t BitVector::select(bool b, uint64_t j) const { return b ? select1(j) : select0(j); }

void BitVector::save(std::ostream& out) const {
    io::put_magic(out, "RBV1");
    io::put_u16(out, 1);
    io::put_u64(out, n_);
    for (uint64_t w : words_) io::put_u64(out, w);
}

void BitVector::load(std::istream& in) {
    io::check_magic(in, "RBV1", "BitVector");
    uint16_t ver = io::get_u16(in);
    if (ver != 1) throw std::runtime_error("BitVector: unsupported version");
    n_ = io::get_u64(in);
    words_.assign((n_ + 63) / 64, 0);
    for (auto& w : words_) w = io::get_u64(in);
    build_directories();
}

SparseBitVector::SparseBitVector(uint64_t n, std::vector<uint64_t> positions_sorted)
    : n_(n), pos_(std::move(positions_sorted)) {
    assert(std::is_sorted(pos_.begin(), pos_.end()));
    if (!pos_.empty() && (pos_.front() < 1 || pos_.back() > n_))
        throw std::out_of_range("SparseBitVector: position outside universe");
}

bool SparseBitVector::get(uint64_t i) const {
    return std::binary_search(pos_.begin(), pos_.end(), i);
}

uint64_t SparseBitVector::rank1(uint64_t i) const {
    if (i > n_) throw std::out_of_range("SparseBitVector::rank1: position past end");
    return static_cast<uint64_t>(std::upper_bound(pos_.begin(), pos_.end(), i) - pos_.begin());
}

uint64_t SparseBitVector::select1(uint64_t j) const {
    if (j == 0 || j > pos_.size()) throw std::out_of_range("SparseBitVector::select1: ordinal out of range");
    return pos_[j - 1];
}

void SparseBitVector::save(std::ostream& out) const {
    io::put_magic(out, "RSV1");
    io::put_u16(out, 1);
    io::put_u64(out, n_);
    io::put_u64_vec(out, pos_);
}

void SparseBitVector::load(std::istream& in) {
    io::check_magic(in, "RSV1", "SparseBitVector");
    uint16_t ver = io::get_u16(in);
    if (ver != 1) throw std::runtime_error("SparseBitVector: unsupported version");
    n_ = io::get_u64(in);
    pos_ = io::get_u64_vec(in);
}

}  // namespace rboss
