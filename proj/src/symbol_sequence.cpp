#include "rboss/symbol_sequence.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

#include "rboss/io_util.hpp"

namespace rboss {

SymbolSequence::SymbolSequence(const std::vector<uint8_t>& symbols, uint8_t sigma) {
    if (sigma < 1 || sigma > 16) throw std::invalid_argument("SymbolSequence: sigma must be in [1..16]");
    sigma_ = sigma;
    n_ = symbols.size();
    depth_ = sigma <= 2 ? 1 : static_cast<uint8_t>(std::bit_width(static_cast<unsigned>(sigma - 1)));
    levels_.reserve(depth_);

    // Level by level: emit the current code bit, then regroup elements by their
    // (l+1)-bit code prefix so node intervals stay contiguous on the next level.
    std::vector<uint8_t> cur(symbols), next(n_);
    for (uint8_t l = 0; l < depth_; ++l) {
        const uint8_t shift = static_cast<uint8_t>(depth_ - 1 - l);
        std::vector<bool> bits(n_);
        for (uint64_t i = 0; i < n_; ++i) {
            uint8_t code = static_cast<uint8_t>(cur[i] - 1);
            if (code >= sigma) throw std::invalid_argument("SymbolSequence: symbol out of alphabet");
            bits[i] = (code >> shift) & 1u;
        }
        levels_.emplace_back(bits);
        if (l + 1 == depth_) break;
        std::vector<std::vector<uint8_t>> buckets(1u << (l + 1));
        for (uint64_t i = 0; i < n_; ++i) {
            uint8_t prefix = static_cast<uint8_t>((cur[i] - 1) >> shift);
            buckets[prefix].push_back(cur[i]);
        }
        uint64_t w = 0;
        for (auto& bk : buckets)
            for (uint8_t s : bk) next[w++] = s;
        cur.swap(next);
    }
}

uint8_t SymbolSequence::access(uint64_t i) const {
    if (i == 0 || i > n_) throw std::out_of_range("SymbolSequence::access");
    uint64_t a = 0, b = n_;  // node interval [a, b), 0-based
    uint64_t q = i - 1;      // local offset within the node
    uint8_t code = 0;
    for (uint8_t l = 0; l < depth_; ++l) {
        const BitVector& lv = levels_[l];
        bool bit = lv.get(a + q + 1);
        uint64_t z_a = lv.rank1(a), z_q = lv.rank1(a + q), z_b = lv.rank1(b);
        uint64_t ones_before = z_q - z_a;
        uint64_t node_ones = z_b - z_a;
        uint64_t node_zeros = (b - a) - node_ones;
        code = static_cast<uint8_t>((code << 1) | (bit ? 1 : 0));
        if (!bit) {
            q = q - ones_before;
            b = a + node_zeros;
        } else {
            q = ones_before;
            a = a + node_zeros;
        }
    }
    return static_cast<uint8_t>(code + 1);
}

uint64_t SymbolSequence::rank(uint8_t c, uint64_t i) const {
    if (c < 1 || c > sigma_) throw std::out_of_range("SymbolSequence::rank: bad symbol");
    if (i > n_) throw std::out_of_range("SymbolSequence::rank: position past end");
    uint64_t a = 0, b = n_, p = i;
    uint8_t code = static_cast<uint8_t>(c - 1);
    for (uint8_t l = 0; l < depth_; ++l) {
        const BitVector& lv = levels_[l];
        bool bit = (code >> (depth_ - 1 - l)) & 1u;
        uint64_t o_a = lv.rank1(a), o_p = lv.rank1(a + p), o_b = lv.rank1(b);
        uint64_t node_ones = o_b - o_a;
        uint64_t node_zeros = (b - a) - node_ones;
        if (!bit) {
            p = (p - (o_p - o_a));
            b = a + node_zeros;
        } else {
            p = o_p - o_a;
            a = a + node_zeros;
        }
    }
    return p;
}

uint64_t SymbolSequence::select(uint8_t c, uint64_t j) const {
    if (c < 1 || c > sigma_) throw std::out_of_range("SymbolSequence::select: bad symbol");
    if (j == 0 || j > rank(c, n_)) throw std::out_of_range("SymbolSequence::select: ordinal out of range");
    // Descend to record the node interval on each level, then ascend.
    uint8_t code = static_cast<uint8_t>(c - 1);
    std::vector<uint64_t> as(depth_), bs(depth_);
    uint64_t a = 0, b = n_;
    for (uint8_t l = 0; l < depth_; ++l) {
        as[l] = a;
        bs[l] = b;
        const BitVector& lv = levels_[l];
        bool bit = (code >> (depth_ - 1 - l)) & 1u;
        uint64_t o_a = lv.rank1(a), o_b = lv.rank1(b);
        uint64_t node_ones = o_b - o_a;
        uint64_t node_zeros = (b - a) - node_ones;
        if (!bit) b = a + node_zeros;
        else a = a + node_zeros;
    }
    uint64_t q = j - 1;  // local 0-based offset at leaf level
    for (int l = depth_ - 1; l >= 0; --l) {
        const BitVector& lv = levels_[l];
        bool bit = (code >> (depth_ - 1 - l)) & 1u;
        uint64_t before = lv.rank(bit, as[l]);  // occurrences of bit before node start
        uint64_t gpos = lv.select(bit, before + q + 1);
        q = gpos - 1 - as[l];
    }
    return q + 1;
}

void SymbolSequence::save(std::ostream& out) const {
    io::put_magic(out, "RSQ1");
    io::put_u16(out, 1);
    io::put_u64(out, n_);
    out.put(static_cast<char>(sigma_));
    out.put(static_cast<char>(depth_));
    for (const auto& lv : levels_) lv.save(out);
}

void SymbolSequence::load(std::istream& in) {
    io::check_magic(in, "RSQ1", "SymbolSequence");
    uint16_t ver = io::get_u16(in);
    if (ver != 1) throw std::runtime_error("SymbolSequence: unsupported version");
    n_ = io::get_u64(in);
    sigma_ = static_cast<uint8_t>(in.get());
    depth_ = static_cast<uint8_t>(in.get());
    levels_.assign(depth_, BitVector());
    for (auto& lv : levels_) lv.load(in);
}

}  // namespace rboss
