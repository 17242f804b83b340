#include "rboss/vo_baseline.hpp"

#include <bit>
#include <stdexcept>

#include "rboss/dna.hpp"
#include "rboss/io_util.hpp"

namespace rboss {

LcsArray::LcsArray(const std::vector<uint32_t>& values, uint32_t max_value) {
    n_ = values.size();
    max_value_ = max_value;
    depth_ = max_value == 0 ? 1 : static_cast<uint8_t>(std::bit_width(max_value));
    std::vector<uint32_t> cur(values), next(n_);
    for (uint32_t v : cur)
        if (v > max_value) throw std::invalid_argument("LcsArray: value above cap");
    levels_.reserve(depth_);
    for (uint8_t l = 0; l < depth_; ++l) {
        const uint8_t shift = static_cast<uint8_t>(depth_ - 1 - l);
        std::vector<bool> bits(n_);
        for (uint64_t i = 0; i < n_; ++i) bits[i] = (cur[i] >> shift) & 1u;
        levels_.emplace_back(bits);
        if (l + 1 == depth_) break;
        std::vector<std::vector<uint32_t>> buckets(1u << (l + 1));
        for (uint64_t i = 0; i < n_; ++i) buckets[cur[i] >> shift].push_back(cur[i]);
        uint64_t w = 0;
        for (auto& bk : buckets)
            for (uint32_t v : bk) next[w++] = v;
        cur.swap(next);
    }
}

uint32_t LcsArray::access(uint64_t i) const {
    if (i == 0 || i > n_) throw std::out_of_range("LcsArray::access");
    uint64_t a = 0, b = n_, q = i - 1;
    uint32_t code = 0;
    for (uint8_t l = 0; l < depth_; ++l) {
        const BitVector& lv = levels_[l];
        uint64_t ra = lv.rank1(a);
        bool bit = lv.get(a + q + 1);
        uint64_t ones_before = lv.rank1(a + q) - ra;
        uint64_t node_ones = lv.rank1(b) - ra;
        uint64_t node_zeros = (b - a) - node_ones;
        code = (code << 1) | (bit ? 1u : 0u);
        if (!bit) {
            q -= ones_before;
            b = a + node_zeros;
        } else {
            q = ones_before;
            a = a + node_zeros;
        }
    }
    return code;
}

namespace {

struct PathLevel {
    uint64_t a;  // node start
    bool bit;    // direction taken from this level
};

// Maps "the j-th occurrence of `bit` inside the node at level l" to a global
// 1-based position, ascending through the recorded path.
uint64_t map_up(const std::vector<BitVector>& levels, const std::vector<PathLevel>& path, int l,
                bool bit, uint64_t j) {
    const BitVector& lv = levels[l];
    uint64_t before = bit ? lv.rank1(path[l].a) : path[l].a - lv.rank1(path[l].a);
    uint64_t gpos = bit ? lv.select1(before + j) : lv.select0(before + j);
    uint64_t p = gpos - 1 - path[l].a;
    for (int ll = l - 1; ll >= 0; --ll) {
        const BitVector& lv2 = levels[ll];
        bool b2 = path[ll].bit;
        uint64_t before2 = b2 ? lv2.rank1(path[ll].a) : path[ll].a - lv2.rank1(path[ll].a);
        uint64_t g = b2 ? lv2.select1(before2 + p + 1) : lv2.select0(before2 + p + 1);
        p = g - 1 - path[ll].a;
    }
    return p + 1;
}

}  // namespace

uint64_t LcsArray::prev_less(uint64_t i, uint32_t t) const {
    if (i == 0 || n_ == 0 || t == 0) return 0;
    if (i > n_) i = n_;
    const uint64_t full = 1ull << depth_;
    if (t >= full) return i;
    uint64_t a = 0, b = n_, vlo = 0, w = full;
    uint64_t q = i - 1;  // local inclusive upper bound
    uint64_t best = 0;
    std::vector<PathLevel> path(depth_);
    for (uint8_t l = 0; l < depth_; ++l) {
        const BitVector& lv = levels_[l];
        uint64_t ra = lv.rank1(a);
        uint64_t ones = lv.rank1(a + q + 1) - ra;  // ones among the first q+1 elements
        uint64_t zeros = (q + 1) - ones;
        uint64_t node_ones = lv.rank1(b) - ra;
        uint64_t node_zeros = (b - a) - node_ones;
        uint64_t wl = w >> 1;
        path[l].a = a;
        if (t <= vlo + wl) {
            // right child entirely >= t
            if (zeros == 0) return best;
            if (t == vlo + wl) {
                // left child entirely < t: rightmost eligible is its last element <= bound
                uint64_t cand = map_up(levels_, path, l, false, zeros);
                return std::max(best, cand);
            }
            path[l].bit = false;
            q = zeros - 1;
            b = a + node_zeros;
            w = wl;
        } else {
            // left child entirely < t: remember its rightmost element, then descend right
            if (zeros > 0) {
                uint64_t cand = map_up(levels_, path, l, false, zeros);
                best = std::max(best, cand);
            }
            if (ones == 0) return best;
            path[l].bit = true;
            q = ones - 1;
            a = a + node_zeros;
            vlo += wl;
            w = wl;
        }
    }
    return best;
}

uint64_t LcsArray::next_less(uint64_t i, uint32_t t) const {
    if (n_ == 0 || t == 0 || i > n_) return 0;
    if (i == 0) i = 1;
    const uint64_t full = 1ull << depth_;
    if (t >= full) return i;
    uint64_t a = 0, b = n_, vlo = 0, w = full;
    uint64_t q = i - 1;  // local inclusive lower bound (0-based)
    uint64_t best = 0;   // 0 = none yet
    std::vector<PathLevel> path(depth_);
    for (uint8_t l = 0; l < depth_; ++l) {
        const BitVector& lv = levels_[l];
        uint64_t ra = lv.rank1(a);
        uint64_t ones_lb = lv.rank1(a + q) - ra;  // ones among the first q elements
        uint64_t zeros_lb = q - ones_lb;
        uint64_t node_ones = lv.rank1(b) - ra;
        uint64_t node_zeros = (b - a) - node_ones;
        uint64_t wl = w >> 1;
        path[l].a = a;
        if (t <= vlo + wl) {
            if (zeros_lb >= node_zeros) return best;  // no left element at or after the bound
            if (t == vlo + wl) {
                uint64_t cand = map_up(levels_, path, l, false, zeros_lb + 1);
                return best == 0 ? cand : std::min(best, cand);
            }
            path[l].bit = false;
            q = zeros_lb;
            b = a + node_zeros;
            w = wl;
        } else {
            if (zeros_lb < node_zeros) {
                uint64_t cand = map_up(levels_, path, l, false, zeros_lb + 1);
                if (best == 0 || cand < best) best = cand;
            }
            if (ones_lb >= node_ones) return best;
            path[l].bit = true;
            q = ones_lb;
            a = a + node_zeros;
            vlo += wl;
            w = wl;
        }
    }
    return best;
}

void LcsArray::save(std::ostream& out) const {
    io::put_magic(out, "RLC1");
    io::put_u16(out, 1);
    io::put_u64(out, n_);
    io::put_u32(out, max_value_);
    out.put(static_cast<char>(depth_));
    for (const auto& lv : levels_) lv.save(out);
}

void LcsArray::load(std::istream& in) {
    io::check_magic(in, "RLC1", "LcsArray");
    uint16_t ver = io::get_u16(in);
    if (ver != 1) throw std::runtime_error("LcsArray: unsupported version");
    n_ = io::get_u64(in);
    max_value_ = io::get_u32(in);
    depth_ = static_cast<uint8_t>(in.get());
    levels_.assign(depth_, BitVector());
    for (auto& lv : levels_) lv.load(in);
}

namespace vo {

VoNode shorter(const RBossIndex& idx, const VoNode& v, uint32_t k2) {
    if (k2 >= v.order) throw std::invalid_argument("shorter: k2 must be below the node order");
    const LcsArray& lcs = idx.lcs();
    VoNode out;
    out.order = k2;
    uint64_t p = lcs.prev_less(v.lo, k2);
    out.lo = p == 0 ? 1 : p;
    uint64_t q = v.hi >= lcs.size() ? 0 : lcs.next_less(v.hi + 1, k2);
    out.hi = q == 0 ? idx.num_rows() : q - 1;
    return out;
}

std::vector<VoNode> longer(const RBossIndex& idx, const VoNode& v, uint32_t k2) {
    if (k2 <= v.order) throw std::invalid_argument("longer: k2 must exceed the node order");
    if (k2 > idx.k() - 1) return {};
    const LcsArray& lcs = idx.lcs();
    std::vector<VoNode> out;
    uint64_t start = v.lo;
    while (start <= v.hi) {
        uint64_t q = start >= lcs.size() ? 0 : lcs.next_less(start + 1, k2);
        uint64_t end = (q == 0 || q - 1 > v.hi) ? v.hi : q - 1;
        out.push_back(VoNode{start, end, k2});
        start = end + 1;
    }
    return out;
}

std::optional<uint64_t> maxlen(const RBossIndex& idx, const VoNode& v, uint8_t c) {
    auto pos = idx.find_edge_in_rows(v.lo, v.hi, c);
    if (!pos) return std::nullopt;
    return idx.edge_row(*pos);
}

uint64_t nextcontained_lcs(const RBossIndex& idx, const VoNode& v, uint32_t m) {
    VoNode cur = v;
    if (cur.order < m) return 0;
    for (uint32_t d = cur.order - 1; d >= m; --d) {
        VoNode u = shorter(idx, cur, d);
        if (u.lo < cur.lo || u.hi > cur.hi) {
            uint64_t first = u.lo;
            if (!idx.is_solid(first) && idx.llabel_len(first) == d) return first;
            cur = u;
        } else {
            cur.order = d;
        }
        if (d == m) break;
    }
    return 0;
}

uint64_t nextcontained_lcs(const RBossIndex& idx, uint64_t row, uint32_t m) {
    VoNode v{row, row, idx.llabel_len(row)};
    return nextcontained_lcs(idx, v, m);
}

std::vector<uint64_t> buildL_lcs(const RBossIndex& idx, uint64_t row) {
    std::vector<uint64_t> out;
    uint64_t c = nextcontained_lcs(idx, row, idx.m());
    while (c != 0) {
        out.push_back(c);
        c = nextcontained_lcs(idx, c, idx.m());
    }
    return out;
}

}  // namespace vo

}  // namespace rboss
