#include "rboss/bp_tree.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "rboss/io_util.hpp"

namespace rboss {

namespace {
constexpr uint64_t kBlockBits = 512;
}

BpTree::BpTree(const std::vector<bool>& parens) : parens_(parens) {
    build_support();
}

void BpTree::build_support() {
    const uint64_t n = parens_.size();
    if (n == 0) return;
    if (n % 2 != 0) throw std::invalid_argument("BpTree: odd number of parentheses");

    std::vector<bool> lo(n, false);
    int64_t exc = 0;
    const uint64_t nblocks = (n + kBlockBits - 1) / kBlockBits;
    block_min_.assign(nblocks, std::numeric_limits<int32_t>::max());
    for (uint64_t i = 1; i <= n; ++i) {
        bool open = parens_.get(i);
        exc += open ? 1 : -1;
        if (exc < 0) throw std::invalid_argument("BpTree: unbalanced (negative excess)");
        if (open && i < n && !parens_.get(i + 1)) lo[i - 1] = true;
        uint64_t b = (i - 1) / kBlockBits;
        block_min_[b] = std::min(block_min_[b], static_cast<int32_t>(exc));
    }
    if (exc != 0) throw std::invalid_argument("BpTree: unbalanced (nonzero final excess)");
    leaf_open_ = BitVector(lo);

    // segment tree (1-based heap layout) for range-min over blocks
    seg_leaves_ = 1;
    while (seg_leaves_ < nblocks) seg_leaves_ <<= 1;
    seg_min_.assign(2 * seg_leaves_, std::numeric_limits<int32_t>::max());
    for (uint64_t b = 0; b < nblocks; ++b) seg_min_[seg_leaves_ + b] = block_min_[b];
    for (uint64_t i = seg_leaves_ - 1; i >= 1; --i)
        seg_min_[i] = std::min(seg_min_[2 * i], seg_min_[2 * i + 1]);
}

int64_t BpTree::excess(uint64_t i) const {
    return 2 * static_cast<int64_t>(parens_.rank1(i)) - static_cast<int64_t>(i);
}

bool BpTree::is_leaf(uint64_t v) const {
    if (!parens_.get(v)) throw std::invalid_argument("BpTree: not an open parenthesis");
    return !parens_.get(v + 1);
}

uint64_t BpTree::fwd_search(uint64_t i, int64_t target) const {
    // Block b covers positions [b*512+1 .. (b+1)*512].
    const uint64_t n = parens_.size();
    const uint64_t nblocks = block_min_.size();
    int64_t exc = excess(i);
    const uint64_t cur_block = i / kBlockBits;  // block of position i+1
    uint64_t block_end = std::min(n, (cur_block + 1) * kBlockBits);
    for (uint64_t j = i + 1; j <= block_end; ++j) {
        exc += parens_.get(j) ? 1 : -1;
        if (exc == target) return j;
    }
    // leftmost block after cur_block whose min excess reaches the target
    const uint64_t lo_block = cur_block + 1;
    uint64_t found = nblocks;
    std::vector<std::tuple<uint64_t, uint64_t, uint64_t>> stack;
    stack.emplace_back(1, 0, seg_leaves_ - 1);
    while (!stack.empty()) {
        auto [nd, l, r] = stack.back();
        stack.pop_back();
        if (r < lo_block || l >= nblocks || seg_min_[nd] > target) continue;
        if (l == r) {
            found = l;
            break;
        }
        uint64_t mid = (l + r) / 2;
        stack.emplace_back(2 * nd + 1, mid + 1, r);  // pushed first, popped last
        stack.emplace_back(2 * nd, l, mid);
    }
    if (found == nblocks) throw std::logic_error("BpTree::fwd_search: no match");
    uint64_t start = found * kBlockBits;
    exc = excess(start);
    uint64_t lim = std::min(n, start + kBlockBits);
    for (uint64_t j = start + 1; j <= lim; ++j) {
        exc += parens_.get(j) ? 1 : -1;
        if (exc == target) return j;
    }
    throw std::logic_error("BpTree::fwd_search: block scan failed");
}

uint64_t BpTree::bwd_search(uint64_t i, int64_t target) const {
    // Largest j < i with excess(j) == target; excess(0) == 0 is a valid answer.
    if (i == 0) throw std::logic_error("BpTree::bwd_search: empty range");
    int64_t exc = excess(i - 1);
    uint64_t j = i - 1;
    const uint64_t bstart = (j == 0) ? 0 : ((j - 1) / kBlockBits) * kBlockBits;
    while (j > bstart) {
        if (exc == target) return j;
        exc += parens_.get(j) ? -1 : 1;  // excess(j-1)
        --j;
    }
    if (bstart == 0) {
        if (target == 0) return 0;
        throw std::logic_error("BpTree::bwd_search: no match");
    }
    // rightmost block before the current one whose min excess reaches the target
    const uint64_t hi_block = bstart / kBlockBits - 1;
    uint64_t found = std::numeric_limits<uint64_t>::max();
    std::vector<std::tuple<uint64_t, uint64_t, uint64_t>> stack;
    stack.emplace_back(1, 0, seg_leaves_ - 1);
    while (!stack.empty()) {
        auto [nd, l, r] = stack.back();
        stack.pop_back();
        if (l > hi_block || seg_min_[nd] > target) continue;
        if (l == r) {
            found = l;
            break;
        }
        uint64_t mid = (l + r) / 2;
        stack.emplace_back(2 * nd, l, mid);  // pushed first, popped last
        stack.emplace_back(2 * nd + 1, mid + 1, r);
    }
    if (found == std::numeric_limits<uint64_t>::max()) {
        if (target == 0) return 0;
        throw std::logic_error("BpTree::bwd_search: no match");
    }
    uint64_t start = found * kBlockBits;
    uint64_t lim = std::min(parens_.size(), start + kBlockBits);
    exc = excess(lim);
    for (j = lim; j > start; --j) {
        if (exc == target) return j;
        exc += parens_.get(j) ? -1 : 1;
    }
    throw std::logic_error("BpTree::bwd_search: block scan failed");
}

uint64_t BpTree::close(uint64_t v) const {
    if (!parens_.get(v)) throw std::invalid_argument("BpTree::close: not an open parenthesis");
    return fwd_search(v, excess(v) - 1);
}

uint64_t BpTree::parent(uint64_t v) const {
    if (!parens_.get(v)) throw std::invalid_argument("BpTree::parent: not an open parenthesis");
    if (v == root()) throw std::invalid_argument("BpTree::parent: root has no parent");
    return bwd_search(v, excess(v) - 2) + 1;
}

uint64_t BpTree::first_child(uint64_t v) const {
    if (!parens_.get(v)) throw std::invalid_argument("BpTree::first_child: not an open parenthesis");
    return parens_.get(v + 1) ? v + 1 : npos;
}

uint64_t BpTree::next_sibling(uint64_t v) const {
    uint64_t c = close(v);
    if (c + 1 <= parens_.size() && parens_.get(c + 1)) return c + 1;
    return npos;
}

uint64_t BpTree::num_children(uint64_t v) const {
    uint64_t cnt = 0;
    uint64_t c = first_child(v);
    while (c != npos) {
        ++cnt;
        c = next_sibling(c);
    }
    return cnt;
}

uint64_t BpTree::depth(uint64_t v) const {
    if (!parens_.get(v)) throw std::invalid_argument("BpTree::depth: not an open parenthesis");
    return static_cast<uint64_t>(excess(v));
}

uint64_t BpTree::leaf_rank(uint64_t v) const {
    if (!parens_.get(v)) throw std::invalid_argument("BpTree::leaf_rank: not an open parenthesis");
    return leaf_open_.rank1(v - 1) + 1;
}

uint64_t BpTree::leaf_select(uint64_t j) const { return leaf_open_.select1(j); }

uint64_t BpTree::leaves_before(uint64_t v) const { return leaf_open_.rank1(v - 1); }

std::pair<uint64_t, uint64_t> BpTree::leaf_interval(uint64_t v) const {
    uint64_t first = leaf_rank(v);
    uint64_t last = leaf_open_.rank1(close(v));
    return {first, last};
}

void BpTree::save(std::ostream& out) const {
    io::put_magic(out, "RBP1");
    io::put_u16(out, 1);
    parens_.save(out);
}

void BpTree::load(std::istream& in) {
    io::check_magic(in, "RBP1", "BpTree");
    uint16_t ver = io::get_u16(in);
    if (ver != 1) throw std::runtime_error("BpTree: unsupported version");
    parens_.load(in);
    build_support();
}

}  // namespace rboss
