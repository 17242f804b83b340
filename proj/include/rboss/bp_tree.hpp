#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rboss/bitvector.hpp"

namespace rboss {

// Ordinal tree stored as balanced parentheses ('(' = 1, ')' = 0).
//
// A node is identified by the 1-based position of its open parenthesis.
// Excess searches go through a block-min index, so parent/close are
// O(log n) worst case. Leaves are numbered 1..num_leaves left to right;
// leafrank/leafselect translate between leaf ordinals and positions.
class BpTree {
public:
    static constexpr uint64_t npos = 0;  // "no node"

    BpTree() = default;
    explicit BpTree(const std::vector<bool>& parens);

    uint64_t root() const { return 1; }
    uint64_t size_bits() const { return parens_.size(); }
    uint64_t num_nodes() const { return parens_.ones(); }
    uint64_t num_leaves() const { return leaf_open_.ones(); }
    uint64_t num_internal() const { return num_nodes() - num_leaves(); }

    bool is_open(uint64_t v) const { return parens_.get(v); }
    bool is_leaf(uint64_t v) const;

    // Position of the matching close parenthesis.
    uint64_t close(uint64_t v) const;
    // Parent node; throws for the root.
    uint64_t parent(uint64_t v) const;
    // Leftmost child, or npos if v is a leaf.
    uint64_t first_child(uint64_t v) const;
    // Next sibling, or npos.
    uint64_t next_sibling(uint64_t v) const;
    // Number of children (proportional to the count).
    uint64_t num_children(uint64_t v) const;
    // Depth of v; the root has depth 1.
    uint64_t depth(uint64_t v) const;

    // Ordinal (1-based) of the leftmost leaf in v's subtree.
    uint64_t leaf_rank(uint64_t v) const;
    // Position of the j-th leaf.
    uint64_t leaf_select(uint64_t j) const;
    // Leaves strictly before position v.
    uint64_t leaves_before(uint64_t v) const;
    // [first, last] leaf ordinals covered by v's subtree.
    std::pair<uint64_t, uint64_t> leaf_interval(uint64_t v) const;

    void save(std::ostream& out) const;
    void load(std::istream& in);

    bool operator==(const BpTree& other) const { return parens_ == other.parens_; }

    const BitVector& bits() const { return parens_; }
    size_t byte_size() const { return parens_.byte_size() + leaf_open_.byte_size() + block_min_.size() * 4 + seg_min_.size() * 4; }

private:
    void build_support();
    int64_t excess(uint64_t i) const;  // excess of prefix [1..i], excess(0) = 0
    // smallest j > i with excess(j) == target (target below running excess)
    uint64_t fwd_search(uint64_t i, int64_t target) const;
    // largest j < i (possibly 0) with excess(j) == target
    uint64_t bwd_search(uint64_t i, int64_t target) const;

    BitVector parens_;
    BitVector leaf_open_;
    std::vector<int32_t> block_min_;  // absolute min excess per 512-bit block
    std::vector<int32_t> seg_min_;    // segment tree over block_min_
    uint64_t seg_leaves_ = 0;
};

}  // namespace rboss
