#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rboss/bitvector.hpp"
#include "rboss/bp_tree.hpp"
#include "rboss/read_set.hpp"
#include "rboss/suffix.hpp"
#include "rboss/symbol_sequence.hpp"

namespace rboss {

// A variable-order dBG node: rows [lo..hi] of the label matrix, all sharing
// the same length-`order` label suffix. Solid handles at order k-1 are
// singletons.
struct VoNode {
    uint64_t lo = 1, hi = 0;  // empty when lo > hi
    uint32_t order = 0;

    bool empty() const { return lo > hi; }
    uint64_t width() const { return empty() ? 0 : hi - lo + 1; }
    bool operator==(const VoNode& o) const { return lo == o.lo && hi == o.hi && order == o.order; }
};

struct NodeClass {
    bool solid = false;
    bool linker = false;
    bool p_node = false;
    bool s_node = false;
};

class LcsArray;  // vo_baseline.hpp

// The queryable index: edge sequence E (with duplicate-target flags folded
// into the alphabet), node boundary bitmap B, cumulative symbol counts C,
// solid/p-node/non-extensible bitmaps, and the overlap tree T'.
//
// Rows are 1-based and ordered by reverse-lexicographic node label; leaf j
// of T' corresponds to row j. All queries are const and thread-safe.
class RBossIndex {
public:
    RBossIndex();
    ~RBossIndex();
    RBossIndex(RBossIndex&&) noexcept;
    RBossIndex& operator=(RBossIndex&&) noexcept;
    RBossIndex(const RBossIndex&) = delete;
    RBossIndex& operator=(const RBossIndex&) = delete;

    // --- parameters and sizes ---
    uint32_t k() const { return k_; }
    uint32_t m() const { return m_; }
    uint64_t num_reads() const { return r_; }
    uint64_t read_len() const { return z_; }
    uint64_t num_rows() const { return n_; }
    uint64_t num_edges() const { return e_; }
    uint64_t num_solid() const { return solid_.ones(); }
    uint64_t num_linker() const { return n_ - solid_.ones(); }

    const BpTree& tree() const { return tree_; }
    const BitVector& solid_bits() const { return solid_; }
    const BitVector& pnode_bits() const { return pnode_; }
    const SparseBitVector& nonextensible_bits() const { return nonext_; }
    bool has_lcs() const { return lcs_ != nullptr; }
    const LcsArray& lcs() const;
    bool has_rc_perm() const { return !rc_perm_.empty(); }

    // --- edge layer ---
    uint64_t edge_begin(uint64_t row) const;  // first position of row's edges in E
    uint64_t edge_end(uint64_t row) const;    // last position
    uint8_t edge_symbol(uint64_t pos) const;  // 1..5
    bool edge_flagged(uint64_t pos) const;    // duplicate-target flag
    uint64_t edge_row(uint64_t pos) const;    // row owning an E position

    // --- BOSS navigation ---
    uint64_t outdegree(uint64_t row) const;
    uint64_t traversable_outdegree(uint64_t row) const;  // excluding '$'
    bool has_dollar_edge(uint64_t row) const;
    std::vector<uint8_t> out_symbols(uint64_t row) const;              // raw, sorted
    std::vector<uint8_t> traversable_out_symbols(uint64_t row) const;  // DNA only
    // Follow the edge labeled c (DNA); absent edge -> nullopt; '$' -> error.
    std::optional<uint64_t> forward(uint64_t row, uint8_t c) const;
    // One step against the edges: the canonical predecessor and its last symbol.
    struct BackStep {
        uint64_t row;
        uint8_t sym;
    };
    std::optional<BackStep> backward_step(uint64_t row) const;
    uint64_t indegree(uint64_t row) const;
    std::vector<uint64_t> backward(uint64_t row) const;  // all predecessors

    uint8_t last_symbol(uint64_t row) const;  // final label symbol, from C
    std::vector<uint8_t> label(uint64_t row) const;  // padded (k-1)-label, ranks
    std::string label_str(uint64_t row) const;
    uint32_t llabel_len(uint64_t row) const;  // label length without '$' padding

    // First E position within the edge span of rows [row_lo..row_hi] whose
    // symbol is c (flag ignored; c may be '$').
    std::optional<uint64_t> find_edge_in_rows(uint64_t row_lo, uint64_t row_hi, uint8_t c) const;

    // Rows whose labels are suffixed by q (DNA ranks), |q| <= k-1.
    VoNode backwardsearch(const std::vector<uint8_t>& q) const;
    // One LF step: from rows-ending-p to rows-ending-p*c.
    VoNode lf_step(const VoNode& range, uint8_t c) const;

    NodeClass classify(uint64_t row) const;
    bool is_solid(uint64_t row) const { return solid_.get(row); }
    bool is_pnode(uint64_t row) const { return pnode_.get(row); }

    // Solid rows within [lo..hi], ascending.
    std::vector<uint64_t> solids_in_range(uint64_t lo, uint64_t hi) const;

    // Row of the reverse-complement label of a solid row. Uses the stored
    // permutation when present, otherwise extract + backwardsearch.
    uint64_t rc_node(uint64_t row) const;
    uint64_t rc_node_via_search(uint64_t row) const;

    // Row holding the (k-1)-prefix of R* member j (0-based member index).
    uint64_t read_prefix_row(uint64_t member) const { return read_prefix_row_[member]; }

    // --- assembler support ---
    void set_nonextensible(SparseBitVector n);
    bool is_nonextensible(uint64_t row) const { return nonext_.get(row); }

    // --- persistence ---
    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static RBossIndex load(std::istream& in);
    static RBossIndex load_file(const std::string& path);

    struct ComponentSizes {
        size_t edges, boundary, solid, pnode, nonext, tree, lcs, rc_perm, total;
    };
    ComponentSizes component_sizes() const;

    friend RBossIndex build_index(const ReadSet& rs, const BuildConfig& cfg);
    friend bool index_equal(const RBossIndex& a, const RBossIndex& b);

private:
    uint32_t k_ = 0, m_ = 0;
    uint64_t r_ = 0, z_ = 0, n_ = 0, e_ = 0;
    SymbolSequence edges_;  // alphabet 9: 1='$', 2..5 plain acgt, 6..9 flagged acgt
    BitVector last_;        // B
    std::array<uint64_t, 8> c_{};  // C[1..6]; rows ending with rank < c
    BitVector solid_;              // S
    BitVector pnode_;              // P
    SparseBitVector nonext_;       // N, filled by the assembler
    BpTree tree_;                  // T'
    std::array<uint8_t, 8> short_linker_{};  // row C[c]+1 is the llabel-length-1 linker for c
    std::vector<uint64_t> read_prefix_row_;  // 2r entries
    std::unique_ptr<LcsArray> lcs_;          // optional
    std::vector<uint64_t> rc_perm_;          // optional, over solid ranks (1-based rows stored)

    uint64_t rank_any(uint8_t c, uint64_t pos) const;  // flagged + unflagged
};

RBossIndex build_index(const ReadSet& rs, const BuildConfig& cfg);
bool index_equal(const RBossIndex& a, const RBossIndex& b);

}  // namespace rboss
