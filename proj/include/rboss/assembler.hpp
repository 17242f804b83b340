#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rboss/index.hpp"

namespace rboss {

struct Contig {
    std::string sequence;   // canonical: min(seq, rc(seq))
    uint64_t seed = 0;      // originating row
    uint32_t left_len = 0;  // symbols appended left of the seed label
    uint32_t right_len = 0;
};

struct AssemblyStats {
    uint64_t contigs = 0;
    uint64_t total_len = 0;
    uint64_t max_len = 0;
    double mean_len = 0.0;
    uint64_t n50 = 0;
};

struct AssembleOptions {
    uint32_t min_len = 0;  // 0 = default k-1
    uint32_t threads = 1;
};

// Right-extensibility: a non-s-node is RE iff it has exactly one traversable
// edge; an s-node is RE iff the batch walk over itself and its contained
// linkers collapses onto a single solid node within (k-1)-m rounds.
bool is_right_extensible(const RBossIndex& idx, uint64_t row);
bool is_left_extensible(const RBossIndex& idx, uint64_t row);

// The unique continuation of an extensible row: the reached solid row plus
// the edge symbols consumed getting there.
struct Continuation {
    uint64_t next = 0;
    std::vector<uint8_t> symbols;
};
std::optional<Continuation> right_continuation(const RBossIndex& idx, uint64_t row);

// Non-extensible marking, reference implementation: per solid node, check
// (i) more than one traversable edge, (ii) conflicting symbols among the
// contained linkers, (iii) the node's own edge conflicting with the linkers,
// (iv) two or more irreducible forward overlaps.
SparseBitVector mark_non_extensible_direct(const RBossIndex& idx);

// Same marking derived from a DFS over T' (cases i-iii batch-marked along
// the tree, case iv shared with the direct path). Must agree bit for bit.
SparseBitVector mark_non_extensible_dfs(const RBossIndex& idx);

// Spells maximal paths from every non-extensible seed (plus p-nodes without
// backward overlaps, so source reads are kept). Deduplicated by canonical
// sequence, deterministic order.
std::vector<Contig> spell_maximal_paths(const RBossIndex& idx, const AssembleOptions& opt = {});

// Fixed-order unitigs over the same index: unary dBG paths only, no overlap
// jumps. Baseline for contig-length comparisons.
std::vector<Contig> spell_unitigs(const RBossIndex& idx, uint32_t min_len = 0);

AssemblyStats assembly_stats(const std::vector<Contig>& contigs);

void write_contigs(const std::vector<Contig>& contigs, const std::string& path);

}  // namespace rboss
