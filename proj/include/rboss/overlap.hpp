#pragma once

#include <cstdint>
#include <vector>

#include "rboss/index.hpp"

namespace rboss {

// A linker contained by the query node, carrying the witnessed overlap length.
struct LinkerRef {
    uint64_t row;
    uint32_t len;  // llabel length, in [m..k-2]
};

struct Overlap {
    uint64_t target;  // solid row whose prefix matches the query's suffix
    uint32_t len;     // overlap length o, m <= o <= k-2
    bool operator==(const Overlap& o) const { return target == o.target && len == o.len; }
};

struct WeightedOverlap {
    uint64_t target;
    uint32_t len;
    uint32_t weight = 0;  // confirmed unique transitive witnesses (irreducible only)
    bool irreducible = false;
};

// Constant-time nextcontained over T' (leaf hop, parent, leftmost-child leaf).
// Returns the linker row whose llabel is the longest valid suffix of row's
// label, or 0 when no contained linker of length >= m exists.
uint64_t nextcontained(const RBossIndex& idx, uint64_t row);

// Chain of nextcontained calls, longest llabel first. O(k) tree operations.
std::vector<uint64_t> buildL(const RBossIndex& idx, uint64_t row);

// buildL with llabel lengths attached (costs O(k log sigma) per element).
std::vector<LinkerRef> buildL_with_lengths(const RBossIndex& idx, uint64_t row);

// Forward overlaps of a solid row: p-node targets whose prefix matches a
// suffix of the row's label, maximum length per target, self and the row's
// own reverse complement excluded.
std::vector<Overlap> foverlaps(const RBossIndex& idx, uint64_t row);

// Backward overlaps via the reverse complement (targets mapped back).
std::vector<Overlap> boverlaps(const RBossIndex& idx, uint64_t row);

// foverlaps split into irreducible (reached in the initial range) and
// transitive (reached during the extension) overlaps; irreducible targets
// carry the count of surviving weighting witnesses from T'.
std::vector<WeightedOverlap> weighted_foverlaps(const RBossIndex& idx, uint64_t row);

// boverlaps counterpart of weighted_foverlaps.
std::vector<WeightedOverlap> weighted_boverlaps(const RBossIndex& idx, uint64_t row);

}  // namespace rboss
