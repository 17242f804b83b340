#include "rboss/overlap.hpp"

#include <algorithm>
#include <map>

#include "rboss/dna.hpp"

namespace rboss {

uint64_t nextcontained(const RBossIndex& idx, uint64_t row) {
    const BpTree& t = idx.tree();
    uint64_t leaf = t.leaf_select(row);
    uint64_t p = t.parent(leaf);
    if (t.first_child(p) == leaf) {
        if (p == t.root()) return 0;
        p = t.parent(p);
    }
    if (p == t.root()) return 0;
    uint64_t fc = t.first_child(p);
    return t.leaves_before(fc) + 1;
}

std::vector<uint64_t> buildL(const RBossIndex& idx, uint64_t row) {
    std::vector<uint64_t> out;
    uint64_t c = nextcontained(idx, row);
    while (c != 0) {
        out.push_back(c);
        c = nextcontained(idx, c);
    }
    return out;
}

std::vector<LinkerRef> buildL_with_lengths(const RBossIndex& idx, uint64_t row) {
    std::vector<LinkerRef> out;
    for (uint64_t r : buildL(idx, row)) out.push_back({r, idx.llabel_len(r)});
    return out;
}

namespace {

// Shared machinery of the overlap scans. Forward overlaps follow growing
// suffixes of rc(label(row)) starting from the smallest contained linker and
// report reverse complements of the rows reached; backward overlaps follow
// growing prefixes of label(row) from stage m and report the rows directly.
struct OverlapScan {
    uint64_t row = 0;
    uint64_t row_rc = 0;
    uint32_t start = 0;            // first stage = initial pattern length
    std::vector<uint8_t> pattern;  // symbols driving the LF extension
    bool map_rc = false;           // report rc_node(w) instead of w
    bool filter_pnode = false;     // drop targets that are not p-nodes
    VoNode initial;
    bool empty = true;
};

OverlapScan start_forward_scan(const RBossIndex& idx, uint64_t row) {
    OverlapScan s;
    s.row = row;
    s.map_rc = true;
    s.filter_pnode = true;
    std::vector<uint64_t> L = buildL(idx, row);
    if (L.empty()) return s;
    s.start = idx.llabel_len(L.back());
    s.pattern = reverse_complement_ranks(idx.label(row));
    s.row_rc = idx.rc_node(row);
    std::vector<uint8_t> q(s.pattern.begin(), s.pattern.begin() + s.start);
    s.initial = idx.backwardsearch(q);
    s.empty = s.initial.empty();
    return s;
}

OverlapScan start_backward_scan(const RBossIndex& idx, uint64_t row) {
    OverlapScan s;
    s.row = row;
    if (!idx.is_pnode(row)) return s;  // only p-node prefixes admit overlaps
    s.start = idx.m();
    s.pattern = idx.label(row);
    s.row_rc = idx.rc_node(row);
    std::vector<uint8_t> q(s.pattern.begin(), s.pattern.begin() + s.start);
    s.initial = idx.backwardsearch(q);
    s.empty = s.initial.empty();
    return s;
}

void collect_solids(const RBossIndex& idx, const OverlapScan& s, const VoNode& range, uint32_t o,
                    std::map<uint64_t, uint32_t>& best) {
    for (uint64_t w : idx.solids_in_range(range.lo, range.hi)) {
        if (w == s.row || w == s.row_rc) continue;  // self overlaps, both strands
        uint64_t target = s.map_rc ? idx.rc_node(w) : w;
        if (s.filter_pnode && !idx.is_pnode(target)) continue;
        auto [it, inserted] = best.emplace(target, o);
        if (!inserted && it->second < o) it->second = o;
    }
}

std::vector<Overlap> overlap_scan_run(const RBossIndex& idx, OverlapScan s) {
    std::vector<Overlap> out;
    if (s.empty) return out;
    std::map<uint64_t, uint32_t> best;
    VoNode range = s.initial;
    for (uint32_t o = s.start; o <= idx.k() - 2; ++o) {
        if (o > s.start) {
            range = idx.lf_step(range, s.pattern[o - 1]);
            if (range.empty()) break;
        }
        collect_solids(idx, s, range, o, best);
    }
    out.reserve(best.size());
    for (auto [target, o] : best) out.push_back({target, o});
    return out;
}

}  // namespace

std::vector<Overlap> foverlaps(const RBossIndex& idx, uint64_t row) {
    if (!idx.is_solid(row)) throw std::invalid_argument("foverlaps: row is not solid");
    return overlap_scan_run(idx, start_forward_scan(idx, row));
}

std::vector<Overlap> boverlaps(const RBossIndex& idx, uint64_t row) {
    if (!idx.is_solid(row)) throw std::invalid_argument("boverlaps: row is not solid");
    return overlap_scan_run(idx, start_backward_scan(idx, row));
}

namespace {

std::vector<WeightedOverlap> weighted_scan_run(const RBossIndex& idx, uint64_t row,
                                               const OverlapScan& s) {
    std::vector<WeightedOverlap> out;
    if (s.empty) return out;

    const BpTree& t = idx.tree();
    struct Witness {
        size_t owner;   // index into candidates
        VoNode shadow;  // leaf interval of the weighting node, narrowed by LF steps
        bool alive = true;
        bool confirmed = false;
    };
    struct Candidate {
        uint64_t w_row;    // row inside the initial range
        uint64_t target;   // rc of w_row
        uint32_t o;        // best length seen
        uint32_t initial_witnesses = 0;
        uint32_t confirmed_witnesses = 0;
        bool in_y = false;  // candidate irreducible
    };
    std::vector<Candidate> candidates;
    std::vector<Witness> witnesses;

    // Y: solid leaves of the initial range that are not leftmost children.
    // Their weighting nodes are the ancestors strictly inside the range with
    // at most two children; walking up stops at the first branching ancestor
    // or at the node covering the whole range.
    for (uint64_t w : idx.solids_in_range(s.initial.lo, s.initial.hi)) {
        if (w == s.row || w == s.row_rc) continue;
        uint64_t target = s.map_rc ? idx.rc_node(w) : w;
        if (s.filter_pnode && !idx.is_pnode(target)) continue;
        Candidate cand{w, target, s.start, 0, 0, false};
        uint64_t leaf = t.leaf_select(w);
        uint64_t par = t.parent(leaf);
        if (t.first_child(par) != leaf) {
            cand.in_y = true;
            uint64_t node = par;
            while (node != t.root()) {
                auto [il, ir] = t.leaf_interval(node);
                if (il <= s.initial.lo && ir >= s.initial.hi) break;  // covers the whole range
                if (t.num_children(node) > 2) break;
                witnesses.push_back({candidates.size(),
                                     VoNode{il, ir, s.start},
                                     true, false});
                ++cand.initial_witnesses;
                node = t.parent(node);
            }
        }
        candidates.push_back(cand);
    }

    // Checkpoints: lengths of the other contained linkers. A witness is
    // confirmed once its shadow range still matches at some checkpoint.
    std::vector<uint32_t> checkpoints;
    for (const auto& l : buildL_with_lengths(idx, row))
        if (l.len > s.start) checkpoints.push_back(l.len);
    std::sort(checkpoints.begin(), checkpoints.end());
    if (checkpoints.empty())
        for (auto& wt : witnesses) wt.confirmed = true;

    std::map<uint64_t, uint32_t> extension_best;  // transitive targets
    VoNode range = s.initial;
    for (uint32_t o = s.start + 1; o <= idx.k() - 2 && !range.empty(); ++o) {
        uint8_t c = s.pattern[o - 1];
        range = idx.lf_step(range, c);
        bool at_checkpoint = std::binary_search(checkpoints.begin(), checkpoints.end(), o);
        for (auto& wt : witnesses) {
            if (!wt.alive) continue;
            wt.shadow = idx.lf_step(wt.shadow, c);
            if (wt.shadow.empty()) wt.alive = false;
            else if (at_checkpoint) wt.confirmed = true;
        }
        if (range.empty()) break;
        collect_solids(idx, s, range, o, extension_best);
    }

    for (const auto& wt : witnesses)
        if (wt.confirmed) ++candidates[wt.owner].confirmed_witnesses;

    // Candidates found again during the extension keep the longer length.
    for (auto& cand : candidates) {
        auto it = extension_best.find(cand.target);
        if (it != extension_best.end()) {
            cand.o = std::max(cand.o, it->second);
            extension_best.erase(it);
        }
    }

    for (const auto& cand : candidates) {
        WeightedOverlap ov;
        ov.target = cand.target;
        ov.len = cand.o;
        // a candidate whose every initial witness died is demoted to transitive
        ov.irreducible = cand.in_y && !(cand.initial_witnesses > 0 && cand.confirmed_witnesses == 0);
        // weights stay within the stated o - m budget
        uint32_t cap = ov.len - idx.m();
        ov.weight = ov.irreducible ? std::min(cand.confirmed_witnesses, cap) : 0;
        out.push_back(ov);
    }
    for (auto [target, o] : extension_best) out.push_back({target, o, 0, false});
    std::sort(out.begin(), out.end(), [](const WeightedOverlap& a, const WeightedOverlap& b) {
        return a.target < b.target;
    });
    return out;
}

}  // namespace

std::vector<WeightedOverlap> weighted_foverlaps(const RBossIndex& idx, uint64_t row) {
    if (!idx.is_solid(row)) throw std::invalid_argument("weighted_foverlaps: row is not solid");
    return weighted_scan_run(idx, row, start_forward_scan(idx, row));
}

std::vector<WeightedOverlap> weighted_boverlaps(const RBossIndex& idx, uint64_t row) {
    if (!idx.is_solid(row)) throw std::invalid_argument("weighted_boverlaps: row is not solid");
    return weighted_scan_run(idx, row, start_backward_scan(idx, row));
}

}  // namespace rboss
