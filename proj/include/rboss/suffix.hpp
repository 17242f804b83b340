#pragma once

#include <cstdint>
#include <vector>

#include "rboss/bitvector.hpp"
#include "rboss/read_set.hpp"
#include "rboss/symbol_sequence.hpp"

namespace rboss {

// Concatenation text for suffix sorting, already reversed: each member of R*
// appears reversed and '$'-terminated, members in reverse order, '#' sentinel
// last. Ranks per dna.hpp.
std::vector<uint8_t> build_concat(const ReadSet& rs);

// Generic suffix array over a rank text (values 1..6). Prefix doubling with
// counting sort; suffixes compare as plain strings (shorter prefix first).
std::vector<uint32_t> build_suffix_array(const std::vector<uint8_t>& text);

// Kasai LCP: lcp[i] (1-based, i >= 2) = longest common prefix of the suffixes
// at sa[i-1] and sa[i]; lcp[1] = 0.
std::vector<uint32_t> build_lcp(const std::vector<uint8_t>& text, const std::vector<uint32_t>& sa);

struct SuffixStructures {
    std::vector<uint8_t> text;   // reversed concatenation, 1-based in formulas
    std::vector<uint32_t> sa;    // sa[i] = start of i-th smallest suffix (1-based values)
    SymbolSequence bwt;          // bwt[i] = text[sa[i]-1], wrapping at position 1
    std::vector<uint32_t> lcp;
    BitVector separators;        // D: positions of '$' and '#'

    uint64_t size() const { return text.size(); }
};

SuffixStructures build_suffix_structures(std::vector<uint8_t> text);

// Padding: for each suffix, if the distance d to the next
// separator at or after it satisfies d < k-1 and d < lcp[i], raise lcp[i]
// to k-1 so suffixes of the same left-padded (k-1)-context group together.
void pad_lcp(SuffixStructures& ss, uint32_t k);

// Distance from text position p to the next separator at or after p
// (select1(D, rank1(D, p) + 1) - p when defined); returns UINT32_MAX past
// the last separator.
uint32_t separator_distance(const SuffixStructures& ss, uint32_t p);

}  // namespace rboss
