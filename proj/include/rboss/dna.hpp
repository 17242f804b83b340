#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rboss {

// Alphabet ranks used throughout: 1='$', 2='a', 3='c', 4='g', 5='t', 6='#'.
// '#' only exists inside the construction text.
namespace sym {
constexpr uint8_t dollar = 1;
constexpr uint8_t a = 2;
constexpr uint8_t c = 3;
constexpr uint8_t g = 4;
constexpr uint8_t t = 5;
constexpr uint8_t hash = 6;
constexpr uint8_t sigma = 5;  // query alphabet: $ plus acgt
}  // namespace sym

inline bool is_dna_rank(uint8_t r) { return r >= sym::a && r <= sym::t; }

inline uint8_t char_to_rank(char ch) {
    switch (ch) {
        case '$': return sym::dollar;
        case 'a': case 'A': return sym::a;
        case 'c': case 'C': return sym::c;
        case 'g': case 'G': return sym::g;
        case 't': case 'T': return sym::t;
        case '#': return sym::hash;
        default: throw std::invalid_argument(std::string("not a DNA symbol: ") + ch);
    }
}

inline char rank_to_char(uint8_t r) {
    static const char tab[] = "?$acgt#";
    if (r < 1 || r > 6) throw std::invalid_argument("bad symbol rank");
    return tab[r];
}

// a<->t, c<->g. Only defined for DNA ranks.
inline uint8_t complement_rank(uint8_t r) {
    if (!is_dna_rank(r)) throw std::invalid_argument("complement of non-DNA rank");
    return static_cast<uint8_t>(7 - r);
}

inline bool is_dna_char(char ch) {
    switch (ch) {
        case 'a': case 'A': case 'c': case 'C': case 'g': case 'G': case 't': case 'T': return true;
        default: return false;
    }
}

std::string reverse_complement_str(const std::string& s);
std::vector<uint8_t> reverse_complement_ranks(const std::vector<uint8_t>& s);

std::vector<uint8_t> to_ranks(const std::string& s);
std::string from_ranks(const std::vector<uint8_t>& r);

}  // namespace rboss
