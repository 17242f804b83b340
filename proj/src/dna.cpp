#include "rboss/dna.hpp"

#include <algorithm>

namespace rboss {

std::string reverse_complement_str(const std::string& s) {
    std::string out(s.size(), '?');
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[s.size() - 1 - i];
        switch (ch) {
            case 'a': case 'A': out[i] = 't'; break;
            case 't': case 'T': out[i] = 'a'; break;
            case 'c': case 'C': out[i] = 'g'; break;
            case 'g': case 'G': out[i] = 'c'; break;
            default: throw std::invalid_argument("reverse_complement_str: non-DNA symbol");
        }
    }
    return out;
}

std::vector<uint8_t> reverse_complement_ranks(const std::vector<uint8_t>& s) {
    std::vector<uint8_t> out(s.size());
    for (size_t i = 0; i < s.size(); ++i) out[i] = complement_rank(s[s.size() - 1 - i]);
    return out;
}

std::vector<uint8_t> to_ranks(const std::string& s) {
    std::vector<uint8_t> out(s.size());
    std::transform(s.begin(), s.end(), out.begin(), char_to_rank);
    return out;
}

std::string from_ranks(const std::vector<uint8_t>& r) {
    std::string out(r.size(), '?');
    std::transform(r.begin(), r.end(), out.begin(), rank_to_char);
    return out;
}

}  // namespace rboss
