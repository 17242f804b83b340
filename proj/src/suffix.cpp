#include "rboss/suffix.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "rboss/dna.hpp"

namespace rboss {

std::vector<uint8_t> build_concat(const ReadSet& rs) {
    const uint64_t twor = rs.num_members();
    std::vector<uint8_t> text;
    text.reserve(twor * (rs.read_len() + 1) + 1);
    for (uint64_t j = twor; j-- > 0;) {
        std::string w = rs.member(j);
        for (auto it = w.rbegin(); it != w.rend(); ++it) text.push_back(char_to_rank(*it));
        text.push_back(sym::dollar);
    }
    text.push_back(sym::hash);
    return text;
}

std::vector<uint32_t> build_suffix_array(const std::vector<uint8_t>& text) {
    const size_t n = text.size();
    std::vector<uint32_t> sa(n), rank(n), tmp(n), cnt;
    // initial sort by single symbol
    {
        cnt.assign(257, 0);
        for (size_t i = 0; i < n; ++i) cnt[text[i] + 1]++;
        for (size_t c = 1; c < cnt.size(); ++c) cnt[c] += cnt[c - 1];
        for (size_t i = 0; i < n; ++i) sa[cnt[text[i]]++] = static_cast<uint32_t>(i);
        uint32_t cls = 0;
        rank[sa[0]] = 0;
        for (size_t i = 1; i < n; ++i) {
            if (text[sa[i]] != text[sa[i - 1]]) ++cls;
            rank[sa[i]] = cls;
        }
    }
    std::vector<uint32_t> rank2(n), order(n);
    for (size_t len = 1; len < n; len <<= 1) {
        // key for suffix i: (rank[i], rank[i+len] + 1 or 0 past end)
        auto second = [&](uint32_t i) -> uint32_t {
            return (i + len < n) ? rank[i + len] + 1 : 0;
        };
        // counting sort by second key
        cnt.assign(n + 2, 0);
        for (size_t i = 0; i < n; ++i) cnt[second(static_cast<uint32_t>(i)) + 1]++;
        for (size_t c = 1; c < cnt.size(); ++c) cnt[c] += cnt[c - 1];
        for (size_t i = 0; i < n; ++i) order[cnt[second(static_cast<uint32_t>(i))]++] = static_cast<uint32_t>(i);
        // stable counting sort by first key
        cnt.assign(n + 1, 0);
        for (size_t i = 0; i < n; ++i) cnt[rank[i] + 1]++;
        for (size_t c = 1; c < cnt.size(); ++c) cnt[c] += cnt[c - 1];
        for (size_t i = 0; i < n; ++i) sa[cnt[rank[order[i]]]++] = order[i];
        // new classes
        uint32_t cls = 0;
        tmp[sa[0]] = 0;
        for (size_t i = 1; i < n; ++i) {
            if (rank[sa[i]] != rank[sa[i - 1]] || second(sa[i]) != second(sa[i - 1])) ++cls;
            tmp[sa[i]] = cls;
        }
        rank.swap(tmp);
        if (cls + 1 == n) break;
    }
    // convert to 1-based text positions
    for (auto& v : sa) ++v;
    return sa;
}

std::vector<uint32_t> build_lcp(const std::vector<uint8_t>& text, const std::vector<uint32_t>& sa) {
    const size_t n = text.size();
    std::vector<uint32_t> inv(n), lcp(n + 1, 0);
    for (size_t i = 0; i < n; ++i) inv[sa[i] - 1] = static_cast<uint32_t>(i);  // 0-based rank
    uint32_t h = 0;
    for (size_t i = 0; i < n; ++i) {  // i = 0-based text position
        if (inv[i] > 0) {
            size_t j = sa[inv[i] - 1] - 1;  // previous suffix, 0-based
            while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
            lcp[inv[i] + 1] = h;  // 1-based row of suffix i
            if (h > 0) --h;
        } else {
            h = 0;
        }
    }
    lcp.erase(lcp.begin());  // lcp[1..n], entry 1 == 0
    lcp.resize(n);
    lcp[0] = 0;
    return lcp;
}

SuffixStructures build_suffix_structures(std::vector<uint8_t> text) {
    SuffixStructures ss;
    ss.text = std::move(text);
    const size_t n = ss.text.size();
    if (n == 0) throw std::invalid_argument("build_suffix_structures: empty text");
    ss.sa = build_suffix_array(ss.text);
    ss.lcp = build_lcp(ss.text, ss.sa);
    std::vector<uint8_t> bwt(n);
    for (size_t i = 0; i < n; ++i) {
        uint32_t p = ss.sa[i];
        bwt[i] = (p == 1) ? ss.text[n - 1] : ss.text[p - 2];
    }
    ss.bwt = SymbolSequence(bwt, 6);
    std::vector<bool> sep(n, false);
    for (size_t i = 0; i < n; ++i)
        sep[i] = (ss.text[i] == sym::dollar || ss.text[i] == sym::hash);
    ss.separators = BitVector(sep);
    return ss;
}

uint32_t separator_distance(const SuffixStructures& ss, uint32_t p) {
    uint64_t r = ss.separators.rank1(p);
    if (r + 1 > ss.separators.ones()) return UINT32_MAX;
    return static_cast<uint32_t>(ss.separators.select1(r + 1) - p);
}

void pad_lcp(SuffixStructures& ss, uint32_t k) {
    const size_t n = ss.text.size();
    for (size_t i = 0; i < n; ++i) {
        uint32_t d = separator_distance(ss, ss.sa[i]);
        if (d < k - 1 && d < ss.lcp[i]) ss.lcp[i] = k - 1;
    }
}

}  // namespace rboss
