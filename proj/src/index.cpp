#include "rboss/index.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rboss/dna.hpp"
#include "rboss/io_util.hpp"
#include "rboss/vo_baseline.hpp"

namespace rboss {

namespace {

// E alphabet: 1='$', 2..5 plain acgt, 6..9 the duplicate-target variants.
constexpr uint8_t kEdgeSigma = 9;
constexpr uint8_t kFlagOffset = 4;

inline uint8_t encode_edge(uint8_t sym, bool flagged) {
    return flagged ? static_cast<uint8_t>(sym + kFlagOffset) : sym;
}

}  // namespace

RBossIndex::RBossIndex() = default;
RBossIndex::~RBossIndex() = default;
RBossIndex::RBossIndex(RBossIndex&&) noexcept = default;
RBossIndex& RBossIndex::operator=(RBossIndex&&) noexcept = default;

const LcsArray& RBossIndex::lcs() const {
    if (!lcs_) throw std::logic_error("index was built without the LCS array");
    return *lcs_;
}

uint64_t RBossIndex::edge_begin(uint64_t row) const {
    return row == 1 ? 1 : last_.select1(row - 1) + 1;
}

uint64_t RBossIndex::edge_end(uint64_t row) const { return last_.select1(row); }

uint8_t RBossIndex::edge_symbol(uint64_t pos) const {
    uint8_t v = edges_.access(pos);
    return v > sym::t ? static_cast<uint8_t>(v - kFlagOffset) : v;
}

bool RBossIndex::edge_flagged(uint64_t pos) const { return edges_.access(pos) > sym::t; }

uint64_t RBossIndex::edge_row(uint64_t pos) const { return last_.rank1(pos - 1) + 1; }

uint64_t RBossIndex::rank_any(uint8_t c, uint64_t pos) const {
    uint64_t r = edges_.rank(c, pos);
    if (is_dna_rank(c)) r += edges_.rank(static_cast<uint8_t>(c + kFlagOffset), pos);
    return r;
}

uint64_t RBossIndex::outdegree(uint64_t row) const { return edge_end(row) - edge_begin(row) + 1; }

bool RBossIndex::has_dollar_edge(uint64_t row) const {
    return edges_.rank(sym::dollar, edge_end(row)) > edges_.rank(sym::dollar, edge_begin(row) - 1);
}

uint64_t RBossIndex::traversable_outdegree(uint64_t row) const {
    return outdegree(row) - (has_dollar_edge(row) ? 1 : 0);
}

std::vector<uint8_t> RBossIndex::out_symbols(uint64_t row) const {
    std::vector<uint8_t> out;
    for (uint64_t p = edge_begin(row); p <= edge_end(row); ++p) out.push_back(edge_symbol(p));
    return out;
}

std::vector<uint8_t> RBossIndex::traversable_out_symbols(uint64_t row) const {
    std::vector<uint8_t> out;
    for (uint64_t p = edge_begin(row); p <= edge_end(row); ++p) {
        uint8_t c = edge_symbol(p);
        if (c != sym::dollar) out.push_back(c);
    }
    return out;
}

std::optional<uint64_t> RBossIndex::forward(uint64_t row, uint8_t c) const {
    if (c == sym::dollar) throw std::invalid_argument("forward: terminal edge");
    if (!is_dna_rank(c)) throw std::invalid_argument("forward: bad symbol");
    const uint64_t eb = edge_begin(row), ee = edge_end(row);
    uint64_t p = 0;
    for (uint64_t q = eb; q <= ee; ++q) {
        if (edge_symbol(q) == c) {
            p = q;
            break;
        }
    }
    if (p == 0) return std::nullopt;
    uint64_t j = edges_.rank(c, p);  // unflagged c-edges up to p
    return c_[c] + short_linker_[c] + j;
}

uint8_t RBossIndex::last_symbol(uint64_t row) const {
    for (uint8_t c = sym::a; c <= sym::t; ++c)
        if (row <= c_[c + 1]) return c;
    throw std::out_of_range("last_symbol: row out of range");
}

std::optional<RBossIndex::BackStep> RBossIndex::backward_step(uint64_t row) const {
    uint8_t c = last_symbol(row);
    uint64_t j = row - c_[c] - short_linker_[c];
    if (j == 0 || row <= c_[c]) return std::nullopt;
    uint64_t p = edges_.select(c, j);
    return BackStep{edge_row(p), c};
}

uint64_t RBossIndex::indegree(uint64_t row) const {
    uint8_t c = last_symbol(row);
    uint64_t j = row - c_[c] - short_linker_[c];
    if (j == 0) return 0;
    uint64_t p1 = edges_.select(c, j);
    uint64_t total = edges_.rank(c, e_);
    uint64_t p2 = (j + 1 <= total) ? edges_.select(c, j + 1) : e_ + 1;
    return rank_any(c, p2 - 1) - rank_any(c, p1 - 1);
}

std::vector<uint64_t> RBossIndex::backward(uint64_t row) const {
    std::vector<uint64_t> out;
    uint8_t c = last_symbol(row);
    uint64_t j = row - c_[c] - short_linker_[c];
    if (j == 0) return out;
    uint64_t p1 = edges_.select(c, j);
    uint64_t total = edges_.rank(c, e_);
    uint64_t p2 = (j + 1 <= total) ? edges_.select(c, j + 1) : e_ + 1;
    out.push_back(edge_row(p1));
    const uint8_t fc = static_cast<uint8_t>(c + kFlagOffset);
    uint64_t f_lo = edges_.rank(fc, p1), f_hi = edges_.rank(fc, p2 - 1);
    for (uint64_t o = f_lo + 1; o <= f_hi; ++o) out.push_back(edge_row(edges_.select(fc, o)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint8_t> RBossIndex::label(uint64_t row) const {
    std::vector<uint8_t> lab(k_ - 1, sym::dollar);
    uint64_t cur = row;
    for (uint32_t pos = k_ - 1; pos-- > 0;) {
        lab[pos] = last_symbol(cur);
        if (pos == 0) break;
        auto bs = backward_step(cur);
        if (!bs) break;  // remaining prefix is padding
        cur = bs->row;
    }
    return lab;
}

std::string RBossIndex::label_str(uint64_t row) const { return from_ranks(label(row)); }

uint32_t RBossIndex::llabel_len(uint64_t row) const {
    if (solid_.get(row)) return k_ - 1;
    uint32_t len = 1;
    uint64_t cur = row;
    while (len < k_ - 1) {
        auto bs = backward_step(cur);
        if (!bs) break;
        cur = bs->row;
        ++len;
    }
    return len;
}

VoNode RBossIndex::lf_step(const VoNode& range, uint8_t c) const {
    if (!is_dna_rank(c)) throw std::invalid_argument("lf_step: bad symbol");
    if (range.empty()) return VoNode{};
    const uint64_t e_lo = range.lo == 1 ? 0 : last_.select1(range.lo - 1);
    const uint64_t e_hi = last_.select1(range.hi);
    // first and last c-edge inside the span, flagged or not; a flagged edge
    // shares the target of its owner, which may sit before the span
    const uint8_t fc = static_cast<uint8_t>(c + kFlagOffset);
    uint64_t p1 = 0, p2 = 0;
    auto probe = [&](uint8_t sym) {
        uint64_t before = edges_.rank(sym, e_lo), upto = edges_.rank(sym, e_hi);
        if (before == upto) return;
        uint64_t first = edges_.select(sym, before + 1);
        uint64_t last = edges_.select(sym, upto);
        if (p1 == 0 || first < p1) p1 = first;
        if (p2 == 0 || last > p2) p2 = last;
    };
    probe(c);
    probe(fc);
    if (p1 == 0) return VoNode{};
    VoNode out;
    out.lo = c_[c] + short_linker_[c] + edges_.rank(c, p1);
    out.hi = c_[c] + short_linker_[c] + edges_.rank(c, p2);
    out.order = range.order + 1;
    return out;
}

std::optional<uint64_t> RBossIndex::find_edge_in_rows(uint64_t row_lo, uint64_t row_hi,
                                                      uint8_t c) const {
    const uint64_t e_lo = edge_begin(row_lo), e_hi = edge_end(row_hi);
    uint64_t best = 0;
    auto probe = [&](uint8_t sym) {
        uint64_t j = edges_.rank(sym, e_lo - 1) + 1;
        if (j <= edges_.rank(sym, e_hi)) {
            uint64_t p = edges_.select(sym, j);
            if (best == 0 || p < best) best = p;
        }
    };
    probe(c);
    if (is_dna_rank(c)) probe(static_cast<uint8_t>(c + kFlagOffset));
    if (best == 0) return std::nullopt;
    return best;
}

VoNode RBossIndex::backwardsearch(const std::vector<uint8_t>& q) const {
    if (q.empty() || q.size() > k_ - 1)
        throw std::invalid_argument("backwardsearch: pattern length must be in [1..k-1]");
    for (uint8_t c : q)
        if (!is_dna_rank(c)) throw std::invalid_argument("backwardsearch: non-DNA symbol");
    VoNode range;
    range.lo = c_[q[0]] + 1;
    range.hi = c_[q[0] + 1];
    range.order = 1;
    for (size_t i = 1; i < q.size() && !range.empty(); ++i) range = lf_step(range, q[i]);
    if (range.empty()) return VoNode{};
    return range;
}

NodeClass RBossIndex::classify(uint64_t row) const {
    NodeClass nc;
    nc.solid = solid_.get(row);
    nc.linker = !nc.solid;
    nc.p_node = pnode_.get(row);
    nc.s_node = nc.solid && has_dollar_edge(row);
    return nc;
}

std::vector<uint64_t> RBossIndex::solids_in_range(uint64_t lo, uint64_t hi) const {
    std::vector<uint64_t> out;
    if (lo > hi) return out;
    uint64_t r0 = solid_.rank1(lo - 1), r1 = solid_.rank1(hi);
    out.reserve(r1 - r0);
    for (uint64_t j = r0 + 1; j <= r1; ++j) out.push_back(solid_.select1(j));
    return out;
}

uint64_t RBossIndex::rc_node(uint64_t row) const {
    if (!solid_.get(row)) throw std::invalid_argument("rc_node: row is not solid");
    if (!rc_perm_.empty()) return rc_perm_[solid_.rank1(row) - 1];
    return rc_node_via_search(row);
}

uint64_t RBossIndex::rc_node_via_search(uint64_t row) const {
    std::vector<uint8_t> lab = label(row);
    std::vector<uint8_t> q = reverse_complement_ranks(lab);
    VoNode r = backwardsearch(q);
    if (r.empty() || r.lo != r.hi)
        throw std::logic_error("rc_node: reverse complement not found as a unique row");
    return r.lo;
}

void RBossIndex::set_nonextensible(SparseBitVector n) {
    if (n.size() != n_) throw std::invalid_argument("set_nonextensible: wrong universe size");
    nonext_ = std::move(n);
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

RBossIndex build_index(const ReadSet& rs, const BuildConfig& cfg) {
    const uint32_t k = cfg.k, m = cfg.m;
    if (k < 4 || m < 2 || m > k - 2) throw std::invalid_argument("build_index: need 2 <= m <= k-2");
    if (k > rs.read_len() + 1) throw std::invalid_argument("build_index: k exceeds read length + 1");

    SuffixStructures ss = build_suffix_structures(build_concat(rs));
    pad_lcp(ss, k);
    const uint64_t nt = ss.size();

    // valid suffixes start with a DNA symbol; '$' rows sort first, '#' last
    uint64_t lo = 0;
    while (lo < nt && ss.text[ss.sa[lo] - 1] == sym::dollar) ++lo;
    uint64_t hi = nt;
    while (hi > lo && ss.text[ss.sa[hi - 1] - 1] == sym::hash) --hi;
    for (uint64_t i = lo; i < hi; ++i)
        assert(is_dna_rank(ss.text[ss.sa[i] - 1]));

    RBossIndex idx;
    idx.k_ = k;
    idx.m_ = m;
    idx.r_ = rs.num_reads();
    idx.z_ = rs.read_len();

    std::vector<uint8_t> edge_syms;
    std::vector<bool> last_bits;
    std::vector<bool> solid_bits;
    std::array<uint64_t, 8> count{};
    std::vector<uint32_t> group_d;     // llabel length, k-1 for solid groups
    std::vector<uint32_t> boundary;    // boundary[g] = padded lcp between groups g-1, g (g >= 1)
    std::array<uint8_t, 8> short_linker{};
    std::vector<uint32_t> lcs_values;  // optional

    // duplicate-target flags: an edge shares its target with the previous
    // same-symbol edge iff both source groups lie in one (k-2)-suffix block
    uint64_t block_id = 0;
    std::array<uint64_t, 8> last_seen{};  // block id of the previous c-edge, per symbol
    last_seen.fill(UINT64_MAX);

    uint64_t i = lo;
    while (i < hi) {
        uint64_t g_first = i;
        ++i;
        while (i < hi && ss.lcp[i] >= k - 1) ++i;
        const uint64_t g_last = i;  // exclusive

        const uint32_t b = (g_first == lo) ? 0 : ss.lcp[g_first];
        if (group_d.empty()) {
            ++block_id;
        } else {
            boundary.push_back(b);
            if (b < k - 2) ++block_id;
        }

        uint32_t d = separator_distance(ss, ss.sa[g_first]);
        bool solid = d >= k - 1;
        group_d.push_back(solid ? k - 1 : d);
        solid_bits.push_back(solid);

        uint8_t c0 = ss.text[ss.sa[g_first] - 1];
        ++count[c0];
        if (!solid && d == 1) short_linker[c0] = 1;

        // distinct outgoing symbols of this group, '#' folded into '$'
        bool seen[8] = {false};
        for (uint64_t r = g_first; r < g_last; ++r) {
            uint8_t cb = ss.bwt.access(r + 1);
            if (cb == sym::hash) cb = sym::dollar;
            seen[cb] = true;
        }
        for (uint8_t c = sym::dollar; c <= sym::t; ++c) {
            if (!seen[c]) continue;
            bool flagged = false;
            if (is_dna_rank(c)) {
                flagged = (last_seen[c] == block_id);
                last_seen[c] = block_id;
            }
            edge_syms.push_back(encode_edge(c, flagged));
            last_bits.push_back(false);
        }
        last_bits.back() = true;

        if (cfg.keep_lcs) lcs_values.push_back(group_d.size() == 1 ? 0 : std::min<uint32_t>(b, k - 2));
    }

    const uint64_t n = group_d.size();
    idx.n_ = n;
    idx.e_ = edge_syms.size();
    idx.edges_ = SymbolSequence(edge_syms, kEdgeSigma);
    idx.last_ = BitVector(last_bits);
    idx.solid_ = BitVector(solid_bits);
    idx.short_linker_ = short_linker;

    idx.c_[0] = idx.c_[1] = idx.c_[2] = 0;
    for (uint8_t c = sym::a; c <= sym::t; ++c) idx.c_[c + 1] = idx.c_[c] + count[c];
    assert(idx.c_[sym::t + 1] == n);

    // overlap tree: lcp-interval tree over group boundaries, keeping internal
    // nodes of string depth >= m whose leftmost child edge starts with '$'
    // (equivalently: the interval's first group is the exact-depth linker)
    {
        struct Interval {
            uint32_t depth;
            uint64_t left;
        };
        struct Kept {
            uint64_t l, r;  // group indices, 1-based
        };
        std::vector<Kept> kept;
        std::vector<Interval> stack;
        stack.push_back({0, 1});
        auto consider = [&](uint32_t depth, uint64_t l, uint64_t r) {
            if (depth >= m && group_d[l - 1] == depth) kept.push_back({l, r});
        };
        for (uint64_t g = 2; g <= n; ++g) {
            uint32_t b = boundary[g - 2];
            uint64_t left = g - 1;
            while (!stack.empty() && stack.back().depth > b) {
                consider(stack.back().depth, stack.back().left, g - 1);
                left = stack.back().left;
                stack.pop_back();
            }
            if (stack.empty() || stack.back().depth < b) stack.push_back({b, left});
        }
        while (!stack.empty()) {
            consider(stack.back().depth, stack.back().left, n);
            stack.pop_back();
        }
        // laminar family -> preorder parentheses
        std::vector<std::pair<uint64_t, uint64_t>> opens(kept.size()), closes(kept.size());
        for (size_t t = 0; t < kept.size(); ++t) {
            opens[t] = {kept[t].l, UINT64_MAX - kept[t].r};  // same l: wider first
            closes[t] = {kept[t].r, UINT64_MAX - kept[t].l};
        }
        std::sort(opens.begin(), opens.end());
        std::sort(closes.begin(), closes.end());
        std::vector<bool> bp;
        bp.reserve(2 * (n + kept.size() + 1));
        bp.push_back(true);  // root
        size_t oi = 0, ci = 0;
        for (uint64_t g = 1; g <= n; ++g) {
            while (oi < opens.size() && opens[oi].first == g) {
                bp.push_back(true);
                ++oi;
            }
            bp.push_back(true);
            bp.push_back(false);  // leaf
            while (ci < closes.size() && closes[ci].first == g) {
                bp.push_back(false);
                ++ci;
            }
        }
        bp.push_back(false);
        idx.tree_ = BpTree(bp);
        assert(idx.tree_.num_leaves() == n);
    }

    if (cfg.keep_lcs) idx.lcs_ = std::make_unique<LcsArray>(lcs_values, k - 2);
    idx.nonext_ = SparseBitVector(n, {});

    // p-nodes: backward search of every (k-1)-prefix of R*
    {
        std::vector<bool> pbits(n, false);
        idx.read_prefix_row_.resize(rs.num_members());
        for (uint64_t j = 0; j < rs.num_members(); ++j) {
            std::vector<uint8_t> q = to_ranks(rs.member(j));
            q.resize(k - 1);
            VoNode r = idx.backwardsearch(q);
            if (r.empty() || r.lo != r.hi || !idx.solid_.get(r.lo))
                throw std::logic_error("build_index: read prefix did not resolve to a solid row");
            pbits[r.lo - 1] = true;
            idx.read_prefix_row_[j] = r.lo;
        }
        idx.pnode_ = BitVector(pbits);
    }

    if (cfg.keep_rc_perm) {
        const uint64_t s = idx.solid_.ones();
        idx.rc_perm_.resize(s);
        for (uint64_t j = 1; j <= s; ++j)
            idx.rc_perm_[j - 1] = idx.rc_node_via_search(idx.solid_.select1(j));
    }

    return idx;
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

namespace {

void put_block(std::ostream& out, const std::string& payload) {
    io::put_u64(out, payload.size());
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

std::string get_block(std::istream& in) {
    uint64_t len = io::get_u64(in);
    std::string payload(len, '\0');
    in.read(payload.data(), static_cast<std::streamsize>(len));
    if (!in) throw std::runtime_error("index load: truncated component block");
    return payload;
}

template <typename T>
std::string to_block(const T& component) {
    std::ostringstream os(std::ios::binary);
    component.save(os);
    return os.str();
}

}  // namespace

void RBossIndex::save(std::ostream& out) const {
    io::put_magic(out, "RBOS");
    io::put_u16(out, 1);
    uint8_t flags = (lcs_ ? 1 : 0) | (rc_perm_.empty() ? 0 : 2);
    out.put(static_cast<char>(flags));
    io::put_u64(out, k_);
    io::put_u64(out, m_);
    io::put_u64(out, r_);
    io::put_u64(out, z_);
    io::put_u64(out, n_);
    io::put_u64(out, e_);
    put_block(out, to_block(edges_));
    put_block(out, to_block(last_));
    {
        std::ostringstream os(std::ios::binary);
        for (int c = 0; c < 8; ++c) io::put_u64(os, c_[c]);
        for (int c = 0; c < 8; ++c) os.put(static_cast<char>(short_linker_[c]));
        io::put_u64_vec(os, read_prefix_row_);
        put_block(out, os.str());
    }
    put_block(out, to_block(solid_));
    put_block(out, to_block(pnode_));
    put_block(out, to_block(nonext_));
    put_block(out, to_block(tree_));
    if (lcs_) put_block(out, to_block(*lcs_));
    if (!rc_perm_.empty()) {
        std::ostringstream os(std::ios::binary);
        io::put_u64_vec(os, rc_perm_);
        put_block(out, os.str());
    }
}

RBossIndex RBossIndex::load(std::istream& in) {
    io::check_magic(in, "RBOS", "index");
    uint16_t ver = io::get_u16(in);
    if (ver != 1) throw std::runtime_error("index load: unsupported format version");
    int flags = in.get();
    RBossIndex idx;
    idx.k_ = static_cast<uint32_t>(io::get_u64(in));
    idx.m_ = static_cast<uint32_t>(io::get_u64(in));
    idx.r_ = io::get_u64(in);
    idx.z_ = io::get_u64(in);
    idx.n_ = io::get_u64(in);
    idx.e_ = io::get_u64(in);
    auto read_component = [&](auto& component) {
        std::istringstream is(get_block(in), std::ios::binary);
        component.load(is);
    };
    read_component(idx.edges_);
    read_component(idx.last_);
    {
        std::istringstream is(get_block(in), std::ios::binary);
        for (int c = 0; c < 8; ++c) idx.c_[c] = io::get_u64(is);
        for (int c = 0; c < 8; ++c) idx.short_linker_[c] = static_cast<uint8_t>(is.get());
        idx.read_prefix_row_ = io::get_u64_vec(is);
    }
    read_component(idx.solid_);
    read_component(idx.pnode_);
    read_component(idx.nonext_);
    read_component(idx.tree_);
    if (flags & 1) {
        idx.lcs_ = std::make_unique<LcsArray>();
        read_component(*idx.lcs_);
    }
    if (flags & 2) {
        std::istringstream is(get_block(in), std::ios::binary);
        idx.rc_perm_ = io::get_u64_vec(is);
    }
    return idx;
}

void RBossIndex::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write index file: " + path);
    save(out);
}

RBossIndex RBossIndex::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open index file: " + path);
    return load(in);
}

bool index_equal(const RBossIndex& a, const RBossIndex& b) {
    if (a.k_ != b.k_ || a.m_ != b.m_ || a.r_ != b.r_ || a.z_ != b.z_ || a.n_ != b.n_ || a.e_ != b.e_)
        return false;
    if (!(a.edges_ == b.edges_) || !(a.last_ == b.last_) || a.c_ != b.c_ ||
        !(a.solid_ == b.solid_) || !(a.pnode_ == b.pnode_) || !(a.nonext_ == b.nonext_) ||
        !(a.tree_ == b.tree_) || a.short_linker_ != b.short_linker_ ||
        a.read_prefix_row_ != b.read_prefix_row_ || a.rc_perm_ != b.rc_perm_)
        return false;
    if ((a.lcs_ == nullptr) != (b.lcs_ == nullptr)) return false;
    if (a.lcs_ && !(*a.lcs_ == *b.lcs_)) return false;
    return true;
}

RBossIndex::ComponentSizes RBossIndex::component_sizes() const {
    ComponentSizes cs{};
    cs.edges = edges_.byte_size();
    cs.boundary = last_.byte_size();
    cs.solid = solid_.byte_size();
    cs.pnode = pnode_.byte_size();
    cs.nonext = nonext_.positions().size() * 8;
    cs.tree = tree_.byte_size();
    cs.lcs = lcs_ ? lcs_->byte_size() : 0;
    cs.rc_perm = rc_perm_.size() * 8;
    cs.total = cs.edges + cs.boundary + cs.solid + cs.pnode + cs.nonext + cs.tree + cs.lcs + cs.rc_perm;
    return cs;
}

}  // namespace rboss
