#include "rboss/read_set.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "rboss/dna.hpp"

namespace rboss {

ReadSet::ReadSet(std::vector<std::string> reads, std::vector<std::string> ids, uint64_t dropped)
    : reads_(std::move(reads)), ids_(std::move(ids)), dropped_(dropped) {
    if (reads_.empty()) throw std::invalid_argument("ReadSet: empty");
    z_ = reads_.front().size();
    for (const auto& r : reads_)
        if (r.size() != z_) throw std::invalid_argument("ReadSet: reads have unequal lengths");
    if (ids_.empty()) {
        ids_.reserve(reads_.size());
        for (size_t i = 0; i < reads_.size(); ++i) ids_.push_back("read_" + std::to_string(i + 1));
    }
}

std::string ReadSet::member(uint64_t j) const {
    const std::string& r = reads_[j / 2];
    return (j % 2 == 0) ? r : reverse_complement_str(r);
}

namespace {

void lower_inplace(std::string& s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
}

bool clean_dna(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return is_dna_char(c); });
}

struct RawRecords {
    std::vector<std::string> seqs;
    std::vector<std::string> ids;
};

RawRecords parse_fasta(std::istream& in) {
    RawRecords out;
    std::string line, seq, id;
    bool have = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            if (have) {
                out.seqs.push_back(seq);
                out.ids.push_back(id);
            }
            id = line.substr(1, line.find_first_of(" \t") - 1);
            seq.clear();
            have = true;
        } else if (have) {
            seq += line;
        }
    }
    if (have) {
        out.seqs.push_back(seq);
        out.ids.push_back(id);
    }
    return out;
}

RawRecords parse_fastq(std::istream& in) {
    RawRecords out;
    std::string l1, l2, l3, l4;
    while (std::getline(in, l1)) {
        if (!l1.empty() && l1.back() == '\r') l1.pop_back();
        if (l1.empty()) continue;
        if (l1[0] != '@') throw std::runtime_error("FASTQ: record does not start with '@'");
        if (!std::getline(in, l2)) throw std::runtime_error("FASTQ: truncated record");
        if (!std::getline(in, l3)) throw std::runtime_error("FASTQ: truncated record");
        if (!std::getline(in, l4)) throw std::runtime_error("FASTQ: truncated record");
        if (!l2.empty() && l2.back() == '\r') l2.pop_back();
        // quality line parsed and dropped
        out.seqs.push_back(l2);
        out.ids.push_back(l1.substr(1, l1.find_first_of(" \t") - 1));
    }
    return out;
}

}  // namespace

ReadSet make_read_set(const std::vector<std::string>& raw_reads, const BuildConfig& cfg,
                      std::vector<std::string> ids) {
    std::vector<std::string> kept;
    std::vector<std::string> kept_ids;
    uint64_t dropped = 0;
    for (size_t i = 0; i < raw_reads.size(); ++i) {
        std::string s = raw_reads[i];
        if (s.empty() || !clean_dna(s)) {
            ++dropped;
            continue;
        }
        lower_inplace(s);
        kept.push_back(std::move(s));
        kept_ids.push_back(i < ids.size() ? ids[i] : "read_" + std::to_string(i + 1));
    }
    if (kept.size() < 2)
        throw std::runtime_error("read ingestion: fewer than 2 valid reads survive");
    ReadSet rs(std::move(kept), std::move(kept_ids), dropped);
    if (cfg.k > rs.read_len() + 1)
        throw std::runtime_error("read ingestion: k exceeds read length + 1");
    return rs;
}

ReadSet ingest_reads(const std::string& path, const BuildConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    int first = in.peek();
    RawRecords raw;
    if (first == '>') raw = parse_fasta(in);
    else if (first == '@') raw = parse_fastq(in);
    else throw std::runtime_error("input is neither FASTA nor FASTQ: " + path);
    return make_read_set(raw.seqs, cfg, std::move(raw.ids));
}

}  // namespace rboss
