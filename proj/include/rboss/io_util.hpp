#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rboss::io {

inline void put_u64(std::ostream& out, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

inline uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("io: truncated stream while reading u64");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

inline void put_u32(std::ostream& out, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 4);
}

inline uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("io: truncated stream while reading u32");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return v;
}

inline void put_u16(std::ostream& out, uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 2);
}

inline uint16_t get_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    if (!in) throw std::runtime_error("io: truncated stream while reading u16");
    return static_cast<uint16_t>(b[0] | (static_cast<uint16_t>(b[1]) << 8));
}

inline void put_magic(std::ostream& out, const char magic[4]) { out.write(magic, 4); }

inline void check_magic(std::istream& in, const char magic[4], const char* what) {
    char b[4];
    in.read(b, 4);
    if (!in || b[0] != magic[0] || b[1] != magic[1] || b[2] != magic[2] || b[3] != magic[3])
        throw std::runtime_error(std::string("io: bad magic for ") + what);
}

inline void put_u64_vec(std::ostream& out, const std::vector<uint64_t>& v) {
    put_u64(out, v.size());
    for (uint64_t x : v) put_u64(out, x);
}

inline std::vector<uint64_t> get_u64_vec(std::istream& in) {
    uint64_t sz = get_u64(in);
    std::vector<uint64_t> v(sz);
    for (uint64_t i = 0; i < sz; ++i) v[i] = get_u64(in);
    return v;
}

}  // namespace rboss::io
