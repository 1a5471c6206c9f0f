#pragma once
#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "fedgbdt/errors.hpp"

namespace fedgbdt {

// Byte-order-explicit serialization helpers. File formats in this project
// are little-endian; network-facing residues and frame headers are
// big-endian where the wire contract says so. Doubles always travel as
// their IEEE-754 bit pattern.

class ByteWriter {
public:
    std::vector<uint8_t> buf;

    void u8(uint8_t v) { buf.push_back(v); }

    void u32_le(uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(uint8_t(v >> (8 * i)));
    }
    void u64_le(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(uint8_t(v >> (8 * i)));
    }
    void u32_be(uint32_t v) {
        for (int i = 3; i >= 0; --i) buf.push_back(uint8_t(v >> (8 * i)));
    }
    void u64_be(uint64_t v) {
        for (int i = 7; i >= 0; --i) buf.push_back(uint8_t(v >> (8 * i)));
    }
    void f64_le(double v) { u64_le(std::bit_cast<uint64_t>(v)); }

    void bytes(const uint8_t* p, size_t n) { buf.insert(buf.end(), p, p + n); }
    void bytes(const std::vector<uint8_t>& v) { bytes(v.data(), v.size()); }
    void ascii(const char* s) { while (*s) buf.push_back(uint8_t(*s++)); }
};

class ByteReader {
public:
    ByteReader(const uint8_t* data, size_t size) : p_(data), end_(data + size) {}
    explicit ByteReader(const std::vector<uint8_t>& v) : ByteReader(v.data(), v.size()) {}

    size_t remaining() const { return size_t(end_ - p_); }
    bool done() const { return p_ == end_; }

    uint8_t u8() { need(1); return *p_++; }

    uint32_t u32_le() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(p_[i]) << (8 * i);
        p_ += 4;
        return v;
    }
    uint64_t u64_le() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(p_[i]) << (8 * i);
        p_ += 8;
        return v;
    }
    uint32_t u32_be() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | p_[i];
        p_ += 4;
        return v;
    }
    uint64_t u64_be() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | p_[i];
        p_ += 8;
        return v;
    }
    double f64_le() { return std::bit_cast<double>(u64_le()); }

    std::vector<uint8_t> bytes(size_t n) {
        need(n);
        std::vector<uint8_t> out(p_, p_ + n);
        p_ += n;
        return out;
    }

    void need(size_t n) const {
        if (remaining() < n) throw DataError("byte stream truncated");
    }

private:
    const uint8_t* p_;
    const uint8_t* end_;
};

// FNV-1a, 64-bit. Used for config hashes and model fingerprints in reports.
inline uint64_t fnv1a64(const uint8_t* data, size_t n) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t fnv1a64(const std::vector<uint8_t>& v) { return fnv1a64(v.data(), v.size()); }
inline uint64_t fnv1a64(const std::string& s) {
    return fnv1a64(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

} // namespace fedgbdt
