#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aeta {

using Bit = std::uint8_t;
using BitSeq = std::vector<Bit>;
using Symbol = std::uint32_t;

/// Parses an ASCII bit string; first character = first bit.
inline BitSeq bits_from_string(std::string_view s) {
    BitSeq out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            out.push_back(0);
        else if (c == '1')
            out.push_back(1);
        else
            throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
    return out;
}

inline std::string bits_to_string(const BitSeq& bits) {
    std::string s;
    s.reserve(bits.size());
    for (Bit b : bits) s.push_back(b ? '1' : '0');
    return s;
}

/// Element j of the result is bit j of `value`.
inline BitSeq bits_from_uint(std::uint64_t value, std::size_t nbits) {
    if (nbits > 64) throw std::invalid_argument("bits_from_uint: nbits > 64");
    BitSeq out(nbits);
    for (std::size_t j = 0; j < nbits; ++j) out[j] = static_cast<Bit>((value >> j) & 1u);
    return out;
}

inline std::uint64_t bits_to_uint(const BitSeq& bits) {
    if (bits.size() > 64) throw std::invalid_argument("bits_to_uint: more than 64 bits");
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j]) v |= (1ull << j);
    return v;
}

inline BitSeq xor_bits(const BitSeq& a, const BitSeq& b) {
    if (a.size() != b.size()) throw std::invalid_argument("xor_bits: length mismatch");
    BitSeq out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

}  // namespace aeta
