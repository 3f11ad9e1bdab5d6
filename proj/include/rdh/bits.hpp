#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rdh/errors.hpp"

namespace rdh {

/// A bit sequence, one 0/1 value per element.
using Bits = std::vector<std::uint8_t>;

/// Appends `width` bits of `value`, most significant bit first. Widths above
/// 64 are legal; the extra leading bits are zero.
inline void append_uint(Bits& out, std::uint64_t value, int width) {
    for (int b = width - 1; b >= 0; --b) {
        out.push_back(b >= 64 ? std::uint8_t{0}
                              : static_cast<std::uint8_t>((value >> b) & 1u));
    }
}

/// Reads `width` <= 64 bits starting at `pos`, most significant bit first.
/// The caller is responsible for bounds.
inline std::uint64_t read_uint(const Bits& in, std::size_t pos, int width) {
    std::uint64_t value = 0;
    for (int b = 0; b < width; ++b) {
        value = (value << 1) | in[pos + static_cast<std::size_t>(b)];
    }
    return value;
}

/// Reads a field of arbitrary width whose value must fit in 64 bits.
/// A set bit in the excess leading positions signals a corrupt field.
inline std::uint64_t read_wide_uint(const Bits& in, std::size_t pos, int width) {
    std::uint64_t value = 0;
    for (int b = 0; b < width; ++b) {
        const std::uint8_t bit = in[pos + static_cast<std::size_t>(b)];
        if (width - b > 63 && bit != 0) {
            throw CorruptionError("length field value exceeds 63 bits");
        }
        value = (value << 1) | bit;
    }
    return value;
}

/// Width in bits of every container length field: the smallest L with
/// 2^L >= pixel_count. Equals log2(m*n) for power-of-two sizes.
inline int length_field_bits(std::size_t pixel_count) {
    return static_cast<int>(std::bit_width(pixel_count - 1));
}

}  // namespace rdh
