#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rdh/bits.hpp"

namespace rdh {

/// One bit-plane of an image-sized byte raster. k = 1 is the LSB plane,
/// k = 8 the MSB plane.
struct BitPlane {
    std::size_t rows = 0;
    std::size_t cols = 0;
    int k = 1;
    Bits bits;  // rows*cols values in raster order
};

/// One of the four block traversal orders. Serialized as two bits,
/// within-block flag first.
struct RearrangeMode {
    int within_block = 0;    // 0 = row by row, 1 = column by column
    int between_blocks = 0;  // 0 = row-major over blocks, 1 = column-major

    int index() const { return within_block * 2 + between_blocks; }
    static RearrangeMode from_index(int idx) { return {(idx >> 1) & 1, idx & 1}; }
    bool operator==(const RearrangeMode&) const = default;
};

/// Extracts plane k of a byte raster (prediction errors or pixels).
BitPlane extract_plane(std::span<const std::uint8_t> values, std::size_t rows,
                       std::size_t cols, int k);

/// The index permutation realizing one traversal order: output position ->
/// source raster index. Blocks are t x t, partial edge blocks are traversed
/// with the same pattern restricted to in-bounds cells. Tables are cached
/// per (rows, cols, t, mode) and shared.
std::shared_ptr<const std::vector<std::uint32_t>> block_permutation(
    std::size_t rows, std::size_t cols, int t, RearrangeMode mode);

/// Emits the plane's bits in the given block traversal order.
/// Throws ParamError for t < 1.
Bits rearrange(const BitPlane& plane, int t, RearrangeMode mode);

/// Inverse of rearrange. Throws SizeError when seq length != rows*cols.
BitPlane inverse_rearrange(const Bits& seq, int t, RearrangeMode mode,
                           std::size_t rows, std::size_t cols, int k);

/// Fraction of adjacent bit pairs that agree; diagnostic for how well a
/// traversal order groups repeats.
double adjacent_agreement(const Bits& bits);

}  // namespace rdh
