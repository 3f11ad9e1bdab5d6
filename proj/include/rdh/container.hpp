#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rdh/bits.hpp"
#include "rdh/codec.hpp"
#include "rdh/predictor.hpp"

namespace rdh {

/// Decoder side data stored at the head of the compressed image.
/// Serialized layout (L = length_field_bits(m*n)):
///   t:8 | l_fix:8 | l_run:8 | 2^l_fix Huffman code lengths, 8 bits each |
///   overflow count:L | overflow raster indices, L bits each, ascending
struct AuxInfo {
    CodecParams params;
    std::vector<std::uint8_t> huffman_lengths;   // 2^l_fix entries, 0 = absent
    std::vector<std::size_t> overflow_positions;

    std::size_t serialized_bits(int len_bits) const {
        return 24 + 8 * huffman_lengths.size() +
               static_cast<std::size_t>(len_bits) * (1 + overflow_positions.size());
    }
};

/// Net embedding capacity in bits: 8*m*n minus the eight serialized plane
/// records, the auxiliary information, and the 17 L-bit bookkeeping fields
/// (9 header lengths + the 8L-bit capacity field). Throws
/// IncompressibleError when the overheads exceed the image.
std::uint64_t compute_capacity(const std::array<CompressedPlane, 8>& planes,
                               const AuxInfo& aux, std::size_t rows, std::size_t cols);

/// A packed compressed image. Buffer layout, from bit 0:
///
///   l(A):L | eight payload-length fields, L bits each, planes k=1..8
///         (a field holds the compressed payload length; 0 means the
///          record is raw and spans 1 + m*n bits) |
///   A | plane records P_c1..P_c8 | reserved room, zero filled |
///   capacity c in 8L bits at the buffer tail
struct AssembleResult {
    Bits buffer;               // 8*m*n bits
    std::uint64_t capacity = 0;
    std::size_t room_start = 0;  // room spans [room_start, 8*m*n - 8L)
};

/// Builds the Huffman table over all 32 candidate sequences, compresses the
/// eight planes, and packs the container. Propagates IncompressibleError.
AssembleResult assemble(const ErrorImage& err, const CodecParams& params);

struct DisassembleResult {
    ErrorImage error_image;
    std::uint64_t capacity = 0;
    std::size_t room_start = 0;
    std::size_t room_end = 0;
};

/// Parses and decodes a container buffer (after decryption). Any overrun,
/// invalid parameter, Kraft-deficient length profile, or decode failure
/// throws CorruptionError; a truncated or tampered buffer never yields a
/// wrong image silently.
DisassembleResult disassemble(const Bits& buffer, std::size_t rows, std::size_t cols);

}  // namespace rdh
