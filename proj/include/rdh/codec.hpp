#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdh/bitplane.hpp"
#include "rdh/bits.hpp"

namespace rdh {

/// Tuning knobs of the hybrid run-length / Huffman codec.
///   t      block side of the rearrangement grid, >= 1
///   l_fix  short/long run threshold and Huffman symbol width, in [2, 8]
///   l_run  bit width of a run-length field, in [2, 16]
struct CodecParams {
    int t = 4;
    int l_fix = 6;
    int l_run = 5;

    void validate() const;  // throws ParamError
    std::size_t symbol_count() const { return std::size_t{1} << l_fix; }
    bool operator==(const CodecParams&) const = default;
};

/// Prefix code over l_fix-bit symbols.
///
/// Tables produced by build_huffman are canonical and complete: shorter
/// codes come first and, among equal lengths, codewords ascend with symbol
/// value. A length of 0 marks an absent symbol. Hand-built tables (tests)
/// may carry arbitrary prefix-free codewords.
struct HuffmanTable {
    int symbol_bits = 0;
    std::vector<std::uint8_t> code_lengths;  // 2^symbol_bits entries
    std::vector<Bits> codewords;             // parallel to code_lengths

    /// Canonical codewords from a length profile. Requires the profile to
    /// satisfy Kraft equality (or be the one-symbol degenerate case with a
    /// single length-1 code); throws CorruptionError otherwise.
    static HuffmanTable from_lengths(int symbol_bits, std::vector<std::uint8_t> lengths);

    bool empty() const;
    std::size_t present_symbols() const;
};

/// Runs the codec scan over every sequence and tallies how often each
/// l_fix-bit symbol is intercepted at the head of a short run. Long runs
/// and tail records contribute nothing.
std::vector<std::uint64_t> count_symbols(std::span<const Bits> sequences,
                                         const CodecParams& params);

/// Optimal prefix code for the counts, in canonical form. Ties in the
/// merge queue break by (count, smallest contained symbol) ascending, so
/// the result is bit-exact across runs. An all-zero table is legal and
/// yields an empty code.
HuffmanTable build_huffman(const std::vector<std::uint64_t>& freq, int symbol_bits);

/// Joint encoding of a bit sequence. Left-to-right scan; for the maximal
/// run of identical bits at the scan head, of length L:
///
///   L >= l_fix  run record: 0 | length field | repeat bit, advances L.
///               The length field is L in l_run bits, MSB first, when
///               L < 2^l_run - 1; otherwise it is the all-ones escape
///               value followed by the Elias-gamma code of
///               L - (2^l_run - 1) + 1, so one record covers a run of any
///               length.
///   L <  l_fix  symbol record: 1 | codeword of the l_fix bits at the scan
///               head. Advances l_fix.
///   tail        when fewer than l_fix bits remain, every remaining run is
///               emitted as a run record regardless of its length.
Bits encode(const Bits& seq, const CodecParams& params, const HuffmanTable& table);

/// Exact inverse of encode. Emits exactly target_len bits and must consume
/// the whole coded sequence; anything else throws CorruptionError.
Bits decode(const Bits& coded, const CodecParams& params, const HuffmanTable& table,
            std::size_t target_len);

/// One plane's processed record.
/// Serialized layout: [mark:1][mode:2][payload] when compressed,
/// [mark:1][raster plane bits] when raw (mark = 1).
struct CompressedPlane {
    bool raw = false;
    RearrangeMode mode;  // meaningful only when !raw
    Bits payload;

    std::size_t serialized_bits() const { return payload.size() + (raw ? 1 : 3); }
};

/// Encodes all four rearrangements of the plane and keeps the shortest
/// (ties break toward the smallest mode). Falls back to a raw record when
/// the best compressed record would not beat storing the plane verbatim.
CompressedPlane compress_plane(const BitPlane& plane, const CodecParams& params,
                               const HuffmanTable& table);

}  // namespace rdh
