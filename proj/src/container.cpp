#include "rdh/container.hpp"

#include <cassert>
#include <string>

#include "rdh/errors.hpp"

namespace rdh {

namespace {

std::size_t records_total_bits(const std::array<CompressedPlane, 8>& planes) {
    std::size_t total = 0;
    for (const CompressedPlane& rec : planes) total += rec.serialized_bits();
    return total;
}

// Bounds-checked bit reader over a container buffer.
class BitReader {
public:
    explicit BitReader(const Bits& buf) : buf_(buf) {}

    std::uint64_t take(int width) {
        if (pos_ + static_cast<std::size_t>(width) > buf_.size()) {
            throw CorruptionError("container parse overruns buffer");
        }
        const std::uint64_t value = read_uint(buf_, pos_, width);
        pos_ += static_cast<std::size_t>(width);
        return value;
    }

    Bits take_bits(std::size_t count) {
        if (pos_ + count > buf_.size()) {
            throw CorruptionError("container parse overruns buffer");
        }
        Bits out(buf_.begin() + static_cast<std::ptrdiff_t>(pos_),
                 buf_.begin() + static_cast<std::ptrdiff_t>(pos_ + count));
        pos_ += count;
        return out;
    }

    std::size_t position() const { return pos_; }

private:
    const Bits& buf_;
    std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t compute_capacity(const std::array<CompressedPlane, 8>& planes,
                               const AuxInfo& aux, std::size_t rows, std::size_t cols) {
    const std::size_t mn = rows * cols;
    const int len_bits = length_field_bits(mn);
    const std::size_t overhead = 17 * static_cast<std::size_t>(len_bits) +
                                 aux.serialized_bits(len_bits) +
                                 records_total_bits(planes);
    if (overhead > 8 * mn) {
        throw IncompressibleError(
            "image is incompressible: overheads of " + std::to_string(overhead) +
            " bits exceed the " + std::to_string(8 * mn) + "-bit image");
    }
    return 8 * mn - overhead;
}

AssembleResult assemble(const ErrorImage& err, const CodecParams& params) {
    params.validate();
    const std::size_t mn = err.pixel_count();
    const int len_bits = length_field_bits(mn);

    std::array<BitPlane, 8> planes;
    for (int k = 1; k <= 8; ++k) {
        planes[static_cast<std::size_t>(k - 1)] =
            extract_plane(err.eprime, err.rows, err.cols, k);
    }

    // One global Huffman table, counted over all 32 candidate sequences so
    // every rearrangement the selector may pick is covered.
    std::vector<Bits> candidates;
    candidates.reserve(32);
    for (const BitPlane& plane : planes) {
        for (int idx = 0; idx < 4; ++idx) {
            candidates.push_back(rearrange(plane, params.t, RearrangeMode::from_index(idx)));
        }
    }
    const auto freq = count_symbols(candidates, params);
    candidates.clear();
    candidates.shrink_to_fit();
    const HuffmanTable table = build_huffman(freq, params.l_fix);

    std::array<CompressedPlane, 8> records;
    for (std::size_t k = 0; k < 8; ++k) {
        records[k] = compress_plane(planes[k], params, table);
    }

    AuxInfo aux{params, table.code_lengths, err.overflow_positions};
    const std::size_t aux_bits = aux.serialized_bits(len_bits);
    if (aux_bits >> len_bits) {
        throw IncompressibleError("auxiliary information of " + std::to_string(aux_bits) +
                                  " bits does not fit a " + std::to_string(len_bits) +
                                  "-bit length field");
    }
    const std::uint64_t capacity = compute_capacity(records, aux, err.rows, err.cols);

    AssembleResult result;
    result.capacity = capacity;
    result.buffer.assign(8 * mn, 0);

    Bits packed;
    packed.reserve(8 * mn - static_cast<std::size_t>(capacity));
    append_uint(packed, aux_bits, len_bits);
    for (const CompressedPlane& rec : records) {
        append_uint(packed, rec.raw ? 0 : rec.payload.size(), len_bits);
    }
    append_uint(packed, static_cast<std::uint64_t>(params.t), 8);
    append_uint(packed, static_cast<std::uint64_t>(params.l_fix), 8);
    append_uint(packed, static_cast<std::uint64_t>(params.l_run), 8);
    for (std::uint8_t len : aux.huffman_lengths) append_uint(packed, len, 8);
    append_uint(packed, aux.overflow_positions.size(), len_bits);
    for (std::size_t pos : aux.overflow_positions) append_uint(packed, pos, len_bits);
    for (const CompressedPlane& rec : records) {
        packed.push_back(rec.raw ? 1 : 0);
        if (!rec.raw) {
            packed.push_back(static_cast<std::uint8_t>(rec.mode.within_block));
            packed.push_back(static_cast<std::uint8_t>(rec.mode.between_blocks));
        }
        packed.insert(packed.end(), rec.payload.begin(), rec.payload.end());
    }

    result.room_start = packed.size();
    assert(result.room_start + capacity + 8 * static_cast<std::size_t>(len_bits) == 8 * mn);
    std::copy(packed.begin(), packed.end(), result.buffer.begin());
    // Room stays zero filled; the capacity field closes the buffer.
    {
        Bits tail;
        append_uint(tail, capacity, 8 * len_bits);
        std::copy(tail.begin(), tail.end(),
                  result.buffer.end() - static_cast<std::ptrdiff_t>(tail.size()));
    }
    return result;
}

DisassembleResult disassemble(const Bits& buffer, std::size_t rows, std::size_t cols) {
    const std::size_t mn = rows * cols;
    if (buffer.size() != 8 * mn) {
        throw SizeError("container buffer length " + std::to_string(buffer.size()) +
                        " does not match 8*" + std::to_string(mn));
    }
    const int len_bits = length_field_bits(mn);

    BitReader reader(buffer);
    const std::uint64_t aux_bits_declared = reader.take(len_bits);
    std::array<std::uint64_t, 8> payload_lens;
    for (auto& len : payload_lens) len = reader.take(len_bits);

    CodecParams params;
    params.t = static_cast<int>(reader.take(8));
    params.l_fix = static_cast<int>(reader.take(8));
    params.l_run = static_cast<int>(reader.take(8));
    try {
        params.validate();
    } catch (const ParamError& e) {
        throw CorruptionError(std::string("invalid codec parameters in container: ") +
                              e.what());
    }

    std::vector<std::uint8_t> lengths(params.symbol_count());
    for (auto& len : lengths) len = static_cast<std::uint8_t>(reader.take(8));

    const std::uint64_t overflow_count = reader.take(len_bits);
    std::vector<std::size_t> overflow_positions;
    overflow_positions.reserve(static_cast<std::size_t>(overflow_count));
    for (std::uint64_t i = 0; i < overflow_count; ++i) {
        const auto pos = static_cast<std::size_t>(reader.take(len_bits));
        if (pos >= mn || pos < cols || pos % cols == 0) {
            throw CorruptionError("overflow position out of range");
        }
        if (!overflow_positions.empty() && pos <= overflow_positions.back()) {
            throw CorruptionError("overflow positions not strictly ascending");
        }
        overflow_positions.push_back(pos);
    }

    AuxInfo aux{params, lengths, overflow_positions};
    if (aux.serialized_bits(len_bits) != aux_bits_declared) {
        throw CorruptionError("auxiliary information length mismatch");
    }
    const HuffmanTable table = HuffmanTable::from_lengths(params.l_fix, std::move(lengths));

    ErrorImage err;
    err.rows = rows;
    err.cols = cols;
    err.eprime.assign(mn, 0);
    err.overflow_positions = std::move(overflow_positions);

    std::array<CompressedPlane, 8> records;
    for (std::size_t k = 0; k < 8; ++k) {
        CompressedPlane& rec = records[k];
        const std::uint8_t mark = static_cast<std::uint8_t>(reader.take(1));
        if (payload_lens[k] == 0) {
            if (mark != 1) {
                throw CorruptionError("zero-length record without raw mark");
            }
            rec.raw = true;
            rec.payload = reader.take_bits(mn);
        } else {
            if (mark != 0) {
                throw CorruptionError("raw mark on a compressed record");
            }
            rec.raw = false;
            rec.mode.within_block = static_cast<int>(reader.take(1));
            rec.mode.between_blocks = static_cast<int>(reader.take(1));
            rec.payload = reader.take_bits(static_cast<std::size_t>(payload_lens[k]));
        }

        const int plane_index = static_cast<int>(k) + 1;
        BitPlane plane;
        if (rec.raw) {
            plane = BitPlane{rows, cols, plane_index, rec.payload};
        } else {
            const Bits seq = decode(rec.payload, params, table, mn);
            plane = inverse_rearrange(seq, params.t, rec.mode, rows, cols, plane_index);
        }
        const int shift = plane_index - 1;
        for (std::size_t p = 0; p < mn; ++p) {
            err.eprime[p] |= static_cast<std::uint8_t>(plane.bits[p] << shift);
        }
    }

    std::uint64_t capacity;
    try {
        capacity = compute_capacity(records, aux, rows, cols);
    } catch (const IncompressibleError& e) {
        throw CorruptionError(std::string("container accounting invalid: ") + e.what());
    }
    std::uint64_t capacity_field;
    try {
        capacity_field = read_wide_uint(
            buffer, 8 * mn - 8 * static_cast<std::size_t>(len_bits), 8 * len_bits);
    } catch (const CorruptionError&) {
        throw CorruptionError("capacity field disagrees with container contents");
    }
    if (capacity_field != capacity) {
        throw CorruptionError("capacity field disagrees with container contents");
    }

    DisassembleResult result;
    result.error_image = std::move(err);
    result.capacity = capacity;
    result.room_start = reader.position();
    result.room_end = 8 * mn - 8 * static_cast<std::size_t>(len_bits);
    return result;
}

}  // namespace rdh
