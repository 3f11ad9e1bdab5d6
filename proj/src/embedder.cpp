#include "rdh/embedder.hpp"

#include <cassert>
#include <string>

#include "rdh/bits.hpp"
#include "rdh/container.hpp"
#include "rdh/errors.hpp"
#include "rdh/predictor.hpp"

namespace rdh {

namespace {

// Buffer position q maps to bit (8 - q/mn) of pixel q % mn; see to_bit_buffer.
inline int bit_shift(std::size_t q, std::size_t mn) {
    return 7 - static_cast<int>(q / mn);
}

inline void set_image_bit(GrayImage& img, std::size_t q, std::uint8_t bit) {
    const std::size_t mn = img.pixel_count();
    const int shift = bit_shift(q, mn);
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << shift);
    std::uint8_t& px = img.pixels[q % mn];
    px = static_cast<std::uint8_t>((px & ~mask) | (bit << shift));
}

inline std::uint8_t get_image_bit(const GrayImage& img, std::size_t q) {
    const std::size_t mn = img.pixel_count();
    return static_cast<std::uint8_t>((img.pixels[q % mn] >> bit_shift(q, mn)) & 1u);
}

inline std::uint8_t keystream_bit(const std::vector<std::uint8_t>& stream,
                                  std::size_t q, std::size_t mn) {
    return static_cast<std::uint8_t>((stream[q % mn] >> bit_shift(q, mn)) & 1u);
}

// The capacity field fills the final 8*len_bits positions of the canonical
// bit buffer. Whenever 8*len_bits <= m*n those are exactly the LSBs of the
// last 8*len_bits pixels; for tiny images the field spills into the next
// plane, which the buffer addressing handles uniformly.
void write_capacity_field(GrayImage& img, std::uint64_t capacity, int len_bits) {
    const std::size_t mn = img.pixel_count();
    const int width = 8 * len_bits;
    std::size_t q = 8 * mn - static_cast<std::size_t>(width);
    for (int b = width - 1; b >= 0; --b, ++q) {
        const std::uint8_t bit =
            b >= 64 ? 0 : static_cast<std::uint8_t>((capacity >> b) & 1u);
        set_image_bit(img, q, bit);
    }
}

std::uint64_t read_field_from_image(const GrayImage& img, std::size_t q, int width) {
    std::uint64_t value = 0;
    for (int b = 0; b < width; ++b) {
        const std::uint8_t bit = get_image_bit(img, q + static_cast<std::size_t>(b));
        if (width - b > 63 && bit != 0) {
            throw CorruptionError("field value exceeds 63 bits");
        }
        value = (value << 1) | bit;
    }
    return value;
}

}  // namespace

OwnerResult owner_encode(const GrayImage& img, const SecretKey& image_key,
                         const CodecParams& params) {
    const ErrorImage err = compute_error_image(img);
    AssembleResult packed = assemble(err, params);
    const GrayImage compressed = from_bit_buffer(packed.buffer, img.rows, img.cols);
    GrayImage encrypted = xor_encrypt(compressed, image_key);

    const int len_bits = length_field_bits(img.pixel_count());
    write_capacity_field(encrypted, packed.capacity, len_bits);
    // Pre-initialize the room's payload length prefix to "nothing embedded".
    const std::size_t prefix_bits = 8 * static_cast<std::size_t>(len_bits);
    if (packed.capacity >= prefix_bits) {
        for (std::size_t b = 0; b < prefix_bits; ++b) {
            set_image_bit(encrypted, packed.room_start + b, 0);
        }
    }
    return OwnerResult{std::move(encrypted), packed.capacity};
}

std::uint64_t read_capacity(const GrayImage& marked) {
    const std::size_t mn = marked.pixel_count();
    const int len_bits = length_field_bits(mn);
    const std::size_t field_bits = 8 * static_cast<std::size_t>(len_bits);
    const std::uint64_t capacity =
        read_field_from_image(marked, 8 * mn - field_bits, 8 * len_bits);
    if (capacity + field_bits > 8 * mn) {
        throw CorruptionError("capacity " + std::to_string(capacity) +
                              " does not fit a " + std::to_string(8 * mn) +
                              "-bit image");
    }
    return capacity;
}

std::uint64_t payload_room_bits(std::uint64_t capacity, std::size_t pixel_count) {
    const std::uint64_t prefix = 8ull * static_cast<std::uint64_t>(length_field_bits(pixel_count));
    return capacity >= prefix ? capacity - prefix : 0;
}

GrayImage embed(const GrayImage& encrypted, std::span<const std::uint8_t> payload,
                const SecretKey& data_key) {
    const std::size_t mn = encrypted.pixel_count();
    const int len_bits = length_field_bits(mn);
    const std::uint64_t capacity = read_capacity(encrypted);
    const std::uint64_t room = payload_room_bits(capacity, mn);
    const std::uint64_t payload_bits = 8ull * payload.size();
    if (payload_bits > room || capacity < 8ull * static_cast<std::uint64_t>(len_bits)) {
        throw CapacityError("payload of " + std::to_string(payload_bits) +
                                " bits exceeds the " + std::to_string(room) +
                                "-bit payload room",
                            room, payload_bits);
    }

    const std::size_t room_start =
        8 * mn - 8 * static_cast<std::size_t>(len_bits) - static_cast<std::size_t>(capacity);
    GrayImage marked = encrypted;

    std::size_t q = room_start;
    for (int b = 8 * len_bits - 1; b >= 0; --b, ++q) {
        const std::uint8_t bit =
            b >= 64 ? 0 : static_cast<std::uint8_t>((payload.size() >> b) & 1u);
        set_image_bit(marked, q, bit);
    }
    const std::vector<std::uint8_t> sealed = xor_encrypt(payload, data_key);
    for (std::uint8_t byte : sealed) {
        for (int b = 7; b >= 0; --b, ++q) {
            set_image_bit(marked, q, static_cast<std::uint8_t>((byte >> b) & 1u));
        }
    }
    assert(q <= 8 * mn - 8 * static_cast<std::size_t>(len_bits));
    return marked;
}

std::vector<std::uint8_t> extract(const GrayImage& marked, const SecretKey& data_key) {
    const std::size_t mn = marked.pixel_count();
    const int len_bits = length_field_bits(mn);
    const std::uint64_t capacity = read_capacity(marked);
    const std::size_t prefix_bits = 8 * static_cast<std::size_t>(len_bits);
    if (capacity < prefix_bits) {
        return {};  // the room cannot even hold a length prefix
    }
    const std::size_t room_start =
        8 * mn - prefix_bits - static_cast<std::size_t>(capacity);
    const std::uint64_t payload_len = read_field_from_image(marked, room_start, 8 * len_bits);
    if (prefix_bits + 8 * payload_len > capacity) {
        throw CorruptionError("payload length " + std::to_string(payload_len) +
                              " bytes exceeds the reserved room");
    }
    std::vector<std::uint8_t> sealed(static_cast<std::size_t>(payload_len));
    std::size_t q = room_start + prefix_bits;
    for (std::uint8_t& byte : sealed) {
        for (int b = 0; b < 8; ++b, ++q) {
            byte = static_cast<std::uint8_t>((byte << 1) | get_image_bit(marked, q));
        }
    }
    return xor_encrypt(sealed, data_key);
}

GrayImage recover(const GrayImage& marked, const SecretKey& image_key) {
    const std::size_t mn = marked.pixel_count();
    const int len_bits = length_field_bits(mn);
    const std::uint64_t capacity = read_capacity(marked);
    const std::size_t container_end =
        8 * mn - 8 * static_cast<std::size_t>(len_bits) - static_cast<std::size_t>(capacity);

    Bits buffer = to_bit_buffer(marked);
    const std::vector<std::uint8_t> stream = keystream(image_key, mn);
    for (std::size_t q = 0; q < container_end; ++q) {
        buffer[q] ^= keystream_bit(stream, q, mn);
    }
    DisassembleResult parsed = disassemble(buffer, marked.rows, marked.cols);
    return invert_error_image(parsed.error_image);
}

std::pair<GrayImage, std::vector<std::uint8_t>> recover_and_extract(
    const GrayImage& marked, const SecretKey& image_key, const SecretKey& data_key) {
    return {recover(marked, image_key), extract(marked, data_key)};
}

}  // namespace rdh
