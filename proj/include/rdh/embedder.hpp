#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rdh/codec.hpp"
#include "rdh/crypto.hpp"
#include "rdh/image.hpp"

namespace rdh {

// The three protocol roles. Extraction takes only the data-hiding key,
// recovery only the image key; neither operation accepts the other key.

struct OwnerResult {
    GrayImage image;            // encrypted image with plaintext capacity field
    std::uint64_t capacity = 0; // net embedding capacity c, in bits
};

/// Content-owner step: compute the error image, pack the container, encrypt,
/// then write the capacity c in plaintext into the LSBs of the last
/// 8*length_field_bits(m*n) pixels and zero the room's length field.
OwnerResult owner_encode(const GrayImage& img, const SecretKey& image_key,
                         const CodecParams& params = {});

/// Parses c from the capacity field. Throws CorruptionError when the value
/// cannot denote a room that fits in the image.
std::uint64_t read_capacity(const GrayImage& marked);

/// Bits of room available for payload once the self-delimiting length
/// prefix is paid for.
std::uint64_t payload_room_bits(std::uint64_t capacity, std::size_t pixel_count);

/// Data-hider step: encrypts the payload with the data key and substitutes
/// it into the reserved room behind an 8L-bit byte-count prefix. Throws
/// CapacityError when 8*payload.size() exceeds payload_room_bits.
GrayImage embed(const GrayImage& encrypted, std::span<const std::uint8_t> payload,
                const SecretKey& data_key);

/// Receiver case 1: payload only. Reads the capacity and the length prefix,
/// decrypts the payload with the data key. No image decoding happens.
std::vector<std::uint8_t> extract(const GrayImage& marked, const SecretKey& data_key);

/// Receiver case 2: image only. Decrypts the container region, decodes it,
/// and reconstructs the original cover bit-exactly, ignoring the payload.
GrayImage recover(const GrayImage& marked, const SecretKey& image_key);

/// Receiver case 3: both keys.
std::pair<GrayImage, std::vector<std::uint8_t>> recover_and_extract(
    const GrayImage& marked, const SecretKey& image_key, const SecretKey& data_key);

}  // namespace rdh
