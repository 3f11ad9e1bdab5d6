#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdh/image.hpp"

namespace rdh {

/// A stream-cipher key derived from arbitrary user key material.
/// Derivation: SHA-256 of the raw bytes.
class SecretKey {
public:
    explicit SecretKey(std::string_view raw_material);
    static SecretKey from_file(const std::string& path);

    const std::array<std::uint8_t, 32>& digest() const { return digest_; }

private:
    std::array<std::uint8_t, 32> digest_{};
};

/// Deterministic keystream: ChaCha20 (64-bit nonce variant) with an all-zero
/// nonce and block counter starting at 0. One key must encrypt at most one
/// image, which the protocol guarantees.
std::vector<std::uint8_t> keystream(const SecretKey& key, std::size_t len);

/// out[i] = data[i] XOR keystream[i]. Applying twice is the identity.
std::vector<std::uint8_t> xor_encrypt(std::span<const std::uint8_t> data,
                                      const SecretKey& key);

/// Pixel-wise XOR of an image with the keystream.
GrayImage xor_encrypt(const GrayImage& img, const SecretKey& key);

}  // namespace rdh
