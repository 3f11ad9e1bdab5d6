#include "rdh/crypto.hpp"

#include <sodium.h>

#include <fstream>
#include <mutex>
#include <sstream>

#include "rdh/errors.hpp"

namespace rdh {

namespace {

void ensure_sodium() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (sodium_init() < 0) {
            throw Error("libsodium initialization failed");
        }
    });
}

}  // namespace

SecretKey::SecretKey(std::string_view raw_material) {
    ensure_sodium();
    crypto_hash_sha256(digest_.data(),
                       reinterpret_cast<const unsigned char*>(raw_material.data()),
                       raw_material.size());
}

SecretKey SecretKey::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open key file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return SecretKey(buf.str());
}

std::vector<std::uint8_t> keystream(const SecretKey& key, std::size_t len) {
    ensure_sodium();
    std::vector<std::uint8_t> out(len);
    static const unsigned char nonce[crypto_stream_chacha20_NONCEBYTES] = {0};
    if (len > 0) {
        crypto_stream_chacha20(out.data(), len, nonce, key.digest().data());
    }
    return out;
}

std::vector<std::uint8_t> xor_encrypt(std::span<const std::uint8_t> data,
                                      const SecretKey& key) {
    std::vector<std::uint8_t> out(data.begin(), data.end());
    const auto stream = keystream(key, out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] ^= stream[i];
    }
    return out;
}

GrayImage xor_encrypt(const GrayImage& img, const SecretKey& key) {
    return GrayImage(img.rows, img.cols, xor_encrypt(std::span(img.pixels), key));
}

}  // namespace rdh
