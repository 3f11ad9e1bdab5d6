#include <doctest.h>

#include <random>

#include "rdh/container.hpp"
#include "rdh/errors.hpp"
#include "test_support.hpp"

using namespace rdh;

namespace {

std::array<CompressedPlane, 8> fake_records(std::size_t mn,
                                            const std::vector<std::pair<int, std::size_t>>&
                                                compressed_payloads) {
    std::array<CompressedPlane, 8> records;
    for (auto& rec : records) {
        rec.raw = true;
        rec.payload = Bits(mn, 0);
    }
    for (auto [k, payload] : compressed_payloads) {
        records[static_cast<std::size_t>(k - 1)] =
            CompressedPlane{false, RearrangeMode{}, Bits(payload, 0)};
    }
    return records;
}

AuxInfo default_aux() {
    return AuxInfo{CodecParams{}, std::vector<std::uint8_t>(64, 0), {}};
}

}  // namespace

TEST_CASE("capacity accounting reproduces the reported Lena and Baboon rates") {
    // published per-plane payloads, planes 7/6/5/4 and 7/6/5
    const auto lena = fake_records(
        512 * 512, {{7, 3907}, {6, 16443}, {5, 53336}, {4, 148255}});
    const auto baboon = fake_records(512 * 512, {{7, 37337}, {6, 129710}, {5, 218774}});
    const AuxInfo aux = default_aux();

    const std::uint64_t c_lena = compute_capacity(lena, aux, 512, 512);
    CHECK(c_lena == 825759);
    const double er_lena = static_cast<double>(c_lena) / (512.0 * 512.0);
    CHECK(er_lena == doctest::Approx(3.15).epsilon(0.01 / 3.15));

    const std::uint64_t c_baboon = compute_capacity(baboon, aux, 512, 512);
    CHECK(c_baboon == 399737);
    const double er_baboon = static_cast<double>(c_baboon) / (512.0 * 512.0);
    CHECK(er_baboon == doctest::Approx(1.526).epsilon(0.01 / 1.526));
}

TEST_CASE("eight raw records cannot pay for the overheads") {
    const auto records = fake_records(64 * 64, {});
    CHECK_THROWS_AS(compute_capacity(records, default_aux(), 64, 64),
                    IncompressibleError);
}

TEST_CASE("a constant image compresses almost entirely into room") {
    const GrayImage img(64, 64, 77);
    const AssembleResult packed = assemble(compute_error_image(img), CodecParams{});
    CHECK(packed.capacity > 6 * 64 * 64);  // better than 6 bpp
    const DisassembleResult parsed = disassemble(packed.buffer, 64, 64);
    CHECK(invert_error_image(parsed.error_image) == img);
}

TEST_CASE("assemble and disassemble are mutual inverses up to room contents") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t rows = 33 + seed * 7, cols = 55 - seed * 3;
        const GrayImage img = test::smooth_image(rows, cols, seed);
        const ErrorImage err = compute_error_image(img);
        const CodecParams params{static_cast<int>(2 + seed % 4), 5, 5};
        const AssembleResult packed = assemble(err, params);

        const std::size_t mn = rows * cols;
        const int len_bits = length_field_bits(mn);
        REQUIRE(packed.buffer.size() == 8 * mn);
        // occupancy identity
        CHECK(packed.room_start + packed.capacity + 8 * len_bits == 8 * mn);

        Bits scribbled = packed.buffer;
        std::mt19937_64 rng(seed);
        for (std::size_t q = packed.room_start;
             q < 8 * mn - 8 * static_cast<std::size_t>(len_bits); ++q) {
            scribbled[q] = rng() & 1;  // payload bits must not matter
        }
        const DisassembleResult parsed = disassemble(scribbled, rows, cols);
        CHECK(parsed.capacity == packed.capacity);
        CHECK(parsed.room_start == packed.room_start);
        CHECK(parsed.room_end == 8 * mn - 8 * static_cast<std::size_t>(len_bits));
        CHECK(parsed.error_image.eprime == err.eprime);
        CHECK(parsed.error_image.overflow_positions == err.overflow_positions);
        CHECK(invert_error_image(parsed.error_image) == img);
    }
}

TEST_CASE("overflow positions survive the container") {
    GrayImage img = test::smooth_image(32, 32, 9);
    // isolated extremes force |e| > 127 at a handful of spots
    for (std::size_t p : {3 * 32 + 5, 11 * 32 + 20, 25 * 32 + 7}) {
        const std::size_t i = p / 32, j = p % 32;
        const int px = med_predict(img.at(i - 1, j - 1), img.at(i, j - 1), img.at(i - 1, j));
        img.pixels[p] = px < 128 ? 255 : 0;
    }
    const ErrorImage err = compute_error_image(img);
    REQUIRE(!err.overflow_positions.empty());
    const AssembleResult packed = assemble(err, CodecParams{});
    const DisassembleResult parsed = disassemble(packed.buffer, 32, 32);
    CHECK(parsed.error_image.overflow_positions == err.overflow_positions);
    CHECK(invert_error_image(parsed.error_image) == img);
}

TEST_CASE("wrong buffer length is a size error") {
    CHECK_THROWS_AS(disassemble(Bits(100), 16, 16), SizeError);
}

TEST_CASE("golden container: every bit derived by hand") {
    // Constant-zero 16x16 cover, params (2,2,2). All eight planes are a
    // single 256-bit zero run, so the whole container is computable on
    // paper: L = 8, l(A) = 24 + 8*4 + 8 = 64, each payload is
    // prefix 0 | escape field 11 | gamma(254) | tail 0 = 19 bits,
    // c = 2048 - 17*8 - 64 - 8*22 = 1672.
    const GrayImage img(16, 16, 0);
    const AssembleResult packed = assemble(compute_error_image(img), CodecParams{2, 2, 2});

    Bits expected;
    append_uint(expected, 64, 8);                       // l(A)
    for (int k = 0; k < 8; ++k) append_uint(expected, 19, 8);  // payload lengths
    append_uint(expected, 2, 8);                        // t
    append_uint(expected, 2, 8);                        // l_fix
    append_uint(expected, 2, 8);                        // l_run
    for (int s = 0; s < 4; ++s) append_uint(expected, 0, 8);   // code lengths
    append_uint(expected, 0, 8);                        // overflow count
    for (int k = 0; k < 8; ++k) {
        expected.push_back(0);                          // mark: compressed
        expected.push_back(0);                          // mode within
        expected.push_back(0);                          // mode between
        expected.push_back(0);                          // run record prefix
        append_uint(expected, 3, 2);                    // escape field 11
        append_uint(expected, 254, 15);                 // gamma: 7 zeros + 11111110
        expected.push_back(0);                          // repeat bit
    }
    REQUIRE(expected.size() == 312);
    expected.resize(2048 - 64, 0);                      // zero-filled room
    append_uint(expected, 1672, 64);                    // capacity field

    CHECK(packed.capacity == 1672);
    CHECK(packed.room_start == 312);
    CHECK(packed.buffer == expected);
    CHECK(invert_error_image(disassemble(expected, 16, 16).error_image) == img);
}

TEST_CASE("a zero-filled tail where records should be is corrupt") {
    const GrayImage img = test::smooth_image(32, 32, 5);
    const AssembleResult packed = assemble(compute_error_image(img), CodecParams{});
    Bits truncated(packed.buffer.size(), 0);
    std::copy(packed.buffer.begin(), packed.buffer.begin() + 200, truncated.begin());
    CHECK_THROWS_AS(disassemble(truncated, 32, 32), CorruptionError);
}

TEST_CASE("bit flips in the header or Huffman rules never pass silently") {
    const GrayImage img = test::smooth_image(48, 40, 17);
    const ErrorImage err = compute_error_image(img);
    const AssembleResult packed = assemble(err, CodecParams{});
    const std::size_t mn = 48 * 40;
    const int len_bits = length_field_bits(mn);

    // header length fields and the Huffman code-length table; the three raw
    // parameter bytes and the overflow list carry no redundancy, so flips
    // there are out of detection scope (the format is unauthenticated)
    const std::size_t header_bits = 9 * static_cast<std::size_t>(len_bits);
    const std::size_t huffman_at = header_bits + 24;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t span = trial % 2 == 0 ? header_bits : 8 * 64;
        const std::size_t offset = trial % 2 == 0 ? 0 : huffman_at;
        Bits flipped = packed.buffer;
        flipped[offset + rng() % span] ^= 1;
        try {
            const DisassembleResult parsed = disassemble(flipped, 48, 40);
            const GrayImage back = invert_error_image(parsed.error_image);
            // parsing may only succeed if the image still comes back exact
            CHECK(back == img);
        } catch (const CorruptionError&) {
            // expected for nearly every flip
        }
    }
}
