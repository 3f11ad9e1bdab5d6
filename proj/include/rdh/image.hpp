#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdh/bits.hpp"

namespace rdh {

/// 8-bit grayscale raster. `rows` x `cols` pixels in row-major order.
/// Both dimensions must be at least 2 (the predictor needs a reference
/// row and column).
struct GrayImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(std::size_t rows, std::size_t cols, std::uint8_t fill = 0);
    GrayImage(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> data);

    std::size_t pixel_count() const { return rows * cols; }

    std::uint8_t at(std::size_t i, std::size_t j) const { return pixels[i * cols + j]; }
    std::uint8_t& at(std::size_t i, std::size_t j) { return pixels[i * cols + j]; }

    bool operator==(const GrayImage&) const = default;
};

/// Reads a binary PGM (P5) file with maxval 255. Comment lines are tolerated.
GrayImage read_pgm(const std::string& path);

/// Writes a binary PGM (P5) file. read_pgm(write_pgm(img)) == img bit-exactly.
void write_pgm(const GrayImage& img, const std::string& path);

/// Expands an image into its 8*rows*cols bit buffer: plane 8 (MSB) first
/// down to plane 1 (LSB), raster order within each plane. Bit k of pixel p
/// lives at buffer position (8-k)*rows*cols + p.
Bits to_bit_buffer(const GrayImage& img);

/// Inverse of to_bit_buffer. The buffer length must be exactly 8*rows*cols.
GrayImage from_bit_buffer(const Bits& buf, std::size_t rows, std::size_t cols);

}  // namespace rdh
