#pragma once

#include <cstdint>

#include "rdh/image.hpp"

namespace rdh {

/// Mean squared error. Throws SizeError on dimension mismatch.
double mse(const GrayImage& a, const GrayImage& b);

/// Mean structural similarity over 8x8 uniform sliding windows, stride 1,
/// C1 = (0.01*255)^2, C2 = (0.03*255)^2. Requires min(rows, cols) >= 8.
double ssim(const GrayImage& a, const GrayImage& b);

/// Embedding rate in bits per pixel.
double embedding_rate(std::uint64_t capacity_bits, std::size_t rows, std::size_t cols);

}  // namespace rdh
