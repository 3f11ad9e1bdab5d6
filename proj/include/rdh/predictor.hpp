#pragma once

#include <cstdint>
#include <vector>

#include "rdh/image.hpp"

namespace rdh {

/// Sign-magnitude processed prediction errors of one image.
///
/// Pixels in the first row and first column are reference pixels and are
/// carried verbatim in `eprime`. At positions where the prediction error
/// falls outside [-127, 127] the original pixel value is stored instead and
/// the raster index is appended to `overflow_positions`. Everywhere else
/// eprime packs the error as: bit 8 = sign (1 for negative), bits 1..7 = |e|.
struct ErrorImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> eprime;
    std::vector<std::size_t> overflow_positions;  // strictly ascending

    std::size_t pixel_count() const { return rows * cols; }
};

/// Median edge detector. x1 = upper-left, x2 = left, x3 = top neighbor.
/// The gradient branch (x2 + x3 - x1) is intentionally not clamped to
/// [0, 255]; extreme values surface as overflow errors downstream.
int med_predict(int x1, int x2, int x3);

/// Scans the image in raster order and produces its processed error image.
ErrorImage compute_error_image(const GrayImage& img);

/// Exact inverse of compute_error_image. Throws CorruptionError when a
/// decoded pixel leaves [0, 255] or an impossible code (the "-0" value 128)
/// appears at a non-reference, non-overflow position.
GrayImage invert_error_image(const ErrorImage& err);

}  // namespace rdh
