#include "rdh/predictor.hpp"

#include <algorithm>
#include <string>

#include "rdh/errors.hpp"

namespace rdh {

int med_predict(int x1, int x2, int x3) {
    const int lo = std::min(x2, x3);
    const int hi = std::max(x2, x3);
    if (x1 <= lo) return hi;
    if (x1 >= hi) return lo;
    return x2 + x3 - x1;
}

ErrorImage compute_error_image(const GrayImage& img) {
    ErrorImage err;
    err.rows = img.rows;
    err.cols = img.cols;
    err.eprime.resize(img.pixel_count());

    for (std::size_t i = 0; i < img.rows; ++i) {
        for (std::size_t j = 0; j < img.cols; ++j) {
            const std::size_t p = i * img.cols + j;
            const int x = img.pixels[p];
            if (i == 0 || j == 0) {
                err.eprime[p] = static_cast<std::uint8_t>(x);  // reference pixel
                continue;
            }
            const int px = med_predict(img.at(i - 1, j - 1), img.at(i, j - 1),
                                       img.at(i - 1, j));
            const int e = x - px;
            if (e < -127 || e > 127) {
                err.eprime[p] = static_cast<std::uint8_t>(x);
                err.overflow_positions.push_back(p);
            } else {
                const int mag = e < 0 ? -e : e;
                err.eprime[p] = static_cast<std::uint8_t>((e < 0 ? 0x80 : 0) | mag);
            }
        }
    }
    return err;
}

GrayImage invert_error_image(const ErrorImage& err) {
    GrayImage img(err.rows, err.cols);
    std::size_t next_overflow = 0;

    for (std::size_t i = 0; i < err.rows; ++i) {
        for (std::size_t j = 0; j < err.cols; ++j) {
            const std::size_t p = i * err.cols + j;
            const int ep = err.eprime[p];
            if (i == 0 || j == 0) {
                img.pixels[p] = static_cast<std::uint8_t>(ep);
                continue;
            }
            if (next_overflow < err.overflow_positions.size() &&
                err.overflow_positions[next_overflow] == p) {
                img.pixels[p] = static_cast<std::uint8_t>(ep);
                ++next_overflow;
                continue;
            }
            if (ep == 0x80) {
                throw CorruptionError("impossible error code 128 at pixel " +
                                      std::to_string(p));
            }
            const int e = (ep & 0x80) ? -(ep & 0x7F) : ep;
            const int px = med_predict(img.at(i - 1, j - 1), img.at(i, j - 1),
                                       img.at(i - 1, j));
            const int x = px + e;
            if (x < 0 || x > 255) {
                throw CorruptionError("decoded pixel " + std::to_string(x) +
                                      " out of range at index " + std::to_string(p));
            }
            img.pixels[p] = static_cast<std::uint8_t>(x);
        }
    }
    return img;
}

}  // namespace rdh
