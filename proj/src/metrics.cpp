#include "rdh/metrics.hpp"

#include <array>
#include <string>
#include <vector>

#include "rdh/errors.hpp"

namespace rdh {

namespace {

void check_same_size(const GrayImage& a, const GrayImage& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw SizeError("image dimensions differ: " + std::to_string(a.rows) + "x" +
                        std::to_string(a.cols) + " vs " + std::to_string(b.rows) +
                        "x" + std::to_string(b.cols));
    }
}

// Integral images (zero top row / left column) of a, b, a^2, b^2, a*b.
struct MomentSums {
    std::size_t stride = 0;
    std::array<std::vector<std::uint64_t>, 5> tables;

    MomentSums(const GrayImage& a, const GrayImage& b) {
        const std::size_t rows = a.rows, cols = a.cols;
        stride = cols + 1;
        for (auto& t : tables) t.assign((rows + 1) * stride, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                const std::uint64_t x = a.pixels[i * cols + j];
                const std::uint64_t y = b.pixels[i * cols + j];
                const std::uint64_t values[5] = {x, y, x * x, y * y, x * y};
                for (int v = 0; v < 5; ++v) {
                    auto& t = tables[static_cast<std::size_t>(v)];
                    t[(i + 1) * stride + (j + 1)] = values[v] + t[i * stride + (j + 1)] +
                                                    t[(i + 1) * stride + j] -
                                                    t[i * stride + j];
                }
            }
        }
    }

    std::uint64_t window(int which, std::size_t i, std::size_t j, std::size_t w) const {
        const auto& t = tables[static_cast<std::size_t>(which)];
        return t[(i + w) * stride + (j + w)] - t[i * stride + (j + w)] -
               t[(i + w) * stride + j] + t[i * stride + j];
    }
};

}  // namespace

double mse(const GrayImage& a, const GrayImage& b) {
    check_same_size(a, b);
    std::uint64_t acc = 0;
    for (std::size_t p = 0; p < a.pixels.size(); ++p) {
        const std::int64_t d = static_cast<std::int64_t>(a.pixels[p]) - b.pixels[p];
        acc += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(acc) / static_cast<double>(a.pixel_count());
}

double ssim(const GrayImage& a, const GrayImage& b) {
    check_same_size(a, b);
    constexpr std::size_t kWindow = 8;
    if (a.rows < kWindow || a.cols < kWindow) {
        throw SizeError("ssim needs at least an 8x8 image");
    }
    constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
    constexpr double kN = static_cast<double>(kWindow * kWindow);

    const MomentSums sums(a, b);
    double total = 0.0;
    std::size_t windows = 0;
    for (std::size_t i = 0; i + kWindow <= a.rows; ++i) {
        for (std::size_t j = 0; j + kWindow <= a.cols; ++j) {
            const double sa = static_cast<double>(sums.window(0, i, j, kWindow));
            const double sb = static_cast<double>(sums.window(1, i, j, kWindow));
            const double saa = static_cast<double>(sums.window(2, i, j, kWindow));
            const double sbb = static_cast<double>(sums.window(3, i, j, kWindow));
            const double sab = static_cast<double>(sums.window(4, i, j, kWindow));

            const double mu_a = sa / kN;
            const double mu_b = sb / kN;
            const double var_a = saa / kN - mu_a * mu_a;
            const double var_b = sbb / kN - mu_b * mu_b;
            const double cov = sab / kN - mu_a * mu_b;

            const double num = (2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2);
            const double den = (mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2);
            total += num / den;
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

double embedding_rate(std::uint64_t capacity_bits, std::size_t rows, std::size_t cols) {
    return static_cast<double>(capacity_bits) / static_cast<double>(rows * cols);
}

}  // namespace rdh
