#include "rdh/bitplane.hpp"

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "rdh/errors.hpp"

namespace rdh {

BitPlane extract_plane(std::span<const std::uint8_t> values, std::size_t rows,
                       std::size_t cols, int k) {
    BitPlane plane{rows, cols, k, Bits(values.size())};
    const int shift = k - 1;
    for (std::size_t p = 0; p < values.size(); ++p) {
        plane.bits[p] = static_cast<std::uint8_t>((values[p] >> shift) & 1u);
    }
    return plane;
}

namespace {

std::vector<std::uint32_t> build_permutation(std::size_t rows, std::size_t cols,
                                             std::size_t t, RearrangeMode mode) {
    std::vector<std::uint32_t> perm;
    perm.reserve(rows * cols);

    const std::size_t block_rows = (rows + t - 1) / t;
    const std::size_t block_cols = (cols + t - 1) / t;

    auto emit_block = [&](std::size_t bi, std::size_t bj) {
        const std::size_t i0 = bi * t, j0 = bj * t;
        const std::size_t i1 = std::min(i0 + t, rows), j1 = std::min(j0 + t, cols);
        if (mode.within_block == 0) {
            for (std::size_t i = i0; i < i1; ++i)
                for (std::size_t j = j0; j < j1; ++j)
                    perm.push_back(static_cast<std::uint32_t>(i * cols + j));
        } else {
            for (std::size_t j = j0; j < j1; ++j)
                for (std::size_t i = i0; i < i1; ++i)
                    perm.push_back(static_cast<std::uint32_t>(i * cols + j));
        }
    };

    if (mode.between_blocks == 0) {
        for (std::size_t bi = 0; bi < block_rows; ++bi)
            for (std::size_t bj = 0; bj < block_cols; ++bj) emit_block(bi, bj);
    } else {
        for (std::size_t bj = 0; bj < block_cols; ++bj)
            for (std::size_t bi = 0; bi < block_rows; ++bi) emit_block(bi, bj);
    }
    return perm;
}

}  // namespace

std::shared_ptr<const std::vector<std::uint32_t>> block_permutation(
    std::size_t rows, std::size_t cols, int t, RearrangeMode mode) {
    if (t < 1) {
        throw ParamError("block side must be >= 1, got " + std::to_string(t));
    }
    using Key = std::tuple<std::size_t, std::size_t, int, int>;
    static std::mutex cache_mutex;
    static std::map<Key, std::shared_ptr<const std::vector<std::uint32_t>>> cache;

    const Key key{rows, cols, t, mode.index()};
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto perm = std::make_shared<const std::vector<std::uint32_t>>(
        build_permutation(rows, cols, static_cast<std::size_t>(t), mode));
    cache.emplace(key, perm);
    return perm;
}

Bits rearrange(const BitPlane& plane, int t, RearrangeMode mode) {
    const auto perm = block_permutation(plane.rows, plane.cols, t, mode);
    Bits out(plane.bits.size());
    for (std::size_t pos = 0; pos < out.size(); ++pos) {
        out[pos] = plane.bits[(*perm)[pos]];
    }
    return out;
}

BitPlane inverse_rearrange(const Bits& seq, int t, RearrangeMode mode,
                           std::size_t rows, std::size_t cols, int k) {
    if (seq.size() != rows * cols) {
        throw SizeError("sequence length " + std::to_string(seq.size()) +
                        " does not match " + std::to_string(rows) + "x" +
                        std::to_string(cols));
    }
    const auto perm = block_permutation(rows, cols, t, mode);
    BitPlane plane{rows, cols, k, Bits(seq.size())};
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
        plane.bits[(*perm)[pos]] = seq[pos];
    }
    return plane;
}

double adjacent_agreement(const Bits& bits) {
    if (bits.size() < 2) return 1.0;
    std::size_t same = 0;
    for (std::size_t i = 1; i < bits.size(); ++i) {
        same += bits[i] == bits[i - 1];
    }
    return static_cast<double>(same) / static_cast<double>(bits.size() - 1);
}

}  // namespace rdh
