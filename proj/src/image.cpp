#include "rdh/image.hpp"

#include <cctype>
#include <fstream>
#include <limits>

#include "rdh/errors.hpp"

namespace rdh {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
    if (rows < 2 || cols < 2) {
        throw SizeError("image dimensions must be at least 2x2, got " +
                        std::to_string(rows) + "x" + std::to_string(cols));
    }
}

// Skips whitespace and '#' comment lines, then reads one unsigned decimal.
std::size_t read_header_uint(std::istream& in, const std::string& path) {
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (ch == EOF || !std::isdigit(ch)) {
        throw FormatError(path + ": malformed PGM header");
    }
    std::size_t value = 0;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + static_cast<std::size_t>(ch - '0');
        if (value > std::numeric_limits<std::uint32_t>::max()) {
            throw FormatError(path + ": header value out of range");
        }
        ch = in.get();
    }
    return value;
}

}  // namespace

GrayImage::GrayImage(std::size_t rows_, std::size_t cols_, std::uint8_t fill)
    : rows(rows_), cols(cols_), pixels(rows_ * cols_, fill) {
    check_dims(rows, cols);
}

GrayImage::GrayImage(std::size_t rows_, std::size_t cols_, std::vector<std::uint8_t> data)
    : rows(rows_), cols(cols_), pixels(std::move(data)) {
    check_dims(rows, cols);
    if (pixels.size() != rows * cols) {
        throw SizeError("pixel count " + std::to_string(pixels.size()) +
                        " does not match " + std::to_string(rows) + "x" +
                        std::to_string(cols));
    }
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    if (in.get() != 'P' || in.get() != '5') {
        throw FormatError(path + ": not a binary PGM (P5) file");
    }
    const std::size_t width = read_header_uint(in, path);
    const std::size_t height = read_header_uint(in, path);
    const std::size_t maxval = read_header_uint(in, path);
    if (maxval != 255) {
        throw FormatError(path + ": unsupported maxval " + std::to_string(maxval) +
                          ", only 8-bit images (maxval 255) are supported");
    }
    // The single whitespace byte after maxval was already consumed by the
    // header reader's final get().
    check_dims(height, width);
    std::vector<std::uint8_t> data(width * height);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (static_cast<std::size_t>(in.gcount()) != data.size()) {
        throw IoError(path + ": truncated pixel data");
    }
    return GrayImage(height, width, std::move(data));
}

void write_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << "P5\n" << img.cols << " " << img.rows << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) {
        throw IoError("cannot write " + path);
    }
}

Bits to_bit_buffer(const GrayImage& img) {
    const std::size_t mn = img.pixel_count();
    Bits buf(8 * mn);
    std::size_t q = 0;
    for (int k = 8; k >= 1; --k) {
        const int shift = k - 1;
        for (std::size_t p = 0; p < mn; ++p) {
            buf[q++] = static_cast<std::uint8_t>((img.pixels[p] >> shift) & 1u);
        }
    }
    return buf;
}

GrayImage from_bit_buffer(const Bits& buf, std::size_t rows, std::size_t cols) {
    const std::size_t mn = rows * cols;
    if (buf.size() != 8 * mn) {
        throw SizeError("bit buffer length " + std::to_string(buf.size()) +
                        " does not match 8*" + std::to_string(mn));
    }
    GrayImage img(rows, cols);
    std::size_t q = 0;
    for (int k = 8; k >= 1; --k) {
        const int shift = k - 1;
        for (std::size_t p = 0; p < mn; ++p) {
            img.pixels[p] |= static_cast<std::uint8_t>(buf[q++] << shift);
        }
    }
    return img;
}

}  // namespace rdh
