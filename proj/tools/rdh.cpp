// Command-line front end for the reversible data hiding pipeline.
//
// Exit codes: 0 success, 2 usage error, 3 capacity/incompressible error,
// 4 corruption or key error, 5 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdh/bench.hpp"
#include "rdh/embedder.hpp"
#include "rdh/errors.hpp"
#include "rdh/metrics.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitCorruption = 4;
constexpr int kExitIo = 5;

struct KeyOption {
    std::string value;
    std::string file;

    rdh::SecretKey resolve(const std::string& label) const {
        if (!value.empty() && !file.empty()) {
            throw CLI::ValidationError(label, "give either a key string or a key file");
        }
        if (!file.empty()) return rdh::SecretKey::from_file(file);
        if (!value.empty()) return rdh::SecretKey(value);
        throw CLI::ValidationError(label, "missing key");
    }
};

void add_key_flags(CLI::App* cmd, const std::string& stem, KeyOption& key) {
    cmd->add_option("--" + stem, key.value, "key material as a string");
    cmd->add_option("--" + stem + "-file", key.file, "file with raw key bytes");
}

std::vector<std::uint8_t> read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rdh::IoError("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return data;
}

void write_binary(const std::string& path, const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rdh::IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw rdh::IoError("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reversible data hiding in encrypted grayscale images"};
    app.require_subcommand(1);

    std::string in_path, out_path, payload_path, a_path, b_path;
    KeyOption image_key, data_key;
    rdh::CodecParams params;

    auto* encode = app.add_subcommand(
        "encode", "reserve room in a cover image and encrypt it");
    encode->add_option("--in", in_path, "cover PGM")->required();
    encode->add_option("--out", out_path, "encrypted PGM")->required();
    add_key_flags(encode, "key-image", image_key);
    encode->add_option("--t", params.t, "rearrangement block side");
    encode->add_option("--lfix", params.l_fix, "short/long run threshold");
    encode->add_option("--lrun", params.l_run, "run length field width");

    auto* embed = app.add_subcommand("embed", "embed a payload into an encrypted image");
    embed->add_option("--in", in_path, "encrypted PGM")->required();
    embed->add_option("--payload", payload_path, "payload file")->required();
    embed->add_option("--out", out_path, "marked PGM")->required();
    add_key_flags(embed, "key-data", data_key);

    auto* extract = app.add_subcommand("extract", "extract the payload");
    extract->add_option("--in", in_path, "marked PGM")->required();
    extract->add_option("--out", out_path, "payload output file")->required();
    add_key_flags(extract, "key-data", data_key);

    auto* recover = app.add_subcommand("recover", "recover the original image");
    recover->add_option("--in", in_path, "marked PGM")->required();
    recover->add_option("--out", out_path, "recovered PGM")->required();
    add_key_flags(recover, "key-image", image_key);

    auto* capacity = app.add_subcommand("capacity", "print the embedding capacity");
    capacity->add_option("--in", in_path, "encrypted PGM")->required();

    auto* metrics = app.add_subcommand("metrics", "MSE and SSIM between two images");
    metrics->add_option("--a", a_path, "first PGM")->required();
    metrics->add_option("--b", b_path, "second PGM")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (encode->parsed()) {
            const rdh::GrayImage cover = rdh::read_pgm(in_path);
            const auto result =
                rdh::owner_encode(cover, image_key.resolve("--key-image"), params);
            rdh::write_pgm(result.image, out_path);
            std::printf("c=%llu\n", static_cast<unsigned long long>(result.capacity));
            std::printf("bpp=%.6f\n",
                        rdh::embedding_rate(result.capacity, cover.rows, cover.cols));
        } else if (embed->parsed()) {
            const rdh::GrayImage enc = rdh::read_pgm(in_path);
            const auto payload = read_binary(payload_path);
            const rdh::GrayImage marked =
                rdh::embed(enc, payload, data_key.resolve("--key-data"));
            rdh::write_pgm(marked, out_path);
            std::printf("embedded_bytes=%zu\n", payload.size());
        } else if (extract->parsed()) {
            const rdh::GrayImage marked = rdh::read_pgm(in_path);
            const auto payload = rdh::extract(marked, data_key.resolve("--key-data"));
            write_binary(out_path, payload);
            std::printf("extracted_bytes=%zu\n", payload.size());
        } else if (recover->parsed()) {
            const rdh::GrayImage marked = rdh::read_pgm(in_path);
            const rdh::GrayImage original =
                rdh::recover(marked, image_key.resolve("--key-image"));
            rdh::write_pgm(original, out_path);
        } else if (capacity->parsed()) {
            const rdh::GrayImage enc = rdh::read_pgm(in_path);
            const std::uint64_t c = rdh::read_capacity(enc);
            std::printf("c=%llu\n", static_cast<unsigned long long>(c));
            std::printf("bpp=%.6f\n", rdh::embedding_rate(c, enc.rows, enc.cols));
        } else if (metrics->parsed()) {
            const rdh::GrayImage a = rdh::read_pgm(a_path);
            const rdh::GrayImage b = rdh::read_pgm(b_path);
            std::printf("mse=%.9f\n", rdh::mse(a, b));
            std::printf("ssim=%.9f\n", rdh::ssim(a, b));
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const rdh::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const rdh::SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const rdh::CapacityError& e) {
        std::cerr << "error: " << e.what() << " (room " << e.room_bits
                  << " bits, payload " << e.payload_bits << " bits)\n";
        return kExitCapacity;
    } catch (const rdh::IncompressibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const rdh::CorruptionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorruption;
    } catch (const rdh::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const rdh::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
