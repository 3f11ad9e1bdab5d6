#include "rdh/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "rdh/container.hpp"
#include "rdh/crypto.hpp"
#include "rdh/embedder.hpp"
#include "rdh/errors.hpp"
#include "rdh/image.hpp"
#include "rdh/metrics.hpp"
#include "rdh/predictor.hpp"

namespace rdh {

namespace {

std::vector<std::filesystem::path> list_pgms(const std::string& dir) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path());
        }
    }
    if (ec) {
        throw IoError("cannot list directory " + dir + ": " + ec.message());
    }
    std::sort(files.begin(), files.end());
    return files;
}

unsigned worker_count(unsigned jobs) {
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Deterministic per-image payload so runs are reproducible.
std::vector<std::uint8_t> test_payload(const std::string& name, std::size_t bytes) {
    std::seed_seq seed(name.begin(), name.end());
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> payload(bytes);
    for (auto& byte : payload) {
        byte = static_cast<std::uint8_t>(rng());
    }
    return payload;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            fn(i);
        }
    };
    const unsigned n = std::min<std::size_t>(worker_count(jobs), count);
    std::vector<std::thread> threads;
    for (unsigned w = 1; w < n; ++w) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
}

CorpusRecord run_one(const std::filesystem::path& path, const CodecParams& params) {
    CorpusRecord rec;
    rec.name = path.filename().string();
    const auto start = std::chrono::steady_clock::now();
    try {
        const GrayImage cover = read_pgm(path.string());
        const SecretKey image_key("bench-image-key:" + rec.name);
        const SecretKey data_key("bench-data-key:" + rec.name);

        const OwnerResult owned = owner_encode(cover, image_key, params);
        rec.capacity = owned.capacity;
        rec.bpp = embedding_rate(owned.capacity, cover.rows, cover.cols);

        const std::size_t bytes = static_cast<std::size_t>(
            payload_room_bits(owned.capacity, cover.pixel_count()) / 8);
        const auto payload = test_payload(rec.name, bytes);
        const GrayImage marked = embed(owned.image, payload, data_key);

        if (extract(marked, data_key) != payload) {
            throw Error("extracted payload differs");
        }
        const GrayImage recovered = recover(marked, image_key);
        rec.mse_value = mse(cover, recovered);
        rec.ssim_value = ssim(cover, recovered);
        if (recovered != cover || rec.mse_value != 0.0 || rec.ssim_value != 1.0) {
            throw Error("recovered image differs from cover");
        }
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
    }
    rec.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace

CorpusSummary run_corpus(const std::string& dir, const CodecParams& params,
                         unsigned jobs) {
    const auto files = list_pgms(dir);
    if (files.empty()) {
        throw IoError("no PGM files in " + dir);
    }
    CorpusSummary summary;
    summary.records.resize(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) {
        summary.records[i] = run_one(files[i], params);
    });

    double bpp_sum = 0.0;
    std::size_t ok = 0;
    for (const CorpusRecord& rec : summary.records) {
        if (rec.ok) {
            bpp_sum += rec.bpp;
            ++ok;
        } else {
            ++summary.failures;
        }
    }
    summary.mean_bpp = ok > 0 ? bpp_sum / static_cast<double>(ok) : 0.0;
    return summary;
}

std::vector<SweepCell> sweep(const SweepSpec& spec) {
    if (spec.t_values.empty() || spec.l_fix_values.empty() || spec.l_run_values.empty()) {
        throw ParamError("sweep needs at least one value per parameter");
    }
    const auto files = list_pgms(spec.corpus_dir);
    if (files.empty()) {
        throw IoError("no PGM files in " + spec.corpus_dir);
    }

    // Capacity depends only on the owner-side packing, so cells are evaluated
    // without the encryption round trip; run_corpus covers reversibility.
    std::vector<ErrorImage> errors(files.size());
    std::vector<std::string> names(files.size());
    parallel_for(files.size(), spec.jobs, [&](std::size_t i) {
        names[i] = files[i].filename().string();
        errors[i] = compute_error_image(read_pgm(files[i].string()));
    });

    std::vector<SweepCell> cells;
    for (int t : spec.t_values) {
        for (int l_fix : spec.l_fix_values) {
            for (int l_run : spec.l_run_values) {
                const CodecParams params{t, l_fix, l_run};
                SweepCell cell{t, l_fix, l_run, 0.0, files.size(), 0};
                std::vector<double> bpp(files.size(), -1.0);
                parallel_for(files.size(), spec.jobs, [&](std::size_t i) {
                    try {
                        const AssembleResult packed = assemble(errors[i], params);
                        bpp[i] = embedding_rate(packed.capacity, errors[i].rows,
                                                errors[i].cols);
                    } catch (const std::exception&) {
                        bpp[i] = -1.0;
                    }
                });
                double sum = 0.0;
                std::size_t ok = 0;
                for (double value : bpp) {
                    if (value >= 0.0) {
                        sum += value;
                        ++ok;
                    } else {
                        ++cell.failures;
                    }
                }
                cell.mean_bpp = ok > 0 ? sum / static_cast<double>(ok) : 0.0;
                cells.push_back(cell);
            }
        }
    }

    if (!spec.csv_path.empty()) {
        std::ofstream csv(spec.csv_path);
        if (!csv) {
            throw IoError("cannot write " + spec.csv_path);
        }
        csv << "t,lfix,lrun,mean_bpp,images,failures\n";
        for (const SweepCell& cell : cells) {
            csv << cell.t << ',' << cell.l_fix << ',' << cell.l_run << ','
                << cell.mean_bpp << ',' << cell.images << ',' << cell.failures << '\n';
        }
    }
    return cells;
}

}  // namespace rdh
