#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdh/codec.hpp"

namespace rdh {

struct CorpusRecord {
    std::string name;
    bool ok = false;
    std::string error;          // set when !ok
    std::uint64_t capacity = 0; // bits
    double bpp = 0.0;
    double mse_value = 0.0;
    double ssim_value = 0.0;
    double elapsed_seconds = 0.0;
};

struct CorpusSummary {
    std::vector<CorpusRecord> records;  // ordered by filename
    double mean_bpp = 0.0;              // over successful images
    std::size_t failures = 0;
};

/// Runs the full pipeline (encode, embed a capacity-filling payload,
/// extract, recover) on every PGM in the directory and verifies exact
/// reversibility per image. Per-image failures are recorded and the run
/// continues. jobs = 0 picks the hardware concurrency.
CorpusSummary run_corpus(const std::string& dir, const CodecParams& params,
                         unsigned jobs = 0);

struct SweepSpec {
    std::string corpus_dir;
    std::vector<int> t_values;
    std::vector<int> l_fix_values;
    std::vector<int> l_run_values;
    std::string csv_path;  // empty = do not write
    unsigned jobs = 0;
};

struct SweepCell {
    int t = 0;
    int l_fix = 0;
    int l_run = 0;
    double mean_bpp = 0.0;
    std::size_t images = 0;
    std::size_t failures = 0;
};

/// Capacity grid over the parameter lists, one cell per combination.
/// Each cell's mean bpp equals what a single encode with those parameters
/// reports per image. Writes CSV with header
/// t,lfix,lrun,mean_bpp,images,failures when csv_path is set.
std::vector<SweepCell> sweep(const SweepSpec& spec);

}  // namespace rdh
