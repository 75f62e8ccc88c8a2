#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phc/image.hpp"

namespace phc {

// One evaluation row: a method (PH or JPEG) applied to one image at one
// retention level, with the six comparison metrics.
struct MetricsRecord {
    std::string image;
    std::string method;  // "PH" or "JPEG"
    double alpha = 0.0;
    int quality = 0;  // quality_for(alpha)
    double mse = 0.0;
    double ssim = 0.0;
    double wasserstein1 = 0.0;
    double bottleneck = 0.0;
    double betti_distance = 0.0;
    std::uint64_t file_size_bytes = 0;
    double wall_time_ms = 0.0;
};

struct RunConfig {
    std::vector<std::string> inputs;      // image files or directories
    int resize_to = 128;
    std::vector<double> alphas;           // empty means the default sweep
    double sigma = 1.0;
    int sample_count = 0;                 // 0 keeps every input
    std::uint32_t seed = 0;
    std::string out_dir;
    int threads = 1;
    bool timings = false;                 // real wall times make CSVs non-reproducible
    bool png_sidecar = false;             // also write reconstructions as PNG and report their sizes
};

// 0.05, 0.10, ..., 0.95.
std::vector<double> default_alpha_sweep();

// PH and JPEG records for every alpha of the sweep. The frequency ranking
// is computed once and shared across alphas.
std::vector<MetricsRecord> evaluate_image(const GrayImage& img, const std::string& id,
                                          const RunConfig& config);

// Loads, grayscales, resizes, then evaluates.
std::vector<MetricsRecord> run_single(const std::string& path, const RunConfig& config);

struct BatchResult {
    std::vector<MetricsRecord> records;
    std::vector<std::string> images_used;
};

// Samples from the expanded input list with the seeded RNG, evaluates every
// image, and writes metrics.csv, summary.json and one SVG chart per metric
// into out_dir. Deterministic for a fixed (inputs, seed) regardless of the
// thread count.
BatchResult run_batch(const RunConfig& config);

std::string records_to_csv(std::span<const MetricsRecord> records);
std::string records_to_json(std::span<const MetricsRecord> records);

// Mean and median of each metric per (method, alpha).
std::string aggregate_json(std::span<const MetricsRecord> records);

// Minimal static line chart, one series per method.
std::string metric_chart_svg(std::span<const MetricsRecord> records, const std::string& metric);

// All six charts under dir as <metric>.svg.
void write_metric_charts(std::span<const MetricsRecord> records, const std::string& dir);

}  // namespace phc
