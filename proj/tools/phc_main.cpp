#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "phc/diagram_metrics.hpp"
#include "phc/harness.hpp"
#include "phc/image_io.hpp"
#include "phc/image_metrics.hpp"
#include "phc/jpeg_baseline.hpp"
#include "phc/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

phc::GrayImage load_and_prepare(const std::string& path, int size) {
    phc::GrayImage img = phc::load_gray(path);
    if (size > 0 && (img.width != size || img.height != size)) {
        img = phc::resize(img, size, size);
    }
    return img;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topology-guided frequency retention for grayscale images, with a JPEG comparison arm"};
    app.require_subcommand(1);

    // compress
    std::string in_path, out_path, out_dir, format = "csv";
    double retain = 0.5, sigma = 1.0;
    int size = 128, threads = 1, sample = 0;
    std::uint32_t seed = 0;

    auto* cmd_compress = app.add_subcommand("compress", "Rank frequencies and write a .phc container");
    cmd_compress->add_option("input", in_path, "input image (PNG or JPEG)")->required();
    cmd_compress->add_option("--retain", retain, "fraction of canonical frequencies to keep, (0, 1]");
    cmd_compress->add_option("--size", size, "resize target (0 keeps the source size)");
    cmd_compress->add_option("--threads", threads, "worker threads for the ranking");
    cmd_compress->add_option("--out", out_path, "output container path");

    auto* cmd_decompress = app.add_subcommand("decompress", "Reconstruct a PNG from a .phc container");
    cmd_decompress->add_option("input", in_path, "input .phc container")->required();
    cmd_decompress->add_option("--out", out_path, "output PNG path");

    auto* cmd_rank = app.add_subcommand("rank", "Print the per-frequency importance table");
    cmd_rank->add_option("input", in_path, "input image")->required();
    cmd_rank->add_option("--size", size, "resize target (0 keeps the source size)");
    cmd_rank->add_option("--threads", threads, "worker threads");
    cmd_rank->add_option("--out", out_path, "write the table here instead of stdout");
    cmd_rank->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::string path_b, diagrams_prefix;
    auto* cmd_metrics = app.add_subcommand("metrics", "Six-metric comparison of two images");
    cmd_metrics->add_option("imageA", in_path, "reference image")->required();
    cmd_metrics->add_option("imageB", path_b, "comparison image")->required();
    cmd_metrics->add_option("--size", size, "resize target applied to both (0 keeps source sizes)");
    cmd_metrics->add_option("--sigma", sigma, "Gaussian sigma applied to image B before its diagram");
    cmd_metrics->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd_metrics->add_option("--diagrams", diagrams_prefix, "also write <prefix>_a.csv / <prefix>_b.csv persistence diagrams");

    auto* cmd_compare = app.add_subcommand("compare", "Sweep one image across retained fractions, PH vs JPEG");
    cmd_compare->add_option("input", in_path, "input image")->required();
    cmd_compare->add_option("--size", size, "resize target");
    cmd_compare->add_option("--sigma", sigma, "smoothing sigma for reconstruction diagrams");
    cmd_compare->add_option("--threads", threads, "worker threads");
    cmd_compare->add_option("--out", out_dir, "output directory for CSV, JSON and charts");
    cmd_compare->add_option("--format", format, "csv or json (stdout format)")->check(CLI::IsMember({"csv", "json"}));

    std::vector<std::string> batch_inputs;
    bool timings = false, png_sidecar = false;
    auto* cmd_batch = app.add_subcommand("batch", "Sweep a directory of images and aggregate");
    cmd_batch->add_option("inputs", batch_inputs, "image files or directories")->required();
    cmd_batch->add_option("--size", size, "resize target");
    cmd_batch->add_option("--sigma", sigma, "smoothing sigma for reconstruction diagrams");
    cmd_batch->add_option("--sample", sample, "evaluate a seeded random sample of this many images");
    cmd_batch->add_option("--seed", seed, "RNG seed for sampling");
    cmd_batch->add_option("--threads", threads, "worker threads");
    cmd_batch->add_option("--out", out_dir, "output directory")->required();
    cmd_batch->add_flag("--timings", timings, "record real wall times in the CSV (non-reproducible)");
    cmd_batch->add_flag("--png-sidecar", png_sidecar, "also write reconstructions as PNG files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_compress) {
            phc::GrayImage img = load_and_prepare(in_path, size);
            phc::CompressedImage c = phc::compress(img, retain, threads);
            std::vector<std::uint8_t> bytes = phc::encode(c);
            if (out_path.empty()) out_path = fs::path(in_path).stem().string() + ".phc";
            write_bytes(out_path, bytes);
            std::cout << out_path << ": " << c.entries.size() << " of "
                      << phc::canonical_count(c.width, c.height) << " frequencies, " << bytes.size()
                      << " bytes\n";
        } else if (*cmd_decompress) {
            std::vector<std::uint8_t> bytes = read_bytes(in_path);
            phc::CompressedImage c = phc::decode(bytes);
            phc::GrayImage img = phc::decompress(c);
            if (out_path.empty()) out_path = fs::path(in_path).stem().string() + ".png";
            phc::save_png(img, out_path);
            std::cout << out_path << ": " << img.width << "x" << img.height << "\n";
        } else if (*cmd_rank) {
            phc::GrayImage img = load_and_prepare(in_path, size);
            std::vector<phc::FrequencyScore> table = phc::rank_frequencies(img, threads);
            std::string text;
            if (format == "json") {
                text += "[\n";
                for (std::size_t i = 0; i < table.size(); ++i) {
                    char score[32];
                    if (std::isfinite(table[i].score)) std::snprintf(score, sizeof(score), "%.10g", table[i].score);
                    else std::snprintf(score, sizeof(score), "null");  // DC is pinned, not scored
                    char line[160];
                    std::snprintf(line, sizeof(line),
                                  "  {\"fx\": %d, \"fy\": %d, \"w1\": %.10g, \"weight\": %.10g, \"score\": %s}%s\n",
                                  table[i].freq.fx, table[i].freq.fy, table[i].w1, table[i].weight,
                                  score, i + 1 < table.size() ? "," : "");
                    text += line;
                }
                text += "]\n";
            } else {
                text = "rank,fx,fy,w1,weight,score\n";
                for (std::size_t i = 0; i < table.size(); ++i) {
                    char line[160];
                    std::snprintf(line, sizeof(line), "%zu,%d,%d,%.10g,%.10g,%.10g\n", i,
                                  table[i].freq.fx, table[i].freq.fy, table[i].w1, table[i].weight,
                                  table[i].score);
                    text += line;
                }
            }
            if (out_path.empty()) std::cout << text;
            else write_text(out_path, text);
        } else if (*cmd_metrics) {
            phc::GrayImage a = load_and_prepare(in_path, size);
            phc::GrayImage b = load_and_prepare(path_b, size);
            phc::PersistenceDiagram da = phc::sublevel_diagram(a);
            phc::PersistenceDiagram db = phc::sublevel_diagram(phc::gaussian_smooth(b, sigma));
            double v_mse = phc::mse(a, b);
            double v_ssim = phc::ssim(a, b);
            double v_w1 = phc::wasserstein1(da, db);
            double v_bn = phc::bottleneck(da, db);
            double v_betti = phc::betti_distance(da, db);
            if (!diagrams_prefix.empty()) {
                write_text(diagrams_prefix + "_a.csv", phc::diagram_to_csv(da));
                write_text(diagrams_prefix + "_b.csv", phc::diagram_to_csv(db));
            }
            char line[320];
            if (format == "json") {
                std::snprintf(line, sizeof(line),
                              "{\"mse\": %.10g, \"ssim\": %.10g, \"wasserstein1\": %.10g, "
                              "\"bottleneck\": %.10g, \"betti_distance\": %.10g, "
                              "\"size_a_bytes\": %ju, \"size_b_bytes\": %ju}\n",
                              v_mse, v_ssim, v_w1, v_bn, v_betti,
                              static_cast<std::uintmax_t>(fs::file_size(in_path)),
                              static_cast<std::uintmax_t>(fs::file_size(path_b)));
            } else {
                std::snprintf(line, sizeof(line),
                              "mse,ssim,wasserstein1,bottleneck,betti_distance,size_a_bytes,size_b_bytes\n"
                              "%.10g,%.10g,%.10g,%.10g,%.10g,%ju,%ju\n",
                              v_mse, v_ssim, v_w1, v_bn, v_betti,
                              static_cast<std::uintmax_t>(fs::file_size(in_path)),
                              static_cast<std::uintmax_t>(fs::file_size(path_b)));
            }
            std::cout << line;
        } else if (*cmd_compare) {
            phc::RunConfig config;
            config.inputs = {in_path};
            config.resize_to = size;
            config.sigma = sigma;
            config.threads = threads;
            config.out_dir = out_dir;
            std::vector<phc::MetricsRecord> records = phc::run_single(in_path, config);
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                write_text((fs::path(out_dir) / "metrics.csv").string(), phc::records_to_csv(records));
                write_text((fs::path(out_dir) / "records.json").string(), phc::records_to_json(records));
                phc::write_metric_charts(records, out_dir);
            }
            std::cout << (format == "json" ? phc::records_to_json(records) : phc::records_to_csv(records));
        } else if (*cmd_batch) {
            phc::RunConfig config;
            config.inputs = batch_inputs;
            config.resize_to = size;
            config.sigma = sigma;
            config.sample_count = sample;
            config.seed = seed;
            config.threads = threads;
            config.out_dir = out_dir;
            config.timings = timings;
            config.png_sidecar = png_sidecar;
            phc::BatchResult result = phc::run_batch(config);
            std::cout << "evaluated " << result.images_used.size() << " images, "
                      << result.records.size() << " records -> " << out_dir << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
