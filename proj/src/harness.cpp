#include "phc/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "phc/diagram_metrics.hpp"
#include "phc/image_io.hpp"
#include "phc/image_metrics.hpp"
#include "phc/jpeg_baseline.hpp"
#include "phc/parallel.hpp"
#include "phc/pipeline.hpp"

namespace fs = std::filesystem;

namespace phc {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

const char* kCsvHeader = "image,method,alpha,quality,mse,ssim,wasserstein1,bottleneck,betti_distance,file_size_bytes,wall_time_ms";

// PNG and JPEG files under a directory, or the path itself.
void expand_input(const std::string& input, std::vector<std::string>& out) {
    fs::path p(input);
    if (fs::is_directory(p)) {
        std::vector<std::string> found;
        for (const auto& entry : fs::directory_iterator(p)) {
            if (!entry.is_regular_file()) continue;
            std::string ext = entry.path().extension().string();
            for (auto& ch : ext) ch = static_cast<char>(std::tolower(ch));
            if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") {
                found.push_back(entry.path().string());
            }
        }
        std::sort(found.begin(), found.end());
        out.insert(out.end(), found.begin(), found.end());
    } else {
        out.push_back(input);
    }
}

}  // namespace

std::vector<double> default_alpha_sweep() {
    std::vector<double> alphas;
    for (int i = 1; i <= 19; ++i) alphas.push_back(i * 0.05);
    return alphas;
}

std::vector<MetricsRecord> evaluate_image(const GrayImage& img, const std::string& id,
                                          const RunConfig& config) {
    const std::vector<double>& alphas = config.alphas.empty() ? default_alpha_sweep() : config.alphas;
    for (double a : alphas) {
        if (!(a > 0.0) || a > 1.0) throw std::invalid_argument("alpha sweep values must be in (0, 1]");
    }

    const Spectrum spec = dft2(img);
    const PersistenceDiagram d_orig = sublevel_diagram(img);
    const std::vector<FrequencyScore> ranking = rank_frequencies(img, config.threads);

    std::vector<MetricsRecord> records;
    records.reserve(alphas.size() * 2);
    for (double alpha : alphas) {
        {
            auto t0 = std::chrono::steady_clock::now();
            CompressedImage c = compress_ranked(img, spec, ranking, alpha);
            GrayImage recon = decompress(c);
            PersistenceDiagram d_recon = sublevel_diagram(gaussian_smooth(recon, config.sigma));
            std::vector<std::uint8_t> container = encode(c);

            MetricsRecord rec;
            rec.image = id;
            rec.method = "PH";
            rec.alpha = alpha;
            rec.quality = quality_for(alpha);
            rec.mse = mse(img, recon);
            rec.ssim = ssim(img, recon);
            rec.wasserstein1 = wasserstein1(d_orig, d_recon);
            rec.bottleneck = bottleneck(d_orig, d_recon);
            rec.betti_distance = betti_distance(d_orig, d_recon);
            rec.file_size_bytes = container.size();
            rec.wall_time_ms = config.timings ? elapsed_ms(t0) : 0.0;
            records.push_back(std::move(rec));

            if (config.png_sidecar && !config.out_dir.empty()) {
                char name[64];
                std::snprintf(name, sizeof(name), "_ph_%03d.png", static_cast<int>(std::lround(alpha * 100)));
                save_png(recon, (fs::path(config.out_dir) / (id + name)).string());
            }
        }
        {
            auto t0 = std::chrono::steady_clock::now();
            JpegResult jr = jpeg_roundtrip(img, quality_for(alpha));
            // same smoothing protocol as the PH arm, so the diagram metrics
            // compare the two codecs under identical conditions
            PersistenceDiagram d_jpeg = sublevel_diagram(gaussian_smooth(jr.decoded, config.sigma));

            MetricsRecord rec;
            rec.image = id;
            rec.method = "JPEG";
            rec.alpha = alpha;
            rec.quality = jr.quality;
            rec.mse = mse(img, jr.decoded);
            rec.ssim = ssim(img, jr.decoded);
            rec.wasserstein1 = wasserstein1(d_orig, d_jpeg);
            rec.bottleneck = bottleneck(d_orig, d_jpeg);
            rec.betti_distance = betti_distance(d_orig, d_jpeg);
            rec.file_size_bytes = jr.encoded_size;
            rec.wall_time_ms = config.timings ? elapsed_ms(t0) : 0.0;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<MetricsRecord> run_single(const std::string& path, const RunConfig& config) {
    GrayImage img = load_gray(path);
    if (config.resize_to > 0 && (img.width != config.resize_to || img.height != config.resize_to)) {
        img = resize(img, config.resize_to, config.resize_to);
    }
    return evaluate_image(img, fs::path(path).stem().string(), config);
}

BatchResult run_batch(const RunConfig& config) {
    std::vector<std::string> files;
    for (const auto& input : config.inputs) expand_input(input, files);
    if (files.empty()) throw std::runtime_error("no input images found");

    // Seeded sample of the sorted file list. Fisher-Yates with an explicit
    // modulo draw keeps the choice identical across platforms.
    if (config.sample_count > 0 && static_cast<std::size_t>(config.sample_count) < files.size()) {
        std::mt19937 rng(config.seed);
        for (std::size_t i = 0; i < static_cast<std::size_t>(config.sample_count); ++i) {
            std::size_t j = i + rng() % (files.size() - i);
            std::swap(files[i], files[j]);
        }
        files.resize(config.sample_count);
        std::sort(files.begin(), files.end());
    }

    if (!config.out_dir.empty()) fs::create_directories(config.out_dir);

    // Parallel across images; per-frequency parallelism handles the
    // single-image case. Records land in slot order, so output bytes do not
    // depend on the thread count.
    std::vector<std::vector<MetricsRecord>> per_image(files.size());
    std::vector<std::string> failures(files.size());
    if (files.size() > 1) {
        RunConfig inner = config;
        inner.threads = 1;
        parallel_for(files.size(), config.threads, [&](std::size_t i) {
            try {
                per_image[i] = run_single(files[i], inner);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        });
    } else {
        try {
            per_image[0] = run_single(files[0], config);
        } catch (const std::exception& e) {
            failures[0] = e.what();
        }
    }

    BatchResult result;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!failures[i].empty()) {
            std::cerr << "warning: skipping " << files[i] << ": " << failures[i] << "\n";
            continue;
        }
        result.images_used.push_back(files[i]);
        result.records.insert(result.records.end(), per_image[i].begin(), per_image[i].end());
    }
    if (result.records.empty()) throw std::runtime_error("every input image failed to process");

    if (!config.out_dir.empty()) {
        fs::create_directories(config.out_dir);
        std::ofstream csv(fs::path(config.out_dir) / "metrics.csv", std::ios::binary);
        csv << records_to_csv(result.records);
        std::ofstream json(fs::path(config.out_dir) / "summary.json", std::ios::binary);
        json << aggregate_json(result.records);
        write_metric_charts(result.records, config.out_dir);

        if (config.png_sidecar) {
            // the alternative file-size reading: the reconstruction stored as PNG
            std::ofstream sizes(fs::path(config.out_dir) / "png_sizes.csv", std::ios::binary);
            sizes << "image,alpha,png_size_bytes\n";
            for (const auto& r : result.records) {
                if (r.method != "PH") continue;
                char name[64];
                std::snprintf(name, sizeof(name), "_ph_%03d.png", static_cast<int>(std::lround(r.alpha * 100)));
                fs::path png = fs::path(config.out_dir) / (r.image + name);
                if (fs::exists(png)) {
                    sizes << r.image << "," << fmt_double(r.alpha) << "," << fs::file_size(png) << "\n";
                }
            }
        }
    }
    return result;
}

std::string records_to_csv(std::span<const MetricsRecord> records) {
    std::string out = kCsvHeader;
    out += "\n";
    for (const auto& r : records) {
        out += r.image + "," + r.method + "," + fmt_double(r.alpha) + "," + std::to_string(r.quality) +
               "," + fmt_double(r.mse) + "," + fmt_double(r.ssim) + "," + fmt_double(r.wasserstein1) +
               "," + fmt_double(r.bottleneck) + "," + fmt_double(r.betti_distance) + "," +
               std::to_string(r.file_size_bytes) + "," + fmt_double(r.wall_time_ms) + "\n";
    }
    return out;
}

namespace {

nlohmann::ordered_json record_json(const MetricsRecord& r) {
    return nlohmann::ordered_json{
        {"image", r.image},
        {"method", r.method},
        {"alpha", r.alpha},
        {"quality", r.quality},
        {"mse", r.mse},
        {"ssim", r.ssim},
        {"wasserstein1", r.wasserstein1},
        {"bottleneck", r.bottleneck},
        {"betti_distance", r.betti_distance},
        {"file_size_bytes", r.file_size_bytes},
        {"wall_time_ms", r.wall_time_ms},
    };
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string records_to_json(std::span<const MetricsRecord> records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) arr.push_back(record_json(r));
    return arr.dump(2) + "\n";
}

std::string aggregate_json(std::span<const MetricsRecord> records) {
    // group by (method, alpha)
    std::map<std::pair<std::string, double>, std::vector<const MetricsRecord*>> groups;
    for (const auto& r : records) groups[{r.method, r.alpha}].push_back(&r);

    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [key, rows] : groups) {
        nlohmann::ordered_json entry;
        entry["method"] = key.first;
        entry["alpha"] = key.second;
        entry["count"] = rows.size();
        auto stat = [&](const char* name, auto getter) {
            std::vector<double> values;
            values.reserve(rows.size());
            for (const auto* r : rows) values.push_back(getter(*r));
            entry[std::string(name) + "_mean"] = mean_of(values);
            entry[std::string(name) + "_median"] = median_of(values);
        };
        stat("mse", [](const MetricsRecord& r) { return r.mse; });
        stat("ssim", [](const MetricsRecord& r) { return r.ssim; });
        stat("wasserstein1", [](const MetricsRecord& r) { return r.wasserstein1; });
        stat("bottleneck", [](const MetricsRecord& r) { return r.bottleneck; });
        stat("betti_distance", [](const MetricsRecord& r) { return r.betti_distance; });
        stat("file_size_bytes", [](const MetricsRecord& r) { return static_cast<double>(r.file_size_bytes); });
        arr.push_back(entry);
    }
    return arr.dump(2) + "\n";
}

namespace {

double metric_value(const MetricsRecord& r, const std::string& metric) {
    if (metric == "mse") return r.mse;
    if (metric == "ssim") return r.ssim;
    if (metric == "wasserstein1") return r.wasserstein1;
    if (metric == "bottleneck") return r.bottleneck;
    if (metric == "betti_distance") return r.betti_distance;
    if (metric == "file_size_bytes") return static_cast<double>(r.file_size_bytes);
    throw std::invalid_argument("unknown metric: " + metric);
}

}  // namespace

std::string metric_chart_svg(std::span<const MetricsRecord> records, const std::string& metric) {
    // mean metric per alpha, one polyline per method
    std::map<std::string, std::map<double, std::vector<double>>> series;
    for (const auto& r : records) series[r.method][r.alpha].push_back(metric_value(r, metric));

    const double width = 640, height = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::map<std::string, std::vector<std::pair<double, double>>> lines;
    for (const auto& [method, by_alpha] : series) {
        for (const auto& [alpha, values] : by_alpha) {
            double m = mean_of(values);
            lines[method].emplace_back(alpha, m);
            xmin = std::min(xmin, alpha);
            xmax = std::max(xmax, alpha);
            ymin = std::min(ymin, m);
            ymax = std::max(ymax, m);
        }
    }
    if (lines.empty()) throw std::invalid_argument("no records to chart");
    if (ymax == ymin) ymax = ymin + 1.0;
    if (xmax == xmin) xmax = xmin + 1.0;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_double(width) +
                      "\" height=\"" + fmt_double(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt_double(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           metric + " vs retained fraction</text>\n";
    // axes
    svg += "<line x1=\"" + fmt_double(ml) + "\" y1=\"" + fmt_double(height - mb) + "\" x2=\"" +
           fmt_double(width - mr) + "\" y2=\"" + fmt_double(height - mb) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt_double(ml) + "\" y1=\"" + fmt_double(mt) + "\" x2=\"" + fmt_double(ml) +
           "\" y2=\"" + fmt_double(height - mb) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double xv = xmin + (xmax - xmin) * i / 4.0;
        double yv = ymin + (ymax - ymin) * i / 4.0;
        svg += "<text x=\"" + fmt_double(px(xv)) + "\" y=\"" + fmt_double(height - mb + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + fmt_double(xv) + "</text>\n";
        svg += "<text x=\"" + fmt_double(ml - 6) + "\" y=\"" + fmt_double(py(yv) + 4) +
               "\" text-anchor=\"end\" font-size=\"11\">" + fmt_double(yv) + "</text>\n";
    }
    const char* colors[] = {"#d62728", "#1f77b4"};
    int ci = 0;
    double legend_y = mt;
    for (auto& [method, pts] : lines) {
        std::sort(pts.begin(), pts.end());
        std::string poly;
        for (const auto& [x, y] : pts) poly += fmt_double(px(x)) + "," + fmt_double(py(y)) + " ";
        const char* color = colors[ci++ % 2];
        svg += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt_double(width - mr - 90) + "\" y=\"" + fmt_double(legend_y) +
               "\" font-size=\"13\" fill=\"" + color + "\">" + method + "</text>\n";
        legend_y += 18;
    }
    svg += "</svg>\n";
    return svg;
}

void write_metric_charts(std::span<const MetricsRecord> records, const std::string& dir) {
    static const char* metrics[] = {"mse", "ssim", "wasserstein1", "bottleneck", "betti_distance", "file_size_bytes"};
    fs::create_directories(dir);
    for (const char* m : metrics) {
        std::ofstream out(fs::path(dir) / (std::string(m) + ".svg"), std::ios::binary);
        out << metric_chart_svg(records, m);
    }
}

}  // namespace phc
