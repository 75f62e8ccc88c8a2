#include "phc/image_metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace phc {

namespace {

void check_same_dims(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height) {
        throw std::invalid_argument("image dimensions differ: " + std::to_string(a.width) + "x" +
                                    std::to_string(a.height) + " vs " + std::to_string(b.width) +
                                    "x" + std::to_string(b.height));
    }
}

// Mirror fold without repeating the edge sample twice in a row beyond the
// border, i.e. -1 -> 0, -2 -> 1, n -> n-1. Handles offsets of any size.
int reflect_index(int i, int n) {
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

}  // namespace

double mse(const GrayImage& a, const GrayImage& b) {
    check_same_dims(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a.pixels[i] - b.pixels[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& params) {
    check_same_dims(a, b);
    const int win = params.window;
    if (win < 3 || win % 2 == 0) throw std::invalid_argument("SSIM window must be odd and >= 3");
    if (params.c1 <= 0.0 || params.c2 <= 0.0) throw std::invalid_argument("SSIM constants must be positive");
    if (a.width < win || a.height < win) {
        throw std::invalid_argument("images smaller than the SSIM window");
    }

    // Summed-area tables over x, y, x^2, y^2, xy; one row/col of padding.
    const int w = a.width, h = a.height;
    const std::size_t sw = w + 1;
    std::vector<double> sx(sw * (h + 1), 0.0), sy(sx), sxx(sx), syy(sx), sxy(sx);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y + 1) * sw + (x + 1);
            std::size_t up = i - sw;
            double va = a.at(y, x), vb = b.at(y, x);
            sx[i] = sx[i - 1] + sx[up] - sx[up - 1] + va;
            sy[i] = sy[i - 1] + sy[up] - sy[up - 1] + vb;
            sxx[i] = sxx[i - 1] + sxx[up] - sxx[up - 1] + va * va;
            syy[i] = syy[i - 1] + syy[up] - syy[up - 1] + vb * vb;
            sxy[i] = sxy[i - 1] + sxy[up] - sxy[up - 1] + va * vb;
        }
    }
    auto window_sum = [&](const std::vector<double>& s, int y0, int x0) {
        std::size_t tl = static_cast<std::size_t>(y0) * sw + x0;
        std::size_t br = static_cast<std::size_t>(y0 + win) * sw + (x0 + win);
        std::size_t tr = static_cast<std::size_t>(y0) * sw + (x0 + win);
        std::size_t bl = static_cast<std::size_t>(y0 + win) * sw + x0;
        return s[br] - s[tr] - s[bl] + s[tl];
    };

    const double n = static_cast<double>(win) * win;
    double total = 0.0;
    std::size_t windows = 0;
    for (int y0 = 0; y0 + win <= h; ++y0) {
        for (int x0 = 0; x0 + win <= w; ++x0) {
            double mx = window_sum(sx, y0, x0) / n;
            double my = window_sum(sy, y0, x0) / n;
            double vx = window_sum(sxx, y0, x0) / n - mx * mx;
            double vy = window_sum(syy, y0, x0) / n - my * my;
            double cov = window_sum(sxy, y0, x0) / n - mx * my;
            double num = (2.0 * mx * my + params.c1) * (2.0 * cov + params.c2);
            double den = (mx * mx + my * my + params.c1) * (vx + vy + params.c2);
            total += num / den;
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("gaussian_smooth: sigma must be nonnegative");
    if (sigma == 0.0) return img;

    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += kernel[i + radius];
    }
    for (double& k : kernel) k /= sum;

    // The 2D kernel is separable and each normalized 1D factor keeps the
    // mean exact under mirror padding.
    GrayImage tmp(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                acc += kernel[i + radius] * img.at(y, reflect_index(x + i, img.width));
            }
            tmp.at(y, x) = acc;
        }
    }
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                acc += kernel[i + radius] * tmp.at(reflect_index(y + i, img.height), x);
            }
            out.at(y, x) = acc;
        }
    }
    return out;
}

}  // namespace phc
