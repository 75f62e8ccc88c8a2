#include "phc/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace phc {

namespace {

void check_dims(int w, int h) {
    if (w < 2 || h < 2) {
        throw std::invalid_argument("image dimensions must be at least 2x2, got " +
                                    std::to_string(w) + "x" + std::to_string(h));
    }
}

}  // namespace

GrayImage::GrayImage(int w, int h, double fill) : width(w), height(h) {
    check_dims(w, h);
    pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

GrayImage::GrayImage(int w, int h, std::vector<double> px) : width(w), height(h), pixels(std::move(px)) {
    check_dims(w, h);
    if (pixels.size() != static_cast<std::size_t>(w) * h) {
        throw std::invalid_argument("pixel buffer size does not match dimensions");
    }
}

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("RGB image dimensions must be positive");
    pixels.assign(static_cast<std::size_t>(w) * h * 3, 0);
}

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    const std::uint8_t* p = img.pixels.data();
    for (std::size_t i = 0; i < out.size(); ++i, p += 3) {
        out.pixels[i] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    }
    return out;
}

GrayImage resize(const GrayImage& img, int w, int h) {
    if (w < 2 || h < 2) {
        throw std::invalid_argument("resize target must be at least 2x2");
    }
    if (w == img.width && h == img.height) return img;

    GrayImage out(w, h);
    const double sx = static_cast<double>(img.width - 1) / (w - 1);
    const double sy = static_cast<double>(img.height - 1) / (h - 1);
    for (int y = 0; y < h; ++y) {
        double fy = y * sy;
        int y0 = std::min(static_cast<int>(fy), img.height - 2);
        double ty = fy - y0;
        for (int x = 0; x < w; ++x) {
            double fx = x * sx;
            int x0 = std::min(static_cast<int>(fx), img.width - 2);
            double tx = fx - x0;
            double top = (1.0 - tx) * img.at(y0, x0) + tx * img.at(y0, x0 + 1);
            double bot = (1.0 - tx) * img.at(y0 + 1, x0) + tx * img.at(y0 + 1, x0 + 1);
            out.at(y, x) = (1.0 - ty) * top + ty * bot;
        }
    }
    return out;
}

}  // namespace phc
