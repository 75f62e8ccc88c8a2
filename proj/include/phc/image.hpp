#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace phc {

// Real-valued grayscale raster, row major. Intensities are nominally in
// [0, 255] but stay unquantized between operations; only PNG save snaps
// them to 8 bits. Width and height must both be at least 2 so that
// filtrations and SSIM windows have extent to work with.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0);
    GrayImage(int w, int h, std::vector<double> px);

    double& at(int y, int x) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return pixels.size(); }
};

// Interleaved 8-bit RGB raster.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // r,g,b per pixel

    RgbImage() = default;
    RgbImage(int w, int h);

    std::uint8_t channel(int y, int x, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
};

// BT.601 luma: 0.299 R + 0.587 G + 0.114 B, kept as a real value.
GrayImage to_grayscale(const RgbImage& img);

// Bilinear resample to w x h using corner-aligned sample positions.
// Rejects targets smaller than 2 in either dimension.
GrayImage resize(const GrayImage& img, int w, int h);

}  // namespace phc
