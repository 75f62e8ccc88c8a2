#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "phc/image.hpp"

namespace phc {

using LoadedImage = std::variant<GrayImage, RgbImage>;

// Reads a PNG or baseline JPEG file, sniffing the format from magic bytes.
// Grayscale sources come back as GrayImage, color sources as RgbImage.
// Throws std::runtime_error on I/O failure or unsupported formats.
LoadedImage load_image(const std::string& path);

// load_image followed by to_grayscale when the source has color.
GrayImage load_gray(const std::string& path);

// Writes an 8-bit grayscale PNG. Intensities are rounded half up and
// clamped to [0, 255].
void save_png(const GrayImage& img, const std::string& path);

// The save-time quantizer, exposed because the JPEG arm uses the same rule.
std::uint8_t quantize_u8(double v);

}  // namespace phc
