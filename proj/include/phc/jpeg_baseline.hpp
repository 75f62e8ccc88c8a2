#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phc/image.hpp"

namespace phc {

struct JpegResult {
    int quality = 0;
    std::size_t encoded_size = 0;
    GrayImage decoded;
};

// Maps a retained fraction to the comparison JPEG quality:
// clamp(round(100 * alpha), 5, 95).
int quality_for(double alpha);

// Baseline grayscale JPEG encode of the 8-bit quantized image.
std::vector<std::uint8_t> jpeg_encode(const GrayImage& img, int quality);

GrayImage jpeg_decode(std::span<const std::uint8_t> bytes);

// Encode then decode, reporting the stream size.
JpegResult jpeg_roundtrip(const GrayImage& img, int quality);

}  // namespace phc
