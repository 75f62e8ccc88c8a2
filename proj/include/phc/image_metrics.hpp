#pragma once

#include "phc/image.hpp"

namespace phc {

// Uniform square window SSIM constants: C1 = (0.01 * 255)^2, C2 = (0.03 * 255)^2.
struct SsimParams {
    int window = 11;  // odd, >= 3
    double c1 = 6.5025;
    double c2 = 58.5225;
};

// Mean squared pixel error. Dimensions must match.
double mse(const GrayImage& a, const GrayImage& b);

// Mean SSIM over all fully interior windows, uniform weights.
// Identical images give exactly 1.0. Both images must be at least
// window x window.
double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& params = {});

// Convolution with a normalized Gaussian sampled on a (2*ceil(3 sigma)+1)^2
// grid, edges handled by mirror padding. sigma = 0 is the identity.
GrayImage gaussian_smooth(const GrayImage& img, double sigma);

}  // namespace phc
