#pragma once

#include <compare>
#include <complex>
#include <span>
#include <vector>

#include "phc/image.hpp"

namespace phc {

// A 2D frequency index. The conjugate partner of (fx, fy) is
// ((W - fx) mod W, (H - fy) mod H); the canonical representative of an
// orbit is the lexicographically smaller of the two (fx first).
struct FreqIndex {
    int fx = 0;
    int fy = 0;
    friend auto operator<=>(const FreqIndex&, const FreqIndex&) = default;
};

// Full complex DFT coefficient grid, row major: coeffs[fy * width + fx].
// Spectra of real images satisfy X[-f] = conj(X[f]).
struct Spectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> coeffs;

    std::complex<double>& at(int fy, int fx) {
        return coeffs[static_cast<std::size_t>(fy) * width + fx];
    }
    std::complex<double> at(int fy, int fx) const {
        return coeffs[static_cast<std::size_t>(fy) * width + fx];
    }
};

// Forward transform, unnormalized: X[fy][fx] = sum I[m][n] e^{-2pi i (fx n/W + fy m/H)}.
// Uses radix-2 FFT along any power-of-two dimension and the direct sum otherwise.
Spectrum dft2(const GrayImage& img);

// Same contract as dft2 but always takes the direct O(N^2) per-axis path.
// Kept as the reference the FFT path is checked against.
Spectrum dft2_direct(const GrayImage& img);

// Inverse transform with 1/(W*H) normalization; returns the real part.
// For Hermitian spectra the imaginary residue is below 1e-8.
GrayImage idft2(const Spectrum& spec);

// Full complex inverse, row major. idft2 is the real part of this.
std::vector<std::complex<double>> idft2_complex(const Spectrum& spec);

FreqIndex conjugate_index(FreqIndex f, int w, int h);
bool is_canonical(FreqIndex f, int w, int h);

// One representative per conjugate orbit, in (fy, fx) scan order.
// Self-conjugate indices (DC and Nyquist combinations) appear once.
std::vector<FreqIndex> canonical_frequencies(int w, int h);

// Orbit count: (W*H + S) / 2 where S counts self-conjugate indices.
std::size_t canonical_count(int w, int h);

// Copies the kept coefficients and their conjugate partners, zeroing the
// rest. Indices must be canonical and in range.
Spectrum mask_spectrum(const Spectrum& spec, std::span<const FreqIndex> keep);

// Image carried by one frequency and its conjugate alone, i.e.
// idft2(mask_spectrum(spec, {f})) evaluated in closed form.
GrayImage reconstruct_single(const Spectrum& spec, FreqIndex f);

}  // namespace phc
