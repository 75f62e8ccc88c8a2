#include "phc/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace phc {

namespace {

using cd = std::complex<double>;
constexpr double kTau = 2.0 * std::numbers::pi;

bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

// Iterative radix-2 decimation in time. `sign` is -1 forward, +1 inverse;
// no scaling here.
void fft_radix2(std::vector<cd>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * kTau / static_cast<double>(len);
        cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cd u = a[i + k];
                cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Direct O(N^2) transform, the fallback for sizes without a radix-2
// decomposition and the reference the FFT is tested against.
void dft_direct(std::vector<cd>& a, int sign) {
    const std::size_t n = a.size();
    std::vector<cd> out(n, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
            double ang = sign * kTau * static_cast<double>(k) * static_cast<double>(m) / static_cast<double>(n);
            out[k] += a[m] * cd(std::cos(ang), std::sin(ang));
        }
    }
    a = std::move(out);
}

void transform_1d(std::vector<cd>& a, int sign, bool force_direct) {
    if (!force_direct && power_of_two(static_cast<int>(a.size()))) {
        fft_radix2(a, sign);
    } else {
        dft_direct(a, sign);
    }
}

// Separable 2D pass: rows then columns.
void transform_2d(std::vector<cd>& grid, int w, int h, int sign, bool force_direct) {
    std::vector<cd> line;
    line.resize(w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) line[x] = grid[static_cast<std::size_t>(y) * w + x];
        transform_1d(line, sign, force_direct);
        for (int x = 0; x < w; ++x) grid[static_cast<std::size_t>(y) * w + x] = line[x];
    }
    line.resize(h);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) line[y] = grid[static_cast<std::size_t>(y) * w + x];
        transform_1d(line, sign, force_direct);
        for (int y = 0; y < h; ++y) grid[static_cast<std::size_t>(y) * w + x] = line[y];
    }
}

Spectrum forward(const GrayImage& img, bool force_direct) {
    Spectrum spec;
    spec.width = img.width;
    spec.height = img.height;
    spec.coeffs.assign(img.pixels.begin(), img.pixels.end());
    transform_2d(spec.coeffs, spec.width, spec.height, -1, force_direct);
    return spec;
}

void check_index(FreqIndex f, int w, int h) {
    if (f.fx < 0 || f.fx >= w || f.fy < 0 || f.fy >= h) {
        throw std::invalid_argument("frequency index (" + std::to_string(f.fx) + "," +
                                    std::to_string(f.fy) + ") out of range for " +
                                    std::to_string(w) + "x" + std::to_string(h));
    }
}

}  // namespace

Spectrum dft2(const GrayImage& img) { return forward(img, false); }

Spectrum dft2_direct(const GrayImage& img) { return forward(img, true); }

std::vector<std::complex<double>> idft2_complex(const Spectrum& spec) {
    std::vector<cd> grid = spec.coeffs;
    transform_2d(grid, spec.width, spec.height, +1, false);
    const double norm = 1.0 / (static_cast<double>(spec.width) * spec.height);
    for (cd& v : grid) v *= norm;
    return grid;
}

GrayImage idft2(const Spectrum& spec) {
    std::vector<cd> grid = idft2_complex(spec);
    GrayImage out(spec.width, spec.height);
    for (std::size_t i = 0; i < grid.size(); ++i) out.pixels[i] = grid[i].real();
    return out;
}

FreqIndex conjugate_index(FreqIndex f, int w, int h) {
    return {(w - f.fx) % w, (h - f.fy) % h};
}

bool is_canonical(FreqIndex f, int w, int h) {
    return f <= conjugate_index(f, w, h);
}

std::vector<FreqIndex> canonical_frequencies(int w, int h) {
    if (w < 2 || h < 2) throw std::invalid_argument("spectrum dimensions must be at least 2x2");
    std::vector<FreqIndex> out;
    out.reserve(canonical_count(w, h));
    for (int fy = 0; fy < h; ++fy) {
        for (int fx = 0; fx < w; ++fx) {
            FreqIndex f{fx, fy};
            if (is_canonical(f, w, h)) out.push_back(f);
        }
    }
    return out;
}

std::size_t canonical_count(int w, int h) {
    std::size_t self = static_cast<std::size_t>(w % 2 == 0 ? 2 : 1) * (h % 2 == 0 ? 2 : 1);
    return (static_cast<std::size_t>(w) * h + self) / 2;
}

Spectrum mask_spectrum(const Spectrum& spec, std::span<const FreqIndex> keep) {
    Spectrum out;
    out.width = spec.width;
    out.height = spec.height;
    out.coeffs.assign(spec.coeffs.size(), cd(0.0, 0.0));
    for (FreqIndex f : keep) {
        check_index(f, spec.width, spec.height);
        if (!is_canonical(f, spec.width, spec.height)) {
            throw std::invalid_argument("mask_spectrum expects canonical representatives, got (" +
                                        std::to_string(f.fx) + "," + std::to_string(f.fy) + ")");
        }
        FreqIndex c = conjugate_index(f, spec.width, spec.height);
        out.at(f.fy, f.fx) = spec.at(f.fy, f.fx);
        out.at(c.fy, c.fx) = spec.at(c.fy, c.fx);
    }
    return out;
}

GrayImage reconstruct_single(const Spectrum& spec, FreqIndex f) {
    check_index(f, spec.width, spec.height);
    if (!is_canonical(f, spec.width, spec.height)) {
        throw std::invalid_argument("reconstruct_single expects a canonical representative");
    }
    const int w = spec.width, h = spec.height;
    const FreqIndex c = conjugate_index(f, w, h);
    const cd xf = spec.at(f.fy, f.fx);
    const cd xc = spec.at(c.fy, c.fx);
    const bool self = (c == f);
    const double norm = 1.0 / (static_cast<double>(w) * h);

    // idft2(mask_spectrum(spec, {f})) in closed form: the masked spectrum has
    // at most two nonzero coefficients, so the inverse sum collapses to
    // norm * Re(X_f e^{i theta} + X_c e^{-i theta}).
    std::vector<cd> col(h), row(w);
    for (int m = 0; m < h; ++m) {
        double ang = kTau * static_cast<double>(f.fy) * m / h;
        col[m] = cd(std::cos(ang), std::sin(ang));
    }
    for (int n = 0; n < w; ++n) {
        double ang = kTau * static_cast<double>(f.fx) * n / w;
        row[n] = cd(std::cos(ang), std::sin(ang));
    }
    GrayImage out(w, h);
    for (int m = 0; m < h; ++m) {
        cd a = xf * col[m];
        cd b = self ? cd(0.0, 0.0) : xc * std::conj(col[m]);
        for (int n = 0; n < w; ++n) {
            cd v = a * row[n];
            if (!self) v += b * std::conj(row[n]);
            out.at(m, n) = norm * v.real();
        }
    }
    return out;
}

}  // namespace phc
