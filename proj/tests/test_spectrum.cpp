#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "phc/spectrum.hpp"
#include "testimages.hpp"

using phc::FreqIndex;

namespace {

double max_coeff_diff(const phc::Spectrum& a, const phc::Spectrum& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        worst = std::max(worst, std::abs(a.coeffs[i] - b.coeffs[i]));
    }
    return worst;
}

double max_pixel_diff(const phc::GrayImage& a, const phc::GrayImage& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        worst = std::max(worst, std::abs(a.pixels[i] - b.pixels[i]));
    }
    return worst;
}

}  // namespace

TEST_CASE("constant image transforms to a pure DC coefficient") {
    const double c = 7.25;
    phc::Spectrum spec = phc::dft2(phc::GrayImage(6, 4, c));
    CHECK(spec.at(0, 0).real() == doctest::Approx(6 * 4 * c).epsilon(1e-12));
    CHECK(std::abs(spec.at(0, 0).imag()) < 1e-9);
    for (int fy = 0; fy < 4; ++fy) {
        for (int fx = 0; fx < 6; ++fx) {
            if (fx == 0 && fy == 0) continue;
            CHECK(std::abs(spec.at(fy, fx)) < 1e-9);
        }
    }
}

TEST_CASE("a single horizontal cosine occupies one conjugate pair") {
    const int w = 8, h = 4;
    phc::GrayImage img(w, h);
    for (int m = 0; m < h; ++m) {
        for (int n = 0; n < w; ++n) img.at(m, n) = std::cos(2.0 * std::numbers::pi * n / w);
    }
    phc::Spectrum spec = phc::dft2(img);
    CHECK(spec.at(0, 1).real() == doctest::Approx(w * h / 2.0).epsilon(1e-12));
    CHECK(spec.at(0, w - 1).real() == doctest::Approx(w * h / 2.0).epsilon(1e-12));
    for (int fy = 0; fy < h; ++fy) {
        for (int fx = 0; fx < w; ++fx) {
            if (fy == 0 && (fx == 1 || fx == w - 1)) continue;
            CHECK(std::abs(spec.at(fy, fx)) < 1e-9);
        }
    }
}

TEST_CASE("forward transform matches the direct double-sum reference") {
    phc::GrayImage img = testimg::random_image(4, 4, 42);
    phc::Spectrum naive = oracle::naive_dft2(img);
    CHECK(max_coeff_diff(phc::dft2(img), naive) < 1e-10);
    CHECK(max_coeff_diff(phc::dft2_direct(img), naive) < 1e-10);
}

TEST_CASE("non power-of-two sizes fall back to the direct path and stay correct") {
    phc::GrayImage img = testimg::random_image(6, 5, 43);
    CHECK(max_coeff_diff(phc::dft2(img), oracle::naive_dft2(img)) < 1e-9);
}

TEST_CASE("FFT and direct paths agree") {
    for (std::uint32_t seed : {1u, 2u, 3u}) {
        phc::GrayImage img = testimg::random_image(16, 16, seed);
        CHECK(max_coeff_diff(phc::dft2(img), phc::dft2_direct(img)) < 1e-9);
    }
}

TEST_CASE("inverse of forward is the identity") {
    phc::GrayImage img = testimg::random_image(32, 32, 5);
    CHECK(max_pixel_diff(phc::idft2(phc::dft2(img)), img) < 1e-8);
}

TEST_CASE("inverse transform edge cases") {
    phc::Spectrum zero;
    zero.width = 4;
    zero.height = 4;
    zero.coeffs.assign(16, {0.0, 0.0});
    for (double v : phc::idft2(zero).pixels) CHECK(v == 0.0);

    phc::Spectrum dc = zero;
    dc.at(0, 0) = {4.0 * 4.0 * 3.5, 0.0};
    for (double v : phc::idft2(dc).pixels) CHECK(v == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("imaginary residue of a Hermitian spectrum inversion is tiny") {
    phc::GrayImage img = testimg::random_image(16, 8, 6);
    auto grid = phc::idft2_complex(phc::dft2(img));
    double worst = 0.0;
    for (const auto& v : grid) worst = std::max(worst, std::abs(v.imag()));
    CHECK(worst < 1e-8);
}

TEST_CASE("Hermitian symmetry holds for spectra of real images") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int w = 2 + static_cast<int>(rng() % 11);
        int h = 2 + static_cast<int>(rng() % 11);
        phc::GrayImage img = testimg::random_image(w, h, rng());
        phc::Spectrum spec = phc::dft2(img);
        double scale = 0.0;
        for (const auto& v : spec.coeffs) scale = std::max(scale, std::abs(v));
        for (int fy = 0; fy < h; ++fy) {
            for (int fx = 0; fx < w; ++fx) {
                FreqIndex c = phc::conjugate_index({fx, fy}, w, h);
                double diff = std::abs(spec.at(c.fy, c.fx) - std::conj(spec.at(fy, fx)));
                CHECK(diff <= 1e-9 * scale);
            }
        }
    }
}

TEST_CASE("Parseval identity") {
    for (std::uint32_t seed : {10u, 11u, 12u}) {
        phc::GrayImage img = testimg::random_image(12, 9, seed);
        phc::Spectrum spec = phc::dft2(img);
        double pixel_energy = 0.0, coeff_energy = 0.0;
        for (double v : img.pixels) pixel_energy += v * v;
        for (const auto& v : spec.coeffs) coeff_energy += std::norm(v);
        coeff_energy /= static_cast<double>(img.size());
        CHECK(pixel_energy == doctest::Approx(coeff_energy).epsilon(1e-6));
    }
}

TEST_CASE("the transform is linear") {
    phc::GrayImage i1 = testimg::random_image(8, 8, 20);
    phc::GrayImage i2 = testimg::random_image(8, 8, 21);
    const double a = 0.7, b = -0.3;
    phc::GrayImage mix(8, 8);
    for (std::size_t i = 0; i < mix.size(); ++i) mix.pixels[i] = a * i1.pixels[i] + b * i2.pixels[i];
    phc::Spectrum s1 = phc::dft2(i1), s2 = phc::dft2(i2), sm = phc::dft2(mix);
    for (std::size_t i = 0; i < sm.coeffs.size(); ++i) {
        CHECK(std::abs(sm.coeffs[i] - (a * s1.coeffs[i] + b * s2.coeffs[i])) < 1e-8);
    }
}

TEST_CASE("canonical frequencies of a 2x2 grid are all self-conjugate") {
    auto canon = phc::canonical_frequencies(2, 2);
    REQUIRE(canon.size() == 4);
    CHECK(canon == std::vector<FreqIndex>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    for (FreqIndex f : canon) CHECK(phc::conjugate_index(f, 2, 2) == f);
}

TEST_CASE("canonical frequencies cover every orbit exactly once") {
    for (auto [w, h] : {std::pair{4, 4}, std::pair{5, 4}, std::pair{6, 3}, std::pair{7, 7}}) {
        auto canon = phc::canonical_frequencies(w, h);

        // brute-force orbit enumeration
        std::set<std::pair<int, int>> seen;
        std::size_t orbits = 0;
        for (int fy = 0; fy < h; ++fy) {
            for (int fx = 0; fx < w; ++fx) {
                if (seen.count({fx, fy})) continue;
                FreqIndex c = phc::conjugate_index({fx, fy}, w, h);
                seen.insert({fx, fy});
                seen.insert({c.fx, c.fy});
                ++orbits;
            }
        }
        CHECK(canon.size() == orbits);
        CHECK(canon.size() == phc::canonical_count(w, h));

        // every non-listed index is the conjugate of exactly one listed index
        std::set<std::pair<int, int>> listed;
        for (FreqIndex f : canon) listed.insert({f.fx, f.fy});
        std::map<std::pair<int, int>, int> covered;
        for (FreqIndex f : canon) {
            FreqIndex c = phc::conjugate_index(f, w, h);
            covered[{c.fx, c.fy}] += 1;
        }
        for (int fy = 0; fy < h; ++fy) {
            for (int fx = 0; fx < w; ++fx) {
                if (listed.count({fx, fy})) continue;
                CHECK(covered[{fx, fy}] == 1);
            }
        }
    }
    CHECK(phc::canonical_frequencies(4, 4).size() == 10);
}

TEST_CASE("mask with every canonical frequency reproduces the spectrum") {
    phc::GrayImage img = testimg::random_image(6, 4, 31);
    phc::Spectrum spec = phc::dft2(img);
    auto canon = phc::canonical_frequencies(6, 4);
    phc::Spectrum masked = phc::mask_spectrum(spec, canon);
    CHECK(max_coeff_diff(masked, spec) == 0.0);
}

TEST_CASE("mask with an empty keep set zeroes everything") {
    phc::Spectrum spec = phc::dft2(testimg::random_image(4, 4, 32));
    phc::Spectrum masked = phc::mask_spectrum(spec, {});
    for (const auto& v : masked.coeffs) CHECK(v == std::complex<double>(0.0, 0.0));
}

TEST_CASE("mask keeps exactly the orbit of the requested frequency") {
    phc::Spectrum spec = phc::dft2(testimg::random_image(4, 4, 33));
    FreqIndex f{1, 0};  // conjugate partner is (3, 0)
    phc::Spectrum masked = phc::mask_spectrum(spec, std::vector<FreqIndex>{f});
    for (int fy = 0; fy < 4; ++fy) {
        for (int fx = 0; fx < 4; ++fx) {
            bool kept = (fy == 0 && (fx == 1 || fx == 3));
            if (kept) CHECK(masked.at(fy, fx) == spec.at(fy, fx));
            else CHECK(masked.at(fy, fx) == std::complex<double>(0.0, 0.0));
        }
    }
}

TEST_CASE("mask preserves Hermitian symmetry") {
    phc::Spectrum spec = phc::dft2(testimg::random_image(8, 6, 34));
    phc::Spectrum masked = phc::mask_spectrum(spec, std::vector<FreqIndex>{{1, 2}, {0, 1}, {3, 0}});
    double scale = 1.0;
    for (const auto& v : masked.coeffs) scale = std::max(scale, std::abs(v));
    for (int fy = 0; fy < 6; ++fy) {
        for (int fx = 0; fx < 8; ++fx) {
            FreqIndex c = phc::conjugate_index({fx, fy}, 8, 6);
            CHECK(std::abs(masked.at(c.fy, c.fx) - std::conj(masked.at(fy, fx))) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("mask rejects invalid indices") {
    phc::Spectrum spec = phc::dft2(testimg::random_image(4, 4, 35));
    CHECK_THROWS_AS(phc::mask_spectrum(spec, std::vector<FreqIndex>{{4, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(phc::mask_spectrum(spec, std::vector<FreqIndex>{{-1, 0}}), std::invalid_argument);
    // (3, 0) is the conjugate of canonical (1, 0)
    CHECK_THROWS_AS(phc::mask_spectrum(spec, std::vector<FreqIndex>{{3, 0}}), std::invalid_argument);
}

TEST_CASE("single-frequency reconstruction: DC gives the mean") {
    phc::GrayImage img = testimg::random_image(8, 8, 40);
    double mean = 0.0;
    for (double v : img.pixels) mean += v;
    mean /= static_cast<double>(img.size());
    phc::GrayImage recon = phc::reconstruct_single(phc::dft2(img), {0, 0});
    for (double v : recon.pixels) CHECK(v == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("single-frequency reconstructions of non-DC terms have zero mean") {
    phc::GrayImage img = testimg::random_image(8, 6, 41);
    phc::Spectrum spec = phc::dft2(img);
    for (FreqIndex f : phc::canonical_frequencies(8, 6)) {
        if (f.fx == 0 && f.fy == 0) continue;
        phc::GrayImage recon = phc::reconstruct_single(spec, f);
        double mean = 0.0;
        for (double v : recon.pixels) mean += v;
        CHECK(std::abs(mean / static_cast<double>(recon.size())) < 1e-10);
    }
}

TEST_CASE("single-frequency reconstruction matches the masked inverse") {
    phc::GrayImage img = testimg::random_image(8, 8, 42);
    phc::Spectrum spec = phc::dft2(img);
    FreqIndex f{1, 2};

    phc::GrayImage direct = phc::reconstruct_single(spec, f);
    phc::GrayImage via_mask = phc::idft2(phc::mask_spectrum(spec, std::vector<FreqIndex>{f}));
    CHECK(max_pixel_diff(direct, via_mask) < 1e-9);

    // and against the fully naive reference
    phc::Spectrum naive = oracle::naive_dft2(img);
    phc::Spectrum hand;
    hand.width = 8;
    hand.height = 8;
    hand.coeffs.assign(64, {0.0, 0.0});
    FreqIndex c = phc::conjugate_index(f, 8, 8);
    hand.at(f.fy, f.fx) = naive.at(f.fy, f.fx);
    hand.at(c.fy, c.fx) = naive.at(c.fy, c.fx);
    CHECK(max_pixel_diff(direct, oracle::naive_idft2(hand)) < 1e-9);
}

TEST_CASE("summing every single-frequency reconstruction rebuilds the image") {
    phc::GrayImage img = testimg::random_image(8, 8, 43);
    phc::Spectrum spec = phc::dft2(img);
    phc::GrayImage sum(8, 8, 0.0);
    for (FreqIndex f : phc::canonical_frequencies(8, 8)) {
        phc::GrayImage part = phc::reconstruct_single(spec, f);
        for (std::size_t i = 0; i < sum.size(); ++i) sum.pixels[i] += part.pixels[i];
    }
    CHECK(max_pixel_diff(sum, phc::idft2(spec)) < 1e-6);
}
