#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "phc/cubical.hpp"
#include "phc/image.hpp"
#include "phc/spectrum.hpp"

namespace phc {

// Topological importance of one canonical frequency. w1 is the
// 1-Wasserstein distance between the image's diagram and the diagram of the
// single-frequency reconstruction; weight is 1/sqrt(fx'^2 + fy'^2) on the
// aliased (minimal magnitude) representative; score = w1 * weight. DC is
// pinned to rank 0 with weight 0 and an infinite score.
struct FrequencyScore {
    FreqIndex freq;
    double w1 = 0.0;
    double weight = 0.0;
    double score = 0.0;
};

struct CompressedEntry {
    FreqIndex freq;
    std::complex<double> coeff;
    friend bool operator==(const CompressedEntry&, const CompressedEntry&) = default;
};

// Retained canonical coefficients of one image. Entries are unique,
// canonical, and sorted by (fy, fx). alpha is the retained fraction of
// canonical orbits, in (0, 1].
struct CompressedImage {
    int width = 0;
    int height = 0;
    std::vector<CompressedEntry> entries;
    double alpha = 1.0;

    // Structural equality; alpha is bookkeeping and not stored on disk.
    friend bool operator==(const CompressedImage& a, const CompressedImage& b) {
        return a.width == b.width && a.height == b.height && a.entries == b.entries;
    }
};

// All canonical frequencies sorted by descending score, ties broken by
// (fy, fx) ascending, DC first. Deterministic for any thread count.
std::vector<FrequencyScore> rank_frequencies(const GrayImage& img, int threads = 1);

// Retain the top max(1, round(alpha * #canonical)) frequencies.
CompressedImage compress(const GrayImage& img, double alpha, int threads = 1);

// Same, reusing a precomputed spectrum and ranking (they are pure functions
// of the image, so sweeps over alpha share them).
CompressedImage compress_ranked(const GrayImage& img, const Spectrum& spec,
                                std::span<const FrequencyScore> ranking, double alpha);

// Rebuild the Hermitian spectrum from the entries and invert. No clamping.
GrayImage decompress(const CompressedImage& c);

// Diagram of the smoothed reconstruction: sublevel_diagram(gaussian_smooth(decompress(c), sigma)).
PersistenceDiagram compressed_diagram(const CompressedImage& c, double sigma = 1.0);

class DecodeError : public std::runtime_error {
public:
    enum class Kind { BadStream, BadMagic, Truncated, BadHeader, BadIndex, DuplicateIndex };
    DecodeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Raw container layout, little endian:
//   "PHC1" | width u16 | height u16 | count u32 | count x { fx u16 | fy u16 | re f32 | im f32 }
std::vector<std::uint8_t> serialize_container(const CompressedImage& c);
CompressedImage parse_container(std::span<const std::uint8_t> bytes);

// serialize_container wrapped in raw DEFLATE (RFC 1951). The encoded byte
// length is the reported container file size.
std::vector<std::uint8_t> encode(const CompressedImage& c);
CompressedImage decode(std::span<const std::uint8_t> bytes);

}  // namespace phc
