#include "phc/pipeline.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "phc/diagram_metrics.hpp"
#include "phc/image_metrics.hpp"
#include "phc/parallel.hpp"

namespace phc {

namespace {

constexpr char kMagic[4] = {'P', 'H', 'C', '1'};

bool entry_order(const CompressedEntry& a, const CompressedEntry& b) {
    if (a.freq.fy != b.freq.fy) return a.freq.fy < b.freq.fy;
    return a.freq.fx < b.freq.fx;
}

// 1/sqrt(fx'^2 + fy'^2) on the aliased representative: the physical
// frequency magnitude, not the array index, drives the low-frequency prior.
double frequency_weight(FreqIndex f, int w, int h) {
    double ax = std::min(f.fx, w - f.fx);
    double ay = std::min(f.fy, h - f.fy);
    return 1.0 / std::sqrt(ax * ax + ay * ay);
}

void validate_container(const CompressedImage& c) {
    if (c.width < 2 || c.height < 2) throw std::invalid_argument("container dimensions must be at least 2x2");
    if (c.entries.empty()) throw std::invalid_argument("container must retain at least one frequency");
    if (c.entries.size() > canonical_count(c.width, c.height)) {
        throw std::invalid_argument("container has more entries than canonical frequencies");
    }
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        FreqIndex f = c.entries[i].freq;
        if (f.fx < 0 || f.fx >= c.width || f.fy < 0 || f.fy >= c.height) {
            throw std::invalid_argument("container frequency index out of range");
        }
        if (!is_canonical(f, c.width, c.height)) {
            throw std::invalid_argument("container frequency index is not canonical");
        }
        if (i > 0 && !entry_order(c.entries[i - 1], c.entries[i])) {
            throw std::invalid_argument("container entries must be strictly sorted by (fy, fx)");
        }
    }
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

struct Reader {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > bytes.size()) throw DecodeError(DecodeError::Kind::Truncated, "container truncated");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(bytes[pos] | (bytes[pos + 1] << 8));
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    float f32() {
        std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
};

std::vector<std::uint8_t> deflate_bytes(std::span<const std::uint8_t> raw) {
    z_stream zs{};
    // windowBits -15: raw DEFLATE, no zlib wrapper
    if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -15, 9, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw std::runtime_error("deflateInit2 failed");
    }
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(raw.size())));
    zs.next_in = const_cast<Bytef*>(raw.data());
    zs.avail_in = static_cast<uInt>(raw.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&zs, Z_FINISH);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
    out.resize(out.size() - zs.avail_out);
    return out;
}

std::vector<std::uint8_t> inflate_bytes(std::span<const std::uint8_t> compressed) {
    z_stream zs{};
    if (inflateInit2(&zs, -15) != Z_OK) throw std::runtime_error("inflateInit2 failed");
    std::vector<std::uint8_t> out;
    std::uint8_t buf[16384];
    zs.next_in = const_cast<Bytef*>(compressed.data());
    zs.avail_in = static_cast<uInt>(compressed.size());
    int rc = Z_OK;
    do {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw DecodeError(DecodeError::Kind::BadStream, "not a valid DEFLATE stream");
        }
        out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
    } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw DecodeError(DecodeError::Kind::BadStream, "truncated DEFLATE stream");
    return out;
}

}  // namespace

std::vector<FrequencyScore> rank_frequencies(const GrayImage& img, int threads) {
    const Spectrum spec = dft2(img);
    const PersistenceDiagram full = sublevel_diagram(img);
    const std::vector<FreqIndex> canon = canonical_frequencies(img.width, img.height);

    std::vector<FrequencyScore> scores(canon.size());
    parallel_for(canon.size(), threads, [&](std::size_t i) {
        FreqIndex f = canon[i];
        GrayImage recon = reconstruct_single(spec, f);
        double w1 = wasserstein1(full, sublevel_diagram(recon));
        FrequencyScore& s = scores[i];
        s.freq = f;
        s.w1 = w1;
        if (f.fx == 0 && f.fy == 0) {
            s.weight = 0.0;
            s.score = std::numeric_limits<double>::infinity();  // DC pinned to rank 0
        } else {
            s.weight = frequency_weight(f, img.width, img.height);
            s.score = w1 * s.weight;
        }
    });

    std::sort(scores.begin(), scores.end(), [](const FrequencyScore& a, const FrequencyScore& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.freq.fy != b.freq.fy) return a.freq.fy < b.freq.fy;
        return a.freq.fx < b.freq.fx;
    });
    return scores;
}

CompressedImage compress_ranked(const GrayImage& img, const Spectrum& spec,
                                std::span<const FrequencyScore> ranking, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("alpha must be in (0, 1]");
    }
    const std::size_t total = ranking.size();
    std::size_t keep = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(total) + 0.5));
    keep = std::max<std::size_t>(1, std::min(keep, total));

    CompressedImage c;
    c.width = img.width;
    c.height = img.height;
    c.alpha = alpha;
    c.entries.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        FreqIndex f = ranking[i].freq;
        c.entries.push_back({f, spec.at(f.fy, f.fx)});
    }
    std::sort(c.entries.begin(), c.entries.end(), entry_order);
    return c;
}

CompressedImage compress(const GrayImage& img, double alpha, int threads) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("alpha must be in (0, 1]");
    }
    Spectrum spec = dft2(img);
    std::vector<FrequencyScore> ranking = rank_frequencies(img, threads);
    return compress_ranked(img, spec, ranking, alpha);
}

GrayImage decompress(const CompressedImage& c) {
    validate_container(c);
    Spectrum spec;
    spec.width = c.width;
    spec.height = c.height;
    spec.coeffs.assign(static_cast<std::size_t>(c.width) * c.height, {0.0, 0.0});
    for (const auto& e : c.entries) {
        FreqIndex conj = conjugate_index(e.freq, c.width, c.height);
        if (conj == e.freq) {
            // Hermitian projection: a self-conjugate coefficient is real.
            spec.at(e.freq.fy, e.freq.fx) = {e.coeff.real(), 0.0};
        } else {
            spec.at(e.freq.fy, e.freq.fx) = e.coeff;
            spec.at(conj.fy, conj.fx) = std::conj(e.coeff);
        }
    }
    return idft2(spec);
}

PersistenceDiagram compressed_diagram(const CompressedImage& c, double sigma) {
    return sublevel_diagram(gaussian_smooth(decompress(c), sigma));
}

std::vector<std::uint8_t> serialize_container(const CompressedImage& c) {
    validate_container(c);
    if (c.width > 0xFFFF || c.height > 0xFFFF) throw std::invalid_argument("dimensions exceed u16");
    std::vector<std::uint8_t> out;
    out.reserve(12 + c.entries.size() * 12);
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u16(out, static_cast<std::uint16_t>(c.width));
    put_u16(out, static_cast<std::uint16_t>(c.height));
    put_u32(out, static_cast<std::uint32_t>(c.entries.size()));
    for (const auto& e : c.entries) {
        put_u16(out, static_cast<std::uint16_t>(e.freq.fx));
        put_u16(out, static_cast<std::uint16_t>(e.freq.fy));
        put_f32(out, static_cast<float>(e.coeff.real()));
        put_f32(out, static_cast<float>(e.coeff.imag()));
    }
    return out;
}

CompressedImage parse_container(std::span<const std::uint8_t> bytes) {
    Reader r{bytes};
    r.need(4);
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw DecodeError(DecodeError::Kind::BadMagic, "bad container magic");
    }
    r.pos = 4;
    CompressedImage c;
    c.width = r.u16();
    c.height = r.u16();
    if (c.width < 2 || c.height < 2) {
        throw DecodeError(DecodeError::Kind::BadHeader, "container dimensions below 2x2");
    }
    std::uint32_t count = r.u32();
    if (count == 0) throw DecodeError(DecodeError::Kind::BadHeader, "container retains no frequencies");
    if (count > canonical_count(c.width, c.height)) {
        throw DecodeError(DecodeError::Kind::BadHeader, "container entry count exceeds canonical orbits");
    }
    c.entries.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        CompressedEntry e;
        e.freq.fx = r.u16();
        e.freq.fy = r.u16();
        double re = r.f32();
        double im = r.f32();
        e.coeff = {re, im};
        if (e.freq.fx >= c.width || e.freq.fy >= c.height ||
            !is_canonical(e.freq, c.width, c.height)) {
            throw DecodeError(DecodeError::Kind::BadIndex, "container frequency index invalid");
        }
        if (!c.entries.empty()) {
            if (c.entries.back().freq == e.freq) {
                throw DecodeError(DecodeError::Kind::DuplicateIndex, "duplicate frequency index");
            }
            if (!entry_order(c.entries.back(), e)) {
                throw DecodeError(DecodeError::Kind::BadIndex, "container entries out of order");
            }
        }
        c.entries.push_back(e);
    }
    if (r.pos != bytes.size()) {
        throw DecodeError(DecodeError::Kind::Truncated, "trailing bytes after container payload");
    }
    c.alpha = static_cast<double>(count) / static_cast<double>(canonical_count(c.width, c.height));
    return c;
}

std::vector<std::uint8_t> encode(const CompressedImage& c) {
    return deflate_bytes(serialize_container(c));
}

CompressedImage decode(std::span<const std::uint8_t> bytes) {
    return parse_container(inflate_bytes(bytes));
}

}  // namespace phc
