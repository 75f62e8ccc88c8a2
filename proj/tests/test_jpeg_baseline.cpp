#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "phc/image_metrics.hpp"
#include "phc/jpeg_baseline.hpp"
#include "testimages.hpp"

TEST_CASE("quality mapping clamps to [5, 95]") {
    CHECK(phc::quality_for(0.02) == 5);
    CHECK(phc::quality_for(0.99) == 95);
    CHECK(phc::quality_for(0.30) == 30);
    CHECK(phc::quality_for(1.0) == 95);
    CHECK(phc::quality_for(0.05) == 5);
    CHECK_THROWS_AS(phc::quality_for(0.0), std::invalid_argument);
    CHECK_THROWS_AS(phc::quality_for(1.5), std::invalid_argument);
}

TEST_CASE("round trip preserves dimensions and the JPEG markers") {
    phc::GrayImage img = testimg::synth_natural(64, 21);
    phc::JpegResult result = phc::jpeg_roundtrip(img, 75);
    CHECK(result.decoded.width == img.width);
    CHECK(result.decoded.height == img.height);
    CHECK(result.quality == 75);

    std::vector<std::uint8_t> stream = phc::jpeg_encode(img, 75);
    REQUIRE(stream.size() == result.encoded_size);
    REQUIRE(stream.size() >= 4);
    CHECK(stream[0] == 0xFF);
    CHECK(stream[1] == 0xD8);
    CHECK(stream[stream.size() - 2] == 0xFF);
    CHECK(stream[stream.size() - 1] == 0xD9);
}

TEST_CASE("rate-distortion behaves monotonically at the extremes") {
    phc::GrayImage img = testimg::synth_natural(64, 22);
    phc::JpegResult high = phc::jpeg_roundtrip(img, 95);
    phc::JpegResult low = phc::jpeg_roundtrip(img, 10);
    CHECK(phc::mse(img, high.decoded) < phc::mse(img, low.decoded));
    CHECK(phc::jpeg_roundtrip(img, 90).encoded_size > phc::jpeg_roundtrip(img, 10).encoded_size);
}

TEST_CASE("constant images survive nearly unchanged") {
    phc::GrayImage img(32, 32, 128.0);
    phc::JpegResult result = phc::jpeg_roundtrip(img, 50);
    for (double v : result.decoded.pixels) {
        CHECK(std::abs(v - 128.0) <= 1.0);
    }
}

TEST_CASE("quality bounds are enforced and garbage streams fail") {
    phc::GrayImage img(16, 16, 0.0);
    CHECK_THROWS_AS(phc::jpeg_encode(img, 0), std::invalid_argument);
    CHECK_THROWS_AS(phc::jpeg_encode(img, 101), std::invalid_argument);
    std::vector<std::uint8_t> garbage{1, 2, 3, 4, 5};
    CHECK_THROWS_AS(phc::jpeg_decode(garbage), std::runtime_error);
}
