#include "phc/jpeg_baseline.hpp"

#include <cstdio>

#include <jpeglib.h>

#include <cmath>
#include <csetjmp>
#include <cstdlib>
#include <stdexcept>

#include "phc/image_io.hpp"

namespace phc {

namespace {

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void error_exit_hook(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

}  // namespace

int quality_for(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must be in (0, 1]");
    long q = std::lround(100.0 * alpha);
    if (q < 5) q = 5;
    if (q > 95) q = 95;
    return static_cast<int>(q);
}

std::vector<std::uint8_t> jpeg_encode(const GrayImage& img, int quality) {
    if (quality < 1 || quality > 100) throw std::invalid_argument("JPEG quality must be in [1, 100]");

    std::vector<std::uint8_t> quantized(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) quantized[i] = quantize_u8(img.pixels[i]);

    jpeg_compress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = error_exit_hook;

    unsigned char* buffer = nullptr;
    unsigned long buffer_size = 0;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_compress(&cinfo);
        if (buffer) std::free(buffer);
        throw std::runtime_error(std::string("JPEG encode failed: ") + jerr.message);
    }

    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &buffer, &buffer_size);

    cinfo.image_width = static_cast<JDIMENSION>(img.width);
    cinfo.image_height = static_cast<JDIMENSION>(img.height);
    cinfo.input_components = 1;
    cinfo.in_color_space = JCS_GRAYSCALE;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE /* baseline */);
    jpeg_start_compress(&cinfo, TRUE);

    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = quantized.data() + static_cast<std::size_t>(cinfo.next_scanline) * img.width;
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    std::vector<std::uint8_t> out(buffer, buffer + buffer_size);
    std::free(buffer);
    return out;
}

GrayImage jpeg_decode(std::span<const std::uint8_t> bytes) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = error_exit_hook;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw std::runtime_error(std::string("JPEG decode failed: ") + jerr.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_GRAYSCALE;
    jpeg_start_decompress(&cinfo);

    GrayImage out(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
    std::vector<std::uint8_t> row(cinfo.output_width);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW rp = row.data();
        int y = static_cast<int>(cinfo.output_scanline);
        jpeg_read_scanlines(&cinfo, &rp, 1);
        for (int x = 0; x < out.width; ++x) out.at(y, x) = row[x];
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return out;
}

JpegResult jpeg_roundtrip(const GrayImage& img, int quality) {
    std::vector<std::uint8_t> stream = jpeg_encode(img, quality);
    JpegResult result;
    result.quality = quality;
    result.encoded_size = stream.size();
    result.decoded = jpeg_decode(stream);
    return result;
}

}  // namespace phc
