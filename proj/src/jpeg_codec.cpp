#include "stagecast/jpeg_codec.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>

#include <jerror.h>
#include <jpeglib.h>

namespace stagecast::jpeg {

namespace {

// libjpeg reports fatal errors through error_exit; route them into exceptions
// instead of the default exit().
struct ErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void error_exit_thunk(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<ErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, mgr->message);
    std::longjmp(mgr->jump, 1);
}

} // namespace

std::vector<uint8_t> encode(const RgbImage& img, int quality) {
    if (img.empty())
        throw InvalidInput("jpeg::encode: empty raster");
    if (quality < 1 || quality > 100)
        throw InvalidInput("jpeg::encode: quality must be 1..100");

    jpeg_compress_struct cinfo{};
    ErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = error_exit_thunk;

    unsigned char* buf = nullptr;
    unsigned long buf_len = 0;

    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        free(buf);
        throw IoError(std::string("jpeg encode failed: ") + err.message);
    }

    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &buf, &buf_len);
    cinfo.image_width = static_cast<JDIMENSION>(img.width());
    cinfo.image_height = static_cast<JDIMENSION>(img.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);

    static_assert(sizeof(Rgb8) == 3);
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(
            reinterpret_cast<const JSAMPLE*>(img.data() + static_cast<size_t>(cinfo.next_scanline) * img.width()));
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    std::vector<uint8_t> out(buf, buf + buf_len);
    free(buf);
    return out;
}

RgbImage decode(std::span<const uint8_t> bytes) {
    jpeg_decompress_struct cinfo{};
    ErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = error_exit_thunk;

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw ParseError(std::string("jpeg decode failed: ") + err.message);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    if (jpeg_read_header(&cinfo, TRUE) != JPEG_HEADER_OK) {
        jpeg_destroy_decompress(&cinfo);
        throw ParseError("jpeg decode: bad header");
    }
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    RgbImage img(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row =
            reinterpret_cast<JSAMPLE*>(img.data() + static_cast<size_t>(cinfo.output_scanline) * img.width());
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

} // namespace stagecast::jpeg
