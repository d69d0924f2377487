#include "suace/codec.hpp"

#include <cmath>
#include <csetjmp>
#include <cstring>

#include <png.h>

namespace suace {

namespace {

struct ByteReader {
    const std::vector<std::uint8_t>* bytes;
    std::size_t pos;
};

void read_from_vector(png_structp png, png_bytep out, png_size_t len) {
    auto* rd = static_cast<ByteReader*>(png_get_io_ptr(png));
    if (rd->pos + len > rd->bytes->size())
        png_error(png, "read past end of buffer");
    std::memcpy(out, rd->bytes->data() + rd->pos, len);
    rd->pos += len;
}

void write_to_vector(png_structp png, png_bytep data, png_size_t len) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + len);
}

void flush_noop(png_structp) {}

std::uint8_t luma_601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    double y = 0.299 * r + 0.587 * g + 0.114 * b;
    long v = std::llround(y);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    return static_cast<std::uint8_t>(v);
}

} // namespace

GrayImage decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0)
        throw FormatError("png: bad signature");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw IoError("png: allocation failure");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png: allocation failure");
    }

    // libpng reports errors via longjmp; convert to exceptions past this frame.
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("png: corrupt or truncated stream");
    }

    ByteReader rd{&bytes, 0};
    png_set_read_fn(png, &rd, read_from_vector);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int depth = png_get_bit_depth(png, info);
    int color = png_get_color_type(png, info);

    if (depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnsupportedDepthError("png: 16-bit samples are not supported");
    }
    if (w == 0 || h == 0 || w > 1u << 20 || h > 1u << 20) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("png: unreasonable dimensions");
    }

    if (color == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(png);
    png_read_update_info(png, info);

    int channels = png_get_channels(png, info);
    std::size_t stride = png_get_rowbytes(png, info);
    std::vector<std::uint8_t> raster(stride * h);
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        row_ptrs[y] = raster.data() + stride * y;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    for (png_uint_32 y = 0; y < h; ++y) {
        const std::uint8_t* row = raster.data() + stride * y;
        std::uint8_t* out = img.samples.data() + static_cast<std::size_t>(y) * w;
        switch (channels) {
        case 1:
            std::memcpy(out, row, w);
            break;
        case 2: // gray + alpha: alpha dropped
            for (png_uint_32 x = 0; x < w; ++x)
                out[x] = row[2 * x];
            break;
        case 3:
            for (png_uint_32 x = 0; x < w; ++x)
                out[x] = luma_601(row[3 * x], row[3 * x + 1], row[3 * x + 2]);
            break;
        case 4:
            for (png_uint_32 x = 0; x < w; ++x)
                out[x] = luma_601(row[4 * x], row[4 * x + 1], row[4 * x + 2]);
            break;
        default:
            throw FormatError("png: unexpected channel count");
        }
    }
    return img;
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw IoError("png: allocation failure");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png: allocation failure");
    }
    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("png: encode failure");
    }
    png_set_write_fn(png, &out, write_to_vector, flush_noop);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y)
        png_write_row(png, const_cast<png_bytep>(img.samples.data() +
                                                 static_cast<std::size_t>(y) * img.width));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

GrayImage load_png(const std::string& path) {
    return decode_png(read_file_bytes(path));
}

void save_png(const std::string& path, const GrayImage& img) {
    write_file_bytes(path, encode_png(img));
}

} // namespace suace
