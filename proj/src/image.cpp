#include "orientext/image.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

namespace orientext {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

void read_png_common(const std::string& path, int want_channels, int& w, int& h,
                     std::vector<uint8_t>& out) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError("cannot open for reading: " + path);

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) throw IoError("png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw IoError("png_create_info_struct failed");
    if (setjmp(png_jmpbuf(r.png))) throw InvalidImage("failed to decode PNG: " + path);

    png_init_io(r.png, f.get());
    png_read_info(r.png, r.info);

    png_set_strip_16(r.png);
    png_set_strip_alpha(r.png);
    png_set_packing(r.png);
    png_set_expand(r.png);
    const int color = png_get_color_type(r.png, r.info);
    if (want_channels == 3) {
        if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(r.png);
    } else {
        if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_rgb_to_gray_fixed(r.png, 1, -1, -1);
    }
    png_read_update_info(r.png, r.info);

    w = static_cast<int>(png_get_image_width(r.png, r.info));
    h = static_cast<int>(png_get_image_height(r.png, r.info));
    if (static_cast<int>(png_get_channels(r.png, r.info)) != want_channels)
        throw InvalidImage("unexpected channel count in " + path);

    out.assign(static_cast<size_t>(w) * h * want_channels, 0);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y)
        rows[y] = out.data() + static_cast<size_t>(y) * w * want_channels;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);
}

void write_png_common(const std::string& path, int w, int h, int channels,
                      const uint8_t* data) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot open for writing: " + path);

    PngWriter wr;
    wr.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!wr.png) throw IoError("png_create_write_struct failed");
    wr.info = png_create_info_struct(wr.png);
    if (!wr.info) throw IoError("png_create_info_struct failed");
    if (setjmp(png_jmpbuf(wr.png))) throw IoError("failed to encode PNG: " + path);

    png_init_io(wr.png, f.get());
    // Fixed settings: output bytes depend only on pixel content.
    png_set_compression_level(wr.png, 6);
    png_set_filter(wr.png, 0, PNG_FILTER_NONE);
    png_set_IHDR(wr.png, wr.info, w, h, 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(wr.png, wr.info);

    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y)
        rows[y] = const_cast<png_bytep>(data + static_cast<size_t>(y) * w * channels);
    png_write_image(wr.png, rows.data());
    png_write_end(wr.png, nullptr);
}

}  // namespace

ImageRGB8 read_png_rgb(const std::string& path) {
    ImageRGB8 img;
    read_png_common(path, 3, img.width, img.height, img.data);
    return img;
}

ImageGray8 read_png_gray(const std::string& path) {
    ImageGray8 img;
    read_png_common(path, 1, img.width, img.height, img.data);
    return img;
}

void write_png(const std::string& path, const ImageRGB8& img) {
    write_png_common(path, img.width, img.height, 3, img.data.data());
}

void write_png(const std::string& path, const ImageGray8& img) {
    write_png_common(path, img.width, img.height, 1, img.data.data());
}

}  // namespace orientext
