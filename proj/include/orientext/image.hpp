#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orientext/errors.hpp"

namespace orientext {

struct ImageRGB8 {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;  // row-major, RGB interleaved

    ImageRGB8() = default;
    ImageRGB8(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0) {}

    uint8_t* pixel(int x, int y) { return data.data() + (static_cast<size_t>(y) * width + x) * 3; }
    const uint8_t* pixel(int x, int y) const {
        return data.data() + (static_cast<size_t>(y) * width + x) * 3;
    }
};

struct ImageGray8 {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    ImageGray8() = default;
    ImageGray8(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0) {}

    uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

// Binary character-mask raster; values are strictly {0, 255}.
using MaskImage = ImageGray8;

// PNG I/O. Reads force-expand to 8-bit RGB (or gray); writes use fixed
// encoder settings so identical pixels give byte-identical files.
ImageRGB8 read_png_rgb(const std::string& path);
ImageGray8 read_png_gray(const std::string& path);
void write_png(const std::string& path, const ImageRGB8& img);
void write_png(const std::string& path, const ImageGray8& img);

}  // namespace orientext
