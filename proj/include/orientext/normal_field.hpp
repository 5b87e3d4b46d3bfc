#pragma once

#include <string>
#include <vector>

#include "orientext/image.hpp"
#include "orientext/vec3.hpp"

namespace orientext {

// Per-pixel unit surface normals over an image grid, row-major.
class NormalField {
  public:
    NormalField() = default;
    NormalField(int width, int height)
        : width_(width), height_(height),
          data_(static_cast<size_t>(width) * height, Vec3{0, 0, 1}) {}

    int width() const { return width_; }
    int height() const { return height_; }

    const Vec3& at(int x, int y) const { return data_[static_cast<size_t>(y) * width_ + x]; }
    void set(int x, int y, const UnitVec3& n) {
        data_[static_cast<size_t>(y) * width_ + x] = n.vec();
    }

    const std::vector<Vec3>& data() const { return data_; }
    std::vector<Vec3>& mutable_data() { return data_; }

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Vec3> data_;
};

// Per-pixel region-of-interest mask paired with an image of the same size.
struct RoiMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;  // 0 or 1

    RoiMask() = default;
    RoiMask(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0) {}

    bool at(int x, int y) const { return data[static_cast<size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { data[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }

    static RoiMask full(int w, int h);
    static RoiMask from_rect(int w, int h, int rx, int ry, int rw, int rh);
    static RoiMask from_image(const ImageGray8& img);  // threshold at 128
    ImageGray8 to_image() const;
};

// Decodes an 8-bit RGB normal map: n = c/255*2 - 1 per channel, then
// renormalized. Pixels that decode to magnitude < 1e-3 become (0,0,1);
// zero_count, when given, receives how many were replaced.
NormalField decode_normal_map(const ImageRGB8& img, int* zero_count = nullptr);

// c = round((n+1)/2 * 255) per component, clamped to [0, 255].
ImageRGB8 encode_normal_map(const NormalField& field);

// Lossless float format: "NRM1" + u32le width + u32le height +
// width*height*3 f32le, row-major, xyz interleaved.
void write_raw(const std::string& path, const NormalField& field);
NormalField read_raw(const std::string& path);

// Renormalized component-wise mean over ROI pixels. Throws EmptyRoi when no
// pixel is selected, IncoherentNormals when the mean magnitude is < 0.1.
UnitVec3 dominant_normal(const NormalField& field, const RoiMask& roi);

NormalField synth_plane(const UnitVec3& n, int width, int height);

// Columns < split_col get n_left, the rest n_right.
NormalField synth_dihedral(const UnitVec3& n_left, const UnitVec3& n_right, int width,
                           int height, int split_col);

}  // namespace orientext
