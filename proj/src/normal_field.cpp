#include "orientext/normal_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "orientext/errors.hpp"

namespace orientext {

RoiMask RoiMask::full(int w, int h) {
    RoiMask m(w, h);
    std::fill(m.data.begin(), m.data.end(), uint8_t{1});
    return m;
}

RoiMask RoiMask::from_rect(int w, int h, int rx, int ry, int rw, int rh) {
    if (rw <= 0 || rh <= 0 || rx < 0 || ry < 0 || rx + rw > w || ry + rh > h)
        throw InputError("ROI rectangle lies outside the image");
    RoiMask m(w, h);
    for (int y = ry; y < ry + rh; ++y)
        for (int x = rx; x < rx + rw; ++x) m.set(x, y, true);
    return m;
}

RoiMask RoiMask::from_image(const ImageGray8& img) {
    RoiMask m(img.width, img.height);
    for (size_t i = 0; i < img.data.size(); ++i) m.data[i] = img.data[i] >= 128 ? 1 : 0;
    return m;
}

ImageGray8 RoiMask::to_image() const {
    ImageGray8 img(width, height);
    for (size_t i = 0; i < data.size(); ++i) img.data[i] = data[i] ? 255 : 0;
    return img;
}

NormalField decode_normal_map(const ImageRGB8& img, int* zero_count) {
    if (img.width <= 0 || img.height <= 0 || img.data.size() !=
        static_cast<size_t>(img.width) * img.height * 3)
        throw InvalidImage("normal map must be a non-empty 3-channel image");
    NormalField field(img.width, img.height);
    int zeros = 0;
    auto& out = field.mutable_data();
    for (size_t i = 0; i < out.size(); ++i) {
        const uint8_t* px = img.data.data() + i * 3;
        Vec3 v{px[0] / 255.0 * 2.0 - 1.0, px[1] / 255.0 * 2.0 - 1.0, px[2] / 255.0 * 2.0 - 1.0};
        const double n = v.norm();
        if (n < 1e-3) {
            ++zeros;
            out[i] = {0.0, 0.0, 1.0};
        } else {
            out[i] = v * (1.0 / n);
        }
    }
    if (zero_count) *zero_count = zeros;
    return field;
}

namespace {

uint8_t encode_component(double n) {
    const double c = std::floor((n + 1.0) / 2.0 * 255.0 + 0.5);  // round half up
    return static_cast<uint8_t>(std::clamp(c, 0.0, 255.0));
}

}  // namespace

ImageRGB8 encode_normal_map(const NormalField& field) {
    ImageRGB8 img(field.width(), field.height());
    const auto& in = field.data();
    for (size_t i = 0; i < in.size(); ++i) {
        uint8_t* px = img.data.data() + i * 3;
        px[0] = encode_component(in[i].x);
        px[1] = encode_component(in[i].y);
        px[2] = encode_component(in[i].z);
    }
    return img;
}

namespace {

void put_u32le(std::ostream& os, uint32_t v) {
    const uint8_t b[4] = {static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8),
                          static_cast<uint8_t>(v >> 16), static_cast<uint8_t>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32le(std::istream& is) {
    uint8_t b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw TruncatedFile("unexpected end of NRM1 header");
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void put_f32le(std::ostream& os, float f) {
    uint32_t v;
    std::memcpy(&v, &f, 4);
    put_u32le(os, v);
}

}  // namespace

void write_raw(const std::string& path, const NormalField& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write("NRM1", 4);
    put_u32le(os, static_cast<uint32_t>(field.width()));
    put_u32le(os, static_cast<uint32_t>(field.height()));
    for (const Vec3& v : field.data()) {
        put_f32le(os, static_cast<float>(v.x));
        put_f32le(os, static_cast<float>(v.y));
        put_f32le(os, static_cast<float>(v.z));
    }
    if (!os) throw IoError("write failed: " + path);
}

NormalField read_raw(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open for reading: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is) throw TruncatedFile("file shorter than NRM1 magic: " + path);
    if (std::memcmp(magic, "NRM1", 4) != 0) throw BadMagic("not an NRM1 file: " + path);
    const uint32_t w = get_u32le(is);
    const uint32_t h = get_u32le(is);
    if (w == 0 || h == 0 || w > 1u << 20 || h > 1u << 20)
        throw InvalidImage("implausible NRM1 dimensions in " + path);

    const size_t count = static_cast<size_t>(w) * h * 3;
    std::vector<uint8_t> buf(count * 4);
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<size_t>(is.gcount()) != buf.size())
        throw TruncatedFile("NRM1 payload shorter than declared size: " + path);

    NormalField field(static_cast<int>(w), static_cast<int>(h));
    auto& out = field.mutable_data();
    for (size_t i = 0; i < out.size(); ++i) {
        float f[3];
        for (int c = 0; c < 3; ++c) {
            const uint8_t* b = buf.data() + (i * 3 + c) * 4;
            const uint32_t v = static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
                               (static_cast<uint32_t>(b[2]) << 16) |
                               (static_cast<uint32_t>(b[3]) << 24);
            std::memcpy(&f[c], &v, 4);
        }
        out[i] = {f[0], f[1], f[2]};
    }
    return field;
}

UnitVec3 dominant_normal(const NormalField& field, const RoiMask& roi) {
    if (roi.width != field.width() || roi.height != field.height())
        throw DimensionMismatch("ROI dimensions do not match the normal field");
    Vec3 sum{0, 0, 0};
    size_t count = 0;
    for (int y = 0; y < field.height(); ++y) {
        for (int x = 0; x < field.width(); ++x) {
            if (!roi.at(x, y)) continue;
            sum = sum + field.at(x, y);
            ++count;
        }
    }
    if (count == 0) throw EmptyRoi("ROI selects no pixels");
    const Vec3 mean = sum * (1.0 / static_cast<double>(count));
    if (mean.norm() < 0.1)
        throw IncoherentNormals("ROI normals are too diverse for a single plane");
    return UnitVec3(mean);
}

NormalField synth_plane(const UnitVec3& n, int width, int height) {
    NormalField field(width, height);
    std::fill(field.mutable_data().begin(), field.mutable_data().end(), n.vec());
    return field;
}

NormalField synth_dihedral(const UnitVec3& n_left, const UnitVec3& n_right, int width,
                           int height, int split_col) {
    if (split_col <= 0 || split_col >= width)
        throw InputError("split column must lie strictly inside the image");
    NormalField field(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            field.set(x, y, x < split_col ? n_left : n_right);
    return field;
}

}  // namespace orientext
