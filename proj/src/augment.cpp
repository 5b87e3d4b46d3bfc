#include "orientext/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "orientext/errors.hpp"

namespace orientext {

namespace {

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;  // [[a b][c d]]

    double det() const { return a * d - b * c; }
    Mat2 inverse() const {
        const double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

Mat2 linear_part(const AffineParams& p) {
    const double t = p.rotate_deg * std::numbers::pi / 180.0;
    const Mat2 rot{std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
    const Mat2 scale{p.scale, 0, 0, p.scale};
    const Mat2 shear{1, p.shear_x, 0, 1};
    return rot * scale * shear;
}

}  // namespace

std::pair<ImageRGB8, NormalField> affine_warp_pair(const ImageRGB8& image,
                                                   const NormalField& field,
                                                   const AffineParams& params) {
    if (image.width != field.width() || image.height != field.height())
        throw DimensionMismatch("image and normal field differ in size");
    if (params.scale <= 0.0) throw SingularAffine("scale must be positive");

    const Mat2 m = linear_part(params);
    if (std::abs(m.det()) < 1e-6) throw SingularAffine("affine linear part is singular");

    if (params.is_identity()) return {image, field};

    const Mat2 inv = m.inverse();
    const Mat2 nrm = inv.transpose();  // applied to (n_x, n_y)
    const double cx = image.width / 2.0;
    const double cy = image.height / 2.0;

    ImageRGB8 out_img(image.width, image.height);
    NormalField out_field(image.width, image.height);

    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            // Pull: output pixel center -> source coordinates.
            const double dx = (x + 0.5) - cx - params.tx;
            const double dy = (y + 0.5) - cy - params.ty;
            const double sx = inv.a * dx + inv.b * dy + cx - 0.5;
            const double sy = inv.c * dx + inv.d * dy + cy - 0.5;

            // Bilinear for the image, out-of-bounds stays black.
            const int x0 = static_cast<int>(std::floor(sx));
            const int y0 = static_cast<int>(std::floor(sy));
            const double fx = sx - x0;
            const double fy = sy - y0;
            uint8_t* dst = out_img.pixel(x, y);
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int j = 0; j < 2; ++j) {
                    for (int i = 0; i < 2; ++i) {
                        const int px = x0 + i;
                        const int py = y0 + j;
                        if (px < 0 || py < 0 || px >= image.width || py >= image.height) continue;
                        const double wgt = (i ? fx : 1.0 - fx) * (j ? fy : 1.0 - fy);
                        acc += wgt * image.pixel(px, py)[c];
                    }
                }
                dst[c] = static_cast<uint8_t>(std::clamp(std::floor(acc + 0.5), 0.0, 255.0));
            }

            // Nearest-neighbor for normals; avoids blending across creases.
            const int nx = std::clamp(static_cast<int>(std::floor(sx + 0.5)), 0, image.width - 1);
            const int ny = std::clamp(static_cast<int>(std::floor(sy + 0.5)), 0, image.height - 1);
            const Vec3& n = field.at(nx, ny);
            const Vec3 rotated{nrm.a * n.x + nrm.b * n.y, nrm.c * n.x + nrm.d * n.y, n.z};
            out_field.set(x, y, UnitVec3(rotated));
        }
    }
    return {std::move(out_img), std::move(out_field)};
}

AffineParams sample_affine_params(uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rot(-20.0, 20.0);
    std::uniform_real_distribution<double> scale(0.9, 1.1);
    std::uniform_real_distribution<double> shear(-0.1, 0.1);
    AffineParams p;
    p.rotate_deg = rot(rng);
    p.scale = scale(rng);
    p.shear_x = shear(rng);
    return p;
}

}  // namespace orientext
