#pragma once

#include <cstdint>
#include <utility>

#include "orientext/image.hpp"
#include "orientext/normal_field.hpp"

namespace orientext {

// Affine warp about the image center: rotate, then scale, then shear,
// then translate (pixels).
struct AffineParams {
    double rotate_deg = 0.0;
    double scale = 1.0;
    double shear_x = 0.0;
    double tx = 0.0;
    double ty = 0.0;

    bool is_identity() const {
        return rotate_deg == 0.0 && scale == 1.0 && shear_x == 0.0 && tx == 0.0 && ty == 0.0;
    }
};

// Warps the image (bilinear, out-of-bounds black) and the normal field
// (nearest-neighbor). Normal vectors are transformed by the inverse
// transpose of the linear part on (x, y), z preserved, then renormalized.
// Identity parameters are a strict no-op.
std::pair<ImageRGB8, NormalField> affine_warp_pair(const ImageRGB8& image,
                                                   const NormalField& field,
                                                   const AffineParams& params);

// Convenience sampler: rotate within +/-20 deg, scale 0.9-1.1,
// shear within +/-0.1, no translation. Deterministic for a fixed seed.
AffineParams sample_affine_params(uint64_t seed);

}  // namespace orientext
