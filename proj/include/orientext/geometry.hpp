#pragma once

#include <array>
#include <utility>

#include "orientext/vec3.hpp"

namespace orientext {

struct ImageSize {
    int width = 0;
    int height = 0;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Axis-aligned character cell: center + dimensions, in pixels.
struct BBox2D {
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;

    std::array<Point2, 4> corners() const {
        return {{{cx - w / 2, cy - h / 2},
                 {cx + w / 2, cy - h / 2},
                 {cx + w / 2, cy + h / 2},
                 {cx - w / 2, cy + h / 2}}};
    }
};

// Ordered top-left, top-right, bottom-right, bottom-left as seen in the
// source box. Positive signed area in the y-down pixel frame.
struct Quad2D {
    std::array<Point2, 4> corners;

    double signed_area() const;
    bool is_convex() const;
};

struct ProjectionConfig {
    double depth = 1.0;
    // Minimum |n_z|; below this the surface is edge-on and alignment fails.
    double min_facing = 0.05;
};

// Normalized coordinate scale: half the longer image side, so the longer
// side spans [-1, 1] with the origin at the image center (y down).
double norm_scale(ImageSize size);

Point3 normalize_coords(Point2 p, ImageSize size);
Point2 denormalize_coords(const Point3& p, ImageSize size);

Point3 translate_along_normal(const Point3& c, const UnitVec3& n, const ProjectionConfig& cfg);

// Orthogonal projection of p onto the plane {x : n.x = 0}.
Point3 project_to_plane(const Point3& p, const UnitVec3& n);

// In-plane orthonormal axes: u = normalize(x_hat - (x_hat.n) n), v = n x u.
// Throws DegenerateNormal when x_hat is parallel to n.
std::pair<UnitVec3, UnitVec3> in_plane_basis(const UnitVec3& n);

// The four on-plane 3D corners of the aligned box, ordered TL, TR, BR, BL.
// Exposed so the dimension-preservation property can be checked directly.
std::array<Point3, 4> align_bbox_corners3d(const BBox2D& box, const UnitVec3& n,
                                           const ProjectionConfig& cfg, ImageSize size);

// Full pipeline: normalize, translate along the normal, project onto the
// plane through the origin, build the in-plane quad, read back to pixels.
Quad2D align_bbox(const BBox2D& box, const UnitVec3& n, const ProjectionConfig& cfg,
                  ImageSize size);

// 3x3 projective transform, normalized so m[2][2] = 1 when nonzero.
struct Homography {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static Homography identity() { return {}; }
    Homography inverse() const;
};

// Direct linear solve of the 8-unknown projective system mapping the four
// src corners onto the four dst corners.
Homography homography_from_quads(const Quad2D& src, const Quad2D& dst);

Point2 apply_homography(const Homography& h, Point2 p);

}  // namespace orientext
