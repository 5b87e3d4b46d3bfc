#include "orientext/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "orientext/errors.hpp"

namespace orientext {

double Quad2D::signed_area() const {
    double a = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Point2& p = corners[i];
        const Point2& q = corners[(i + 1) % 4];
        a += p.x * q.y - q.x * p.y;
    }
    return a / 2.0;
}

bool Quad2D::is_convex() const {
    // All cross products of consecutive edges must share a sign.
    int sign = 0;
    for (int i = 0; i < 4; ++i) {
        const Point2& a = corners[i];
        const Point2& b = corners[(i + 1) % 4];
        const Point2& c = corners[(i + 2) % 4];
        const double cr = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
        if (cr == 0.0) continue;
        const int s = cr > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return sign != 0;
}

double norm_scale(ImageSize size) {
    if (size.width <= 0 || size.height <= 0)
        throw InputError("image size must be positive");
    return std::max(size.width, size.height) / 2.0;
}

Point3 normalize_coords(Point2 p, ImageSize size) {
    const double s = norm_scale(size);
    return {(p.x - size.width / 2.0) / s, (p.y - size.height / 2.0) / s, 0.0};
}

Point2 denormalize_coords(const Point3& p, ImageSize size) {
    const double s = norm_scale(size);
    return {p.x * s + size.width / 2.0, p.y * s + size.height / 2.0};
}

Point3 translate_along_normal(const Point3& c, const UnitVec3& n, const ProjectionConfig& cfg) {
    return c - cfg.depth * n.vec();
}

Point3 project_to_plane(const Point3& p, const UnitVec3& n) {
    return p - n.vec().dot(p) * n.vec();
}

std::pair<UnitVec3, UnitVec3> in_plane_basis(const UnitVec3& n) {
    if (std::abs(n.x()) > 1.0 - 1e-9)
        throw DegenerateNormal("x axis is parallel to the surface normal");
    const Vec3 xhat{1.0, 0.0, 0.0};
    const UnitVec3 u(xhat - xhat.dot(n.vec()) * n.vec());
    const UnitVec3 v(n.vec().cross(u.vec()));
    return {u, v};
}

std::array<Point3, 4> align_bbox_corners3d(const BBox2D& box, const UnitVec3& n_in,
                                           const ProjectionConfig& cfg, ImageSize size) {
    if (box.w <= 0.0 || box.h <= 0.0) throw InputError("box dimensions must be positive");
    if (std::abs(n_in.z()) < cfg.min_facing)
        throw DegenerateNormal("surface is edge-on to the viewer (|n_z| below min_facing)");

    // The plane {n.x = 0} is the same for n and -n; orient toward the
    // viewer so the in-plane basis keeps the source winding.
    const UnitVec3 n = n_in.z() < 0.0 ? n_in.flipped() : n_in;

    const double s = norm_scale(size);
    const Point3 c = normalize_coords({box.cx, box.cy}, size);
    const Point3 shifted = translate_along_normal(c, n, cfg);
    const Point3 cp = project_to_plane(shifted, n);

    const auto [u, v] = in_plane_basis(n);
    const double hw = box.w / s / 2.0;
    const double hh = box.h / s / 2.0;

    return {cp - hw * u.vec() - hh * v.vec(),
            cp + hw * u.vec() - hh * v.vec(),
            cp + hw * u.vec() + hh * v.vec(),
            cp - hw * u.vec() + hh * v.vec()};
}

Quad2D align_bbox(const BBox2D& box, const UnitVec3& n, const ProjectionConfig& cfg,
                  ImageSize size) {
    const auto c3 = align_bbox_corners3d(box, n, cfg, size);
    Quad2D q;
    for (int i = 0; i < 4; ++i) q.corners[i] = denormalize_coords(c3[i], size);
    return q;
}

namespace {

// Gaussian elimination with partial pivoting on an n x (n+1) augmented matrix.
bool solve_linear(std::array<std::array<double, 9>, 8>& a, std::array<double, 8>& out) {
    constexpr int n = 8;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12) return false;
        std::swap(a[col], a[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    for (int i = 0; i < n; ++i) out[i] = a[i][n] / a[i][i];
    return true;
}

}  // namespace

Homography Homography::inverse() const {
    const auto& a = m;
    std::array<std::array<double, 3>, 3> c;
    c[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    c[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
    c[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
    c[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
    c[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    c[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
    c[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    c[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
    c[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    const double det = a[0][0] * c[0][0] + a[0][1] * c[1][0] + a[0][2] * c[2][0];
    if (std::abs(det) < 1e-12) throw DegenerateQuad("homography is singular");
    Homography r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = c[i][j] / det;
    if (std::abs(r.m[2][2]) > 1e-12) {
        const double w = r.m[2][2];
        for (auto& row : r.m)
            for (double& e : row) e /= w;
    }
    return r;
}

Homography homography_from_quads(const Quad2D& src, const Quad2D& dst) {
    // h33 fixed at 1; unknowns h11..h32 from 4 point correspondences.
    std::array<std::array<double, 9>, 8> a{};
    for (int i = 0; i < 4; ++i) {
        const double x = src.corners[i].x, y = src.corners[i].y;
        const double X = dst.corners[i].x, Y = dst.corners[i].y;
        a[2 * i] = {x, y, 1, 0, 0, 0, -x * X, -y * X, X};
        a[2 * i + 1] = {0, 0, 0, x, y, 1, -x * Y, -y * Y, Y};
    }
    std::array<double, 8> h{};
    if (!solve_linear(a, h))
        throw DegenerateQuad("quad corners are collinear or coincident");
    Homography r;
    r.m = {{{h[0], h[1], h[2]}, {h[3], h[4], h[5]}, {h[6], h[7], 1.0}}};
    return r;
}

Point2 apply_homography(const Homography& h, Point2 p) {
    const double X = h.m[0][0] * p.x + h.m[0][1] * p.y + h.m[0][2];
    const double Y = h.m[1][0] * p.x + h.m[1][1] * p.y + h.m[1][2];
    const double W = h.m[2][0] * p.x + h.m[2][1] * p.y + h.m[2][2];
    if (std::abs(W) < 1e-12) throw PointAtInfinity("projective denominator vanishes");
    return {X / W, Y / W};
}

}  // namespace orientext
