#pragma once

#include <cmath>

#include "orientext/errors.hpp"

namespace orientext {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

// A Vec3 with |v| = 1 within 1e-9, enforced at construction.
class UnitVec3 {
  public:
    UnitVec3() : v_(0.0, 0.0, 1.0) {}

    // Normalizes the input; rejects near-zero vectors.
    explicit UnitVec3(const Vec3& v) {
        const double n = v.norm();
        if (n < 1e-12) throw DegenerateNormal("cannot normalize a zero-length vector");
        v_ = v * (1.0 / n);
    }
    UnitVec3(double x, double y, double z) : UnitVec3(Vec3{x, y, z}) {}

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }
    const Vec3& vec() const { return v_; }

    UnitVec3 flipped() const {
        UnitVec3 r;
        r.v_ = -v_;
        return r;
    }

  private:
    Vec3 v_;
};

// Point in normalized image coordinates; z is the depth axis.
using Point3 = Vec3;

}  // namespace orientext
