#pragma once

#include <cmath>

#include "edgeroll/vec3.hpp"

namespace edgeroll {

/// Hamilton quaternion q = w + x i + y j + z k.
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr Quaternion(double scalar, const Vec3& v) : w(scalar), x(v.x), y(v.y), z(v.z) {}

    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion zero() { return {0.0, 0.0, 0.0, 0.0}; }

    /// Rotation by `angle` about unit vector `axis`.
    static Quaternion from_axis_angle(const Vec3& axis, double angle) {
        const double h = 0.5 * angle;
        return {std::cos(h), axis * std::sin(h)};
    }

    constexpr Vec3 vec() const { return {x, y, z}; }

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator*(double k) const { return {w * k, x * k, y * k, z * k}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    /// Hamilton product.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }

    constexpr double dot(const Quaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }

    double norm() const { return std::sqrt(dot(*this)); }

    Quaternion normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    bool is_unit(double tol = 1e-10) const { return std::abs(dot(*this) - 1.0) <= 2.0 * tol; }

    /// Rotate a vector: v' = q (0,v) q*. Assumes *this is unit.
    Vec3 rotate(const Vec3& v) const {
        // Expanded form of q (0,v) q* to avoid two full products.
        const Vec3 u{x, y, z};
        const Vec3 t = 2.0 * u.cross(v);
        return v + w * t + u.cross(t);
    }
};

inline constexpr Quaternion operator*(double k, const Quaternion& q) { return q * k; }

/// Quaternion representation of rotation about +z by `angle`.
inline Quaternion rotation_about_z(double angle) {
    return Quaternion::from_axis_angle(Vec3::unit_z(), angle);
}

} // namespace edgeroll
