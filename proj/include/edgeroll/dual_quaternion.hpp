#pragma once

#include "edgeroll/quaternion.hpp"
#include "edgeroll/vec3.hpp"

namespace edgeroll {

/// Rigid-body pose as position + unit rotation quaternion.
struct Pose {
    Vec3 position;
    Quaternion rotation = Quaternion::identity();
};

/// General dual quaternion sigma = p + eps q (eps^2 = 0), no unit requirement.
///
/// The product discards the eps^2 term:
///   sigma1 * sigma2 = (p1 p2) + eps (p1 q2 + q1 p2)
struct DualQuaternion {
    Quaternion real;
    Quaternion dual = Quaternion::zero();

    static constexpr DualQuaternion identity() { return {Quaternion::identity(), Quaternion::zero()}; }

    constexpr DualQuaternion operator+(const DualQuaternion& o) const { return {real + o.real, dual + o.dual}; }

    constexpr DualQuaternion operator*(const DualQuaternion& o) const {
        return {real * o.real, real * o.dual + dual * o.real};
    }

    constexpr DualQuaternion operator-() const { return {-real, -dual}; }

    /// Quaternion conjugation applied to both parts; the inverse of a unit
    /// dual quaternion.
    constexpr DualQuaternion conjugate() const { return {real.conjugate(), dual.conjugate()}; }
};

/// Unit dual quaternion: |real| = 1 and dot(real, dual) = 0; represents an
/// SE(3) transform. D and -D encode the same transform (double cover).
///
/// Products renormalize to first order so long compositions (tens of
/// thousands of screw displacements) keep both unit conditions at
/// round-off level.
class UnitDualQuaternion {
public:
    UnitDualQuaternion() = default;

    /// Validates both unit conditions to `tol`; throws InvalidInputError.
    static UnitDualQuaternion from_parts(const Quaternion& real, const Quaternion& dual, double tol = 1e-6);

    /// Assumes the caller guarantees the unit conditions (internal fast path).
    static UnitDualQuaternion from_parts_unchecked(const Quaternion& real, const Quaternion& dual) {
        UnitDualQuaternion d;
        d.real_ = real;
        d.dual_ = dual;
        return d;
    }

    static UnitDualQuaternion identity() { return {}; }

    const Quaternion& real() const { return real_; }
    const Quaternion& dual() const { return dual_; }

    UnitDualQuaternion operator*(const UnitDualQuaternion& o) const {
        UnitDualQuaternion r;
        r.real_ = real_ * o.real_;
        r.dual_ = real_ * o.dual_ + dual_ * o.real_;
        r.renormalize();
        return r;
    }

    UnitDualQuaternion operator-() const { return from_parts_unchecked(-real_, -dual_); }

    /// Inverse transform.
    UnitDualQuaternion conjugate() const {
        return from_parts_unchecked(real_.conjugate(), dual_.conjugate());
    }

    bool satisfies_unit_conditions(double tol = 1e-10) const {
        return std::abs(real_.dot(real_) - 1.0) <= tol && std::abs(real_.dot(dual_)) <= tol;
    }

    /// Rotation part as a quaternion.
    const Quaternion& rotation() const { return real_; }

    /// Translation part: 2 dual real*.
    Vec3 translation() const {
        const Quaternion t = dual_ * real_.conjugate();
        return 2.0 * t.vec();
    }

    /// Apply the transform to a point.
    Vec3 transform_point(const Vec3& p) const { return real_.rotate(p) + translation(); }

    /// Rotate a direction (no translation).
    Vec3 rotate_vector(const Vec3& v) const { return real_.rotate(v); }

private:
    void renormalize() {
        const double n = real_.norm();
        real_ = real_ * (1.0 / n);
        dual_ = dual_ * (1.0 / n);
        dual_ = dual_ - real_ * real_.dot(dual_);
    }

    Quaternion real_ = Quaternion::identity();
    Quaternion dual_ = Quaternion::zero();
};

/// D_T = Q_R + eps (1/2) Q_p Q_R with Q_p = (0, p).
/// Throws InvalidInputError if the rotation is not unit (1e-6).
UnitDualQuaternion from_pose(const Pose& pose);

/// Inverse of from_pose; to_pose(d) == to_pose(-d).
/// Throws InvalidInputError if the unit conditions are violated beyond 1e-6.
Pose to_pose(const UnitDualQuaternion& d);

/// Pure translation transform.
UnitDualQuaternion translation_transform(const Vec3& t);

/// Rotation by `angle` about the axis with unit direction `axis` passing
/// through point `through`.
UnitDualQuaternion rotation_about_axis(const Vec3& axis, const Vec3& through, double angle);

} // namespace edgeroll
