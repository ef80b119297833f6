#pragma once

#include <optional>

#include "edgeroll/dual_quaternion.hpp"

namespace edgeroll {

/// Screw displacement in Pluecker coordinates: rotation by theta about the
/// axis with unit direction u and moment m = r x u (r any point on the
/// axis), followed by translation d along u.
///
/// Canonical range theta in [0, pi]; extraction flips the axis when the raw
/// angle exceeds pi so interpolation takes the shorter rotation.
struct ScrewParameters {
    double theta = 0.0; // radians
    double d = 0.0;     // meters, translation along u
    Vec3 u{0.0, 0.0, 1.0};
    Vec3 m;

    /// Point on the axis closest to the origin (u x m).
    Vec3 axis_point() const { return u.cross(m); }

    /// Same screw with both theta and d scaled; the axis is unchanged, so
    /// this parameterizes the constant screw motion.
    ScrewParameters scaled(double s) const { return {theta * s, d * s, u, m}; }
};

/// D_T = (cos t/2 + u sin t/2) + eps(-(d/2) sin t/2 + sin(t/2) m + (d/2) cos(t/2) u).
/// Valid at theta = 0 (pure translation) with the m = 0 convention.
UnitDualQuaternion screw_to_dual_quat(const ScrewParameters& s);

/// Inverse of screw_to_dual_quat up to the double cover. Returns nullopt for
/// the identity transform, where no screw axis exists.
///
/// Degenerate branch: |sin(theta/2)| < 1e-8 is treated as a pure translation
/// (theta = 0, u along the translation, m = 0).
std::optional<ScrewParameters> extract_screw(const UnitDualQuaternion& d);

/// D12^s along the screw of d12. The identity transform (no screw) powers to
/// the identity for every s, so zero-length pivots compose uniformly.
UnitDualQuaternion screw_power(const UnitDualQuaternion& d12, double s);

/// Screw linear interpolation D(s) = D1 * (D1^-1 D2)^s, s in [0, 1].
///
/// D2 is negated first when dot(D1.real, D2.real) < 0 so the interpolation
/// does not take the long way around the double cover. When the relative
/// transform is a rotation about an axis through a point r, every
/// intermediate pose keeps r fixed.
UnitDualQuaternion sclerp(const UnitDualQuaternion& d1, const UnitDualQuaternion& d2, double s);

} // namespace edgeroll
