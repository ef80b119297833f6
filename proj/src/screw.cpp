#include "edgeroll/screw.hpp"

#include <cmath>

namespace edgeroll {

namespace {
// Below this, sin(theta/2) is treated as zero and extraction takes the
// pure-translation branch.
constexpr double kDegenerateHalfSine = 1e-8;
} // namespace

UnitDualQuaternion screw_to_dual_quat(const ScrewParameters& s) {
    const double half = 0.5 * s.theta;
    const double c = std::cos(half);
    const double sn = std::sin(half);
    const Quaternion real{c, s.u * sn};
    const Quaternion dual{-0.5 * s.d * sn, sn * s.m + (0.5 * s.d * c) * s.u};
    UnitDualQuaternion out = UnitDualQuaternion::from_parts_unchecked(real, dual);
    return out;
}

std::optional<ScrewParameters> extract_screw(const UnitDualQuaternion& d) {
    // Canonical sheet: real scalar >= 0 gives theta in [0, pi].
    UnitDualQuaternion c = d;
    if (c.real().w < 0.0) {
        c = -c;
    }
    const Quaternion& p = c.real();
    const Quaternion& q = c.dual();

    const Vec3 pv = p.vec();
    const double sn = pv.norm();

    if (sn < kDegenerateHalfSine) {
        // Pure translation (or identity): axis direction along the
        // translation, moment zero by convention (axis at infinity).
        const Vec3 t = c.translation();
        const double len = t.norm();
        if (len < 1e-12) {
            return std::nullopt;
        }
        return ScrewParameters{0.0, len, t / len, Vec3::zero()};
    }

    ScrewParameters s;
    s.theta = 2.0 * std::atan2(sn, p.w);
    s.u = pv / sn;
    s.d = -2.0 * q.w / sn;
    s.m = (q.vec() - (0.5 * s.d * p.w) * s.u) / sn;
    return s;
}

UnitDualQuaternion screw_power(const UnitDualQuaternion& d12, double s) {
    const auto screw = extract_screw(d12);
    if (!screw) {
        return UnitDualQuaternion::identity();
    }
    return screw_to_dual_quat(screw->scaled(s));
}

UnitDualQuaternion sclerp(const UnitDualQuaternion& d1, const UnitDualQuaternion& d2, double s) {
    UnitDualQuaternion target = d2;
    if (d1.real().dot(d2.real()) < 0.0) {
        target = -target;
    }
    const UnitDualQuaternion d12 = d1.conjugate() * target;
    return d1 * screw_power(d12, s);
}

} // namespace edgeroll
