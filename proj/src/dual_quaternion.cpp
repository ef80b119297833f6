#include "edgeroll/dual_quaternion.hpp"

#include <cmath>

#include "edgeroll/errors.hpp"

namespace edgeroll {

UnitDualQuaternion UnitDualQuaternion::from_parts(const Quaternion& real, const Quaternion& dual, double tol) {
    if (std::abs(real.norm() - 1.0) > tol) {
        throw InvalidInputError("dual quaternion real part is not unit");
    }
    if (std::abs(real.dot(dual)) > tol) {
        throw InvalidInputError("dual quaternion parts are not orthogonal");
    }
    UnitDualQuaternion d;
    d.real_ = real;
    d.dual_ = dual;
    d.renormalize();
    return d;
}

UnitDualQuaternion from_pose(const Pose& pose) {
    if (!pose.rotation.is_unit(1e-6)) {
        throw InvalidInputError("pose rotation quaternion is not unit");
    }
    const Quaternion qr = pose.rotation.normalized();
    const Quaternion qp{0.0, pose.position};
    return UnitDualQuaternion::from_parts_unchecked(qr, 0.5 * (qp * qr));
}

Pose to_pose(const UnitDualQuaternion& d) {
    if (!d.satisfies_unit_conditions(1e-6)) {
        throw InvalidInputError("dual quaternion violates the unit conditions");
    }
    // Double cover: fix the sign of the real part so d and -d agree.
    UnitDualQuaternion c = d;
    const Quaternion& r = c.real();
    if (r.w < 0.0 || (r.w == 0.0 && (r.x < 0.0 || (r.x == 0.0 && (r.y < 0.0 || (r.y == 0.0 && r.z < 0.0)))))) {
        c = -c;
    }
    Pose pose;
    pose.rotation = c.real().normalized();
    pose.position = c.translation();
    return pose;
}

UnitDualQuaternion translation_transform(const Vec3& t) {
    return UnitDualQuaternion::from_parts_unchecked(Quaternion::identity(), Quaternion{0.0, 0.5 * t});
}

UnitDualQuaternion rotation_about_axis(const Vec3& axis, const Vec3& through, double angle) {
    const Quaternion qr = Quaternion::from_axis_angle(axis, angle);
    // Translation of a rotation about an offset axis: t = r - R r.
    const Vec3 t = through - qr.rotate(through);
    const Quaternion qp{0.0, t};
    return UnitDualQuaternion::from_parts_unchecked(qr, 0.5 * (qp * qr));
}

} // namespace edgeroll
