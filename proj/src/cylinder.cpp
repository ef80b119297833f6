#include "edgeroll/cylinder.hpp"

#include <cmath>

#include "edgeroll/errors.hpp"

namespace edgeroll {

void validate(const CylinderGeometry& geom) {
    if (!(geom.radius > 0.0) || !(geom.height > 0.0)) {
        throw InvalidInputError("cylinder radius and height must be positive");
    }
}

Vec3 symmetry_axis(const UnitDualQuaternion& pose) {
    return pose.rotate_vector(Vec3::unit_z());
}

namespace {

struct RimFrame {
    Vec3 center; // world position of the bottom-face center
    Vec3 ex;     // world image of body x
    Vec3 ey;     // world image of body y
};

RimFrame rim_frame(const UnitDualQuaternion& pose) {
    return {pose.translation(), pose.rotate_vector(Vec3::unit_x()), pose.rotate_vector(Vec3::unit_y())};
}

} // namespace

double min_rim_height(const UnitDualQuaternion& pose, double radius) {
    const RimFrame f = rim_frame(pose);
    return f.center.z - radius * std::hypot(f.ex.z, f.ey.z);
}

std::optional<Vec3> rim_lowest_point(const UnitDualQuaternion& pose, double radius) {
    const RimFrame f = rim_frame(pose);
    const double amp = std::hypot(f.ex.z, f.ey.z);
    if (amp < 1e-12) {
        return std::nullopt; // horizontal rim, no unique lowest point
    }
    const double t = std::atan2(-f.ey.z / amp, -f.ex.z / amp);
    return f.center + radius * (std::cos(t) * f.ex + std::sin(t) * f.ey);
}

Vec3 nearest_rim_point(const UnitDualQuaternion& pose, double radius, const Vec3& query) {
    const RimFrame f = rim_frame(pose);
    const Vec3 rel = query - f.center;
    const double cx = rel.dot(f.ex);
    const double cy = rel.dot(f.ey);
    const double n = std::hypot(cx, cy);
    if (n < 1e-12) {
        // Query on the rim axis: every rim point is equally close.
        return f.center + radius * f.ex;
    }
    return f.center + (radius / n) * (cx * f.ex + cy * f.ey);
}

ContactState make_contact_state(const Vec3& contact, const Vec3& heading, double beta,
                                const CylinderGeometry& geom, double spin) {
    validate(geom);
    if (std::abs(contact.z) > 1e-9) {
        throw InvalidInputError("contact point must lie on the support plane (z = 0)");
    }
    if (std::abs(heading.z) > 1e-9 || std::abs(heading.norm() - 1.0) > 1e-9) {
        throw InvalidInputError("heading must be a unit in-plane direction");
    }
    if (!(beta > 0.0) || beta > M_PI / 2.0 + 1e-12) {
        throw InvalidInputError("tilt angle beta must lie in (0, pi/2]");
    }

    const double yaw = std::atan2(heading.y, heading.x);
    const Quaternion q = rotation_about_z(yaw) *
                         Quaternion::from_axis_angle(Vec3::unit_x(), beta - M_PI / 2.0) *
                         rotation_about_z(spin);
    // Bottom-face center offset from the contact point, in the unrotated
    // (yaw = 0) frame: (0, -R sin beta, R cos beta).
    const Vec3 offset = rotation_about_z(yaw).rotate(
        Vec3{0.0, -geom.radius * std::sin(beta), geom.radius * std::cos(beta)});

    ContactState state;
    state.contact_point = contact;
    state.heading = Vec3{heading.x, heading.y, 0.0}.normalized();
    state.pose = from_pose(Pose{contact + offset, q});
    return state;
}

double matching_spin(const UnitDualQuaternion& pose, const Vec3& world_on_rim, double radius) {
    const RimFrame f = rim_frame(pose);
    const Vec3 rel = world_on_rim - f.center;
    const double t1 = std::atan2(rel.dot(f.ey), rel.dot(f.ex));
    (void)radius;
    // make_contact_state(spin = 0) places body point (0, R, 0), i.e. body
    // phase pi/2, at the contact; spin shifts the phase by -spin.
    return M_PI / 2.0 - t1;
}

void validate(const ContactState& state, const CylinderGeometry& geom, double tol) {
    validate(geom);
    if (std::abs(state.contact_point.z) > 1e-9) {
        throw InvalidInputError("contact point is off the support plane");
    }
    const Vec3 nearest = nearest_rim_point(state.pose, geom.radius, state.contact_point);
    if ((nearest - state.contact_point).norm() > tol) {
        throw InvalidInputError("contact point does not lie on the cylinder edge");
    }
    if (min_rim_height(state.pose, geom.radius) < -tol) {
        throw InvalidInputError("cylinder edge penetrates the support plane");
    }
}

} // namespace edgeroll
