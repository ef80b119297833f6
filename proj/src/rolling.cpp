#include "edgeroll/rolling.hpp"

#include <cmath>

#include "edgeroll/errors.hpp"

namespace edgeroll {

double element_angle(double dx, double radius) {
    if (dx < 0.0) {
        throw InvalidInputError("element length dx must be non-negative");
    }
    if (dx > 2.0 * radius) {
        throw InvalidInputError("element length dx exceeds the edge diameter 2R");
    }
    return std::asin(dx / (2.0 * radius));
}

RollSegmentPlan plan_roll_element(const ContactState& state, double dx, const CylinderGeometry& geom) {
    if (!(dx > 0.0)) {
        throw InvalidInputError("element length dx must be positive");
    }
    const double dtheta = element_angle(dx, geom.radius);

    // The instantaneous axis of rotation is parallel to the cylinder
    // symmetry axis; project out any travel component so a slightly
    // misaligned pose still rolls along the commanded heading.
    const Vec3 axis_raw = symmetry_axis(state.pose);
    Vec3 u = axis_raw - state.heading * axis_raw.dot(state.heading);
    const double n = u.norm();
    if (n < 1e-9) {
        throw InvalidInputError("cylinder axis is parallel to the heading; rolling is undefined");
    }
    u = u / n;
    // Orient the axis so +dtheta advances the contact along the heading.
    if (u.cross(Vec3::unit_z()).dot(state.heading) < 0.0) {
        u = -u;
    }

    const Vec3 e1 = state.contact_point;
    const Vec3 e2 = e1 + dx * state.heading;

    RollSegmentPlan plan;
    plan.dtheta = dtheta;
    plan.screw1 = ScrewParameters{dtheta, 0.0, u, e1.cross(u)};
    plan.screw2 = ScrewParameters{dtheta, 0.0, u, e2.cross(u)};
    plan.end_state.contact_point = e2;
    plan.end_state.heading = state.heading;
    plan.end_state.pose = screw_to_dual_quat(plan.screw2) * (screw_to_dual_quat(plan.screw1) * state.pose);
    return plan;
}

std::vector<ContactState> plan_straight_line(const ContactState& start, double length, int n,
                                             const CylinderGeometry& geom) {
    if (!(length > 0.0)) {
        throw InvalidInputError("line length must be positive");
    }
    if (n < 1) {
        throw InvalidInputError("element count must be at least 1");
    }
    const double dx = length / n;

    std::vector<ContactState> states;
    states.reserve(static_cast<size_t>(n) + 1);
    states.push_back(start);
    for (int i = 0; i < n; ++i) {
        states.push_back(plan_roll_element(states.back(), dx, geom).end_state);
    }
    return states;
}

} // namespace edgeroll
