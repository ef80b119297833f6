#pragma once

#include <optional>

#include "edgeroll/dual_quaternion.hpp"

namespace edgeroll {

/// The manipulated object. Body frame: origin at the center of the bottom
/// face, z along the symmetry axis; the rolling edge is the bottom rim
/// circle {R (cos t, sin t, 0)}.
struct CylinderGeometry {
    double radius = 0.0; // meters
    double height = 0.0; // meters
};

/// Throws InvalidInputError unless radius and height are positive.
void validate(const CylinderGeometry& geom);

/// One planning state of the edge-rolling chain: the object pose together
/// with the edge point currently on the support plane (z = 0) and the unit
/// in-plane direction of impending travel.
struct ContactState {
    Vec3 contact_point;           // on the support plane
    Vec3 heading{1.0, 0.0, 0.0};  // unit, z = 0
    UnitDualQuaternion pose;
};

/// World direction of the cylinder symmetry axis under `pose`.
Vec3 symmetry_axis(const UnitDualQuaternion& pose);

/// Smallest z over the edge circle (closed form).
double min_rim_height(const UnitDualQuaternion& pose, double radius);

/// The edge point with minimum z. Empty when the rim is horizontal (upright
/// cylinder), where the minimum is not unique.
std::optional<Vec3> rim_lowest_point(const UnitDualQuaternion& pose, double radius);

/// Closest point of the edge circle to a world point.
Vec3 nearest_rim_point(const UnitDualQuaternion& pose, double radius, const Vec3& query);

/// Canonical contact state: edge point `contact` (z = 0), travel direction
/// `heading` (unit, in plane), symmetry axis tilted by `beta` from the
/// support plane and leaning to the left of travel. beta = pi/2 is the
/// upright placement whose bottom face rests on the plane.
///
/// `spin` rotates the body about its own symmetry axis; it selects which
/// material edge point sits at `contact` (spin = 0 puts body point (0,R,0)
/// there). Pivot planners use it to keep one material point fixed.
ContactState make_contact_state(const Vec3& contact, const Vec3& heading, double beta,
                                const CylinderGeometry& geom, double spin = 0.0);

/// Spin value for make_contact_state that places the body edge point
/// currently at world point `world_on_rim` (under `pose`) at the contact.
double matching_spin(const UnitDualQuaternion& pose, const Vec3& world_on_rim, double radius);

/// Checks the ContactState invariants (contact on the plane, contact on the
/// rim, rim non-penetrating); throws InvalidInputError on violation.
void validate(const ContactState& state, const CylinderGeometry& geom, double tol = 1e-6);

} // namespace edgeroll
