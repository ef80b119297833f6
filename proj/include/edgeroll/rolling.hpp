#pragma once

#include <vector>

#include "edgeroll/cylinder.hpp"
#include "edgeroll/screw.hpp"

namespace edgeroll {

/// One rolling element: two constant screw displacements through the
/// consecutive contact points e1 and e2 = e1 + dx * heading, each a pure
/// rotation by dtheta about an axis parallel to the cylinder symmetry axis.
/// The penetrated intermediate configuration between them is never part of
/// the output.
struct RollSegmentPlan {
    ScrewParameters screw1; // axis through e1
    ScrewParameters screw2; // axis through e2
    double dtheta = 0.0;
    ContactState end_state;
};

/// Rotation of each of the two element screws: dtheta = asin(dx / (2R)),
/// from the chord relation dx = 2R sin(dtheta).
/// Throws InvalidInputError for dx < 0 or dx > 2R (chord exceeds diameter).
double element_angle(double dx, double radius);

/// Plan one element of length dx starting at `state`. The two screw axes
/// pass through e1 and e2; the end pose is screw2 * screw1 * state.pose and
/// touches the plane at e2.
RollSegmentPlan plan_roll_element(const ContactState& state, double dx, const CylinderGeometry& geom);

/// Roll a straight line of `length` in `n` equal elements; returns the n+1
/// chained contact states (the start plus each element end). Every returned
/// configuration is non-penetrated.
std::vector<ContactState> plan_straight_line(const ContactState& start, double length, int n,
                                             const CylinderGeometry& geom);

} // namespace edgeroll
