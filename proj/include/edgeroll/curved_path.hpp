#pragma once

#include <optional>
#include <vector>

#include "edgeroll/curve.hpp"
#include "edgeroll/cylinder.hpp"
#include "edgeroll/primitives.hpp"
#include "edgeroll/rolling.hpp"

namespace edgeroll {

/// A full edge-rolling (or sliding) task over a discretized path.
struct PlanProblem {
    UnitDualQuaternion start_pose;
    /// Target configuration for the final pivot. When absent the planner
    /// un-tilts the object to its upright placement at the path end.
    std::optional<UnitDualQuaternion> final_pose;
    DiscretizedPath path;
    CylinderGeometry geom;
    double beta = 0.0;
};

/// Pivot the object about the fixed edge point e1 into the rolling posture:
/// aligned with `heading` and tilted by `beta`. One ScLERP about a screw
/// axis through e1; every sampled pose keeps e1 fixed.
/// Throws InvalidInputError when e1 is not on the edge footprint (1e-6).
PrimitiveStep initial_tilt_pivot(const UnitDualQuaternion& start_pose, const Vec3& e1,
                                 const Vec3& heading, double beta, const CylinderGeometry& geom,
                                 int samples);

/// Pivot by `gamma` about the vertical screw axis through the current
/// contact point; the contact stays fixed and the heading rotates by gamma.
/// `radius` sets the step's equivalent arc length |gamma| * R.
PrimitiveStep alignment_pivot(const ContactState& state, double gamma, int samples, double radius);

/// Single ScLERP between two poses sharing the contact point `fixed`
/// (within 1e-6); used for the final pivot to the goal configuration.
PrimitiveStep pivot_between(const UnitDualQuaternion& from, const UnitDualQuaternion& to,
                            const Vec3& fixed, const CylinderGeometry& geom, int samples);

/// The upright placement reached by rotating the symmetry axis to +z about
/// the current contact point (the reverse of the initial tilt).
UnitDualQuaternion untilted_pose(const UnitDualQuaternion& tilted, const CylinderGeometry& geom);

/// Straight-line roll of `length` in `n` elements as primitive steps;
/// `state` advances to the line end.
std::vector<PrimitiveStep> roll_line_steps(ContactState& state, double length, int n,
                                           const CylinderGeometry& geom);

/// Edge-roll along the path: initial tilt-and-align pivot, then per segment
/// one two-screw roll element followed by an alignment pivot by the turn
/// angle (skipped when zero), then a final pivot to the goal configuration.
std::vector<PrimitiveStep> plan_curved_roll(const PlanProblem& problem);

/// Sliding variant: one pure-translation screw per segment instead of the
/// two rolling screws; alignment pivots unchanged.
std::vector<PrimitiveStep> plan_curved_slide(const PlanProblem& problem);

} // namespace edgeroll
