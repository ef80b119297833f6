#pragma once

#include <vector>

#include "edgeroll/screw.hpp"

namespace edgeroll {

enum class PrimitiveKind { Roll, Pivot, Slide };

const char* to_string(PrimitiveKind kind);

/// One planned motion primitive. Every primitive is a constant screw
/// displacement (or a pair of them, for rolling): the sampled pose list is
/// reproducible from `screws` and `start_pose` alone.
///
/// Roll carries exactly two screws (the element rotations about the axes
/// through the consecutive contact points); Pivot and Slide carry one.
struct PrimitiveStep {
    PrimitiveKind kind = PrimitiveKind::Pivot;
    std::vector<ScrewParameters> screws;
    /// Non-penetrated configurations sampled along the step, excluding the
    /// start pose (which is the previous step's last pose). The final entry
    /// is the step's end pose.
    std::vector<UnitDualQuaternion> poses;
    UnitDualQuaternion start_pose;
    Vec3 contact_start;
    Vec3 contact_end;
    /// Equivalent arc length used for time allotment: R*2*dtheta for a roll
    /// element, |angle|*R for a pivot, dx for a slide.
    double param_length = 0.0;

    const UnitDualQuaternion& end_pose() const { return poses.back(); }

    /// Pose at normalized progress xi in [0, 1] along the step's constant
    /// screw motion. Rolling traverses screw 1 on [0, 1/2] and screw 2 on
    /// [1/2, 1]; mid-element poses pass near the penetrated intermediate
    /// configuration and are only used for controller-rate resampling.
    UnitDualQuaternion pose_at(double xi) const;

    /// Instantaneous contact point at progress xi.
    Vec3 contact_at(double xi) const;
};

/// Sampling rule for pivot primitives: at least the endpoint pair, one
/// sample per 0.01 rad beyond that.
int pivot_sample_count(double angle);

} // namespace edgeroll
