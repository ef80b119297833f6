#include "edgeroll/primitives.hpp"

#include <cmath>

namespace edgeroll {

const char* to_string(PrimitiveKind kind) {
    switch (kind) {
    case PrimitiveKind::Roll: return "roll";
    case PrimitiveKind::Pivot: return "pivot";
    case PrimitiveKind::Slide: return "slide";
    }
    return "unknown";
}

int pivot_sample_count(double angle) {
    return std::max(2, static_cast<int>(std::ceil(std::abs(angle) / 0.01)));
}

UnitDualQuaternion PrimitiveStep::pose_at(double xi) const {
    if (kind == PrimitiveKind::Roll) {
        if (xi <= 0.5) {
            return screw_to_dual_quat(screws[0].scaled(2.0 * xi)) * start_pose;
        }
        return screw_to_dual_quat(screws[1].scaled(2.0 * xi - 1.0)) *
               (screw_to_dual_quat(screws[0]) * start_pose);
    }
    return screw_to_dual_quat(screws[0].scaled(xi)) * start_pose;
}

Vec3 PrimitiveStep::contact_at(double xi) const {
    switch (kind) {
    case PrimitiveKind::Roll:
        // Rotation about the axis through e1 keeps e1 fixed, then the axis
        // through e2 takes over.
        return xi <= 0.5 ? contact_start : contact_end;
    case PrimitiveKind::Pivot:
        return contact_start;
    case PrimitiveKind::Slide:
        return contact_start + xi * (contact_end - contact_start);
    }
    return contact_start;
}

} // namespace edgeroll
