#include "edgeroll/curved_path.hpp"

#include <cmath>

#include "edgeroll/errors.hpp"

namespace edgeroll {

namespace {

constexpr double kZeroTurn = 1e-12;

/// Pivot step between two poses whose relative transform fixes `fixed`.
PrimitiveStep make_pivot_step(const UnitDualQuaternion& from, UnitDualQuaternion to,
                              const Vec3& fixed, int samples, double radius) {
    if (from.real().dot(to.real()) < 0.0) {
        to = -to;
    }
    const UnitDualQuaternion relative = to * from.conjugate();
    const auto screw = extract_screw(relative);

    PrimitiveStep step;
    step.kind = PrimitiveKind::Pivot;
    step.start_pose = from;
    step.contact_start = fixed;
    step.contact_end = fixed;
    if (!screw) {
        // Zero-angle pivot: identity step.
        step.screws.push_back(ScrewParameters{0.0, 0.0, Vec3::unit_z(), Vec3::zero()});
        step.poses.push_back(from);
        step.param_length = 0.0;
        return step;
    }
    step.screws.push_back(*screw);
    step.param_length = screw->theta * radius; // equivalent arc for time allotment
    step.poses.reserve(static_cast<size_t>(samples));
    for (int j = 1; j <= samples; ++j) {
        step.poses.push_back(step.pose_at(static_cast<double>(j) / samples));
    }
    return step;
}

PrimitiveStep make_roll_step(const ContactState& state, const RollSegmentPlan& plan, double radius) {
    PrimitiveStep step;
    step.kind = PrimitiveKind::Roll;
    step.start_pose = state.pose;
    step.screws = {plan.screw1, plan.screw2};
    step.poses.push_back(plan.end_state.pose);
    step.contact_start = state.contact_point;
    step.contact_end = plan.end_state.contact_point;
    step.param_length = radius * 2.0 * plan.dtheta;
    return step;
}

void check_footprint(const UnitDualQuaternion& pose, double radius, const Vec3& point,
                     const char* what) {
    if ((nearest_rim_point(pose, radius, point) - point).norm() > 1e-6) {
        throw InvalidInputError(std::string(what) + ": point is not on the edge footprint");
    }
}

void validate_problem(const PlanProblem& problem) {
    validate(problem.geom);
    if (problem.path.segment_count() < 1) {
        throw InvalidInputError("plan problem: path has no segments");
    }
    if (!(problem.beta > 0.0) || !(problem.beta < M_PI / 2.0)) {
        throw InvalidInputError("plan problem: tilt angle beta must lie in (0, pi/2)");
    }
    check_footprint(problem.start_pose, problem.geom.radius, problem.path.points.front(),
                    "plan problem start");
    if (problem.final_pose) {
        check_footprint(*problem.final_pose, problem.geom.radius, problem.path.points.back(),
                        "plan problem goal");
    }
}

/// Shared skeleton of the roll and slide planners; `advance` appends the
/// per-segment motion step(s) and returns the new state.
template <typename SegmentFn>
std::vector<PrimitiveStep> plan_over_path(const PlanProblem& problem, SegmentFn&& advance) {
    validate_problem(problem);
    const DiscretizedPath& path = problem.path;

    std::vector<PrimitiveStep> steps;
    steps.reserve(2 * path.segment_count() + 2);

    const Vec3 e0 = path.points.front();
    const Vec3 h0 = path.segment_direction(0);
    steps.push_back(initial_tilt_pivot(problem.start_pose, e0, h0, problem.beta, problem.geom,
                                       pivot_sample_count(M_PI / 2.0 - problem.beta)));

    ContactState state;
    state.contact_point = e0;
    state.heading = h0;
    state.pose = steps.back().end_pose();

    for (size_t i = 0; i < path.segment_count(); ++i) {
        state = advance(steps, state, i);
        if (i + 1 < path.segment_count()) {
            const double gamma = path.turn_angles[i];
            if (std::abs(gamma) > kZeroTurn) {
                steps.push_back(alignment_pivot(state, gamma, pivot_sample_count(gamma),
                                                problem.geom.radius));
                state.pose = steps.back().end_pose();
            }
            state.heading = path.segment_direction(i + 1);
        }
    }

    const UnitDualQuaternion goal =
        problem.final_pose ? *problem.final_pose : untilted_pose(state.pose, problem.geom);
    const auto goal_screw = extract_screw(goal * state.pose.conjugate());
    const double goal_angle = goal_screw ? goal_screw->theta : 0.0;
    steps.push_back(pivot_between(state.pose, goal, state.contact_point, problem.geom,
                                  pivot_sample_count(goal_angle)));
    return steps;
}

} // namespace

PrimitiveStep initial_tilt_pivot(const UnitDualQuaternion& start_pose, const Vec3& e1,
                                 const Vec3& heading, double beta, const CylinderGeometry& geom,
                                 int samples) {
    validate(geom);
    if (!(beta > 0.0) || !(beta < M_PI / 2.0)) {
        throw InvalidInputError("initial tilt pivot: beta must lie in (0, pi/2)");
    }
    check_footprint(start_pose, geom.radius, e1, "initial tilt pivot");

    // Match the target's spin so the material edge point now at e1 is the
    // one that stays in contact: the pivot is then a rotation through e1.
    const double spin = matching_spin(start_pose, e1, geom.radius);
    const ContactState target = make_contact_state(e1, heading, beta, geom, spin);
    return make_pivot_step(start_pose, target.pose, e1, samples, geom.radius);
}

PrimitiveStep alignment_pivot(const ContactState& state, double gamma, int samples,
                              double radius) {
    if (std::abs(gamma) >= M_PI) {
        throw InvalidInputError("alignment pivot angle must satisfy |gamma| < pi");
    }
    const UnitDualQuaternion to =
        rotation_about_axis(Vec3::unit_z(), state.contact_point, gamma) * state.pose;
    return make_pivot_step(state.pose, to, state.contact_point, samples, radius);
}

PrimitiveStep pivot_between(const UnitDualQuaternion& from, const UnitDualQuaternion& to,
                            const Vec3& fixed, const CylinderGeometry& geom, int samples) {
    check_footprint(from, geom.radius, fixed, "pivot");
    check_footprint(to, geom.radius, fixed, "pivot goal");
    return make_pivot_step(from, to, fixed, samples, geom.radius);
}

UnitDualQuaternion untilted_pose(const UnitDualQuaternion& tilted, const CylinderGeometry& geom) {
    const auto contact = rim_lowest_point(tilted, geom.radius);
    if (!contact) {
        return tilted; // already upright
    }
    const Vec3 axis = symmetry_axis(tilted);
    const Vec3 rot_axis = axis.cross(Vec3::unit_z());
    const double n = rot_axis.norm();
    if (n < 1e-12) {
        return tilted;
    }
    const double angle = std::atan2(n, axis.z);
    return rotation_about_axis(rot_axis / n, *contact, angle) * tilted;
}

std::vector<PrimitiveStep> roll_line_steps(ContactState& state, double length, int n,
                                           const CylinderGeometry& geom) {
    if (n < 1) {
        throw InvalidInputError("element count must be at least 1");
    }
    if (!(length > 0.0)) {
        throw InvalidInputError("line length must be positive");
    }
    const double dx = length / n;
    std::vector<PrimitiveStep> steps;
    steps.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const RollSegmentPlan plan = plan_roll_element(state, dx, geom);
        steps.push_back(make_roll_step(state, plan, geom.radius));
        state = plan.end_state;
    }
    return steps;
}

std::vector<PrimitiveStep> plan_curved_roll(const PlanProblem& problem) {
    return plan_over_path(problem, [&problem](std::vector<PrimitiveStep>& steps, ContactState state,
                                              size_t i) {
        const RollSegmentPlan plan =
            plan_roll_element(state, problem.path.segment_lengths[i], problem.geom);
        steps.push_back(make_roll_step(state, plan, problem.geom.radius));
        return plan.end_state;
    });
}

std::vector<PrimitiveStep> plan_curved_slide(const PlanProblem& problem) {
    return plan_over_path(problem, [&problem](std::vector<PrimitiveStep>& steps, ContactState state,
                                              size_t i) {
        const double dx = problem.path.segment_lengths[i];

        PrimitiveStep step;
        step.kind = PrimitiveKind::Slide;
        step.start_pose = state.pose;
        step.screws.push_back(ScrewParameters{0.0, dx, state.heading, Vec3::zero()});
        step.contact_start = state.contact_point;
        step.contact_end = state.contact_point + dx * state.heading;
        step.param_length = dx;
        step.poses.push_back(translation_transform(dx * state.heading) * state.pose);

        ContactState next = state;
        next.contact_point = step.contact_end;
        next.pose = step.poses.back();
        steps.push_back(std::move(step));
        return next;
    });
}

} // namespace edgeroll
