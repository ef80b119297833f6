#include <doctest.h>

#include "edgeroll/errors.hpp"
#include "edgeroll/rolling.hpp"
#include "test_support.hpp"

using namespace edgeroll;

namespace {
const CylinderGeometry kCylinder{0.037, 0.234};

ContactState tilted_start(double beta = 0.4, const Vec3& heading = Vec3::unit_x()) {
    return make_contact_state(Vec3::zero(), heading, beta, kCylinder);
}
} // namespace

TEST_CASE("element_angle values and domain") {
    CHECK(element_angle(0.0, 0.037) == 0.0);
    CHECK(element_angle(2.0 * 0.037, 0.037) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    // dx = 0.0342 mm with R = 0.037 m.
    CHECK(element_angle(0.0342e-3, 0.037) == doctest::Approx(4.6216e-4).epsilon(1e-4));
    CHECK(std::abs(element_angle(0.0342e-3, 0.037) - std::asin(0.0342e-3 / 0.074)) < 1e-16);

    CHECK_THROWS_AS(element_angle(-0.1, 0.037), InvalidInputError);
    CHECK_THROWS_AS(element_angle(0.075, 0.037), InvalidInputError);
}

TEST_CASE("make_contact_state produces a tangent tilted pose") {
    const double beta = 0.31;
    const ContactState s = make_contact_state({0.2, -0.3, 0.0}, Vec3::unit_y(), beta, kCylinder);
    validate(s, kCylinder);

    // Axis tilt relative to the plane is beta.
    const Vec3 axis = symmetry_axis(s.pose);
    CHECK(std::asin(axis.z) == doctest::Approx(beta).epsilon(1e-12));
    // Axis is perpendicular to the heading.
    CHECK(std::abs(axis.dot(s.heading)) < 1e-12);
    // Tangency at the contact.
    CHECK(std::abs(min_rim_height(s.pose, kCylinder.radius)) < 1e-12);
    const auto lowest = rim_lowest_point(s.pose, kCylinder.radius);
    REQUIRE(lowest.has_value());
    CHECK((*lowest - s.contact_point).norm() < 1e-12);
}

TEST_CASE("rim helpers agree with dense sampling") {
    testsupport::Rng rng(211);
    for (int trial = 0; trial < 100; ++trial) {
        const UnitDualQuaternion pose = testsupport::random_unit_dq(rng);
        const double closed = min_rim_height(pose, 0.05);
        const double sampled = testsupport::sampled_min_rim_height(pose, 0.05);
        CHECK(sampled >= closed - 1e-12);
        CHECK(sampled - closed < 1e-6); // 3600 samples resolve the minimum well
    }
}

TEST_CASE("plan_roll_element moves the contact by dx along the heading") {
    const ContactState start = tilted_start();
    const double dx = 0.004;
    const RollSegmentPlan plan = plan_roll_element(start, dx, kCylinder);

    CHECK((plan.end_state.contact_point - (start.contact_point + dx * start.heading)).norm() < 1e-10);
    CHECK((plan.end_state.heading - start.heading).norm() == 0.0);

    // Both screws are pure rotations about axes parallel to the symmetry axis.
    CHECK(plan.screw1.d == 0.0);
    CHECK(plan.screw2.d == 0.0);
    const Vec3 axis = symmetry_axis(start.pose);
    CHECK(std::abs(std::abs(plan.screw1.u.dot(axis)) - 1.0) < 1e-12);
    CHECK((plan.screw1.u - plan.screw2.u).norm() == 0.0);
}

TEST_CASE("plan_roll_element rotates the object by exactly 2 dtheta") {
    const ContactState start = tilted_start(0.52);
    const double dx = 0.01;
    const RollSegmentPlan plan = plan_roll_element(start, dx, kCylinder);
    const double expected = 2.0 * element_angle(dx, kCylinder.radius);
    const double measured =
        testsupport::rotation_angle_between(start.pose.real(), plan.end_state.pose.real());
    CHECK(std::abs(measured - expected) < 1e-10);
}

TEST_CASE("plan_roll_element output does not penetrate the plane") {
    const ContactState start = tilted_start(0.35);
    ContactState state = start;
    for (int i = 0; i < 25; ++i) {
        const RollSegmentPlan plan = plan_roll_element(state, 0.006, kCylinder);
        state = plan.end_state;
        CHECK(testsupport::sampled_min_rim_height(state.pose, kCylinder.radius) >= -1e-9);
        // The end configuration touches the plane at the new contact point.
        const auto lowest = rim_lowest_point(state.pose, kCylinder.radius);
        REQUIRE(lowest.has_value());
        CHECK((*lowest - state.contact_point).norm() < 1e-9);
    }
}

TEST_CASE("rolling backward along the same line returns to the start") {
    const ContactState start = tilted_start(0.45);
    const RollSegmentPlan fwd = plan_roll_element(start, 0.008, kCylinder);
    ContactState turned = fwd.end_state;
    turned.heading = -turned.heading;
    const RollSegmentPlan back = plan_roll_element(turned, 0.008, kCylinder);
    CHECK((back.end_state.contact_point - start.contact_point).norm() < 1e-12);
    const double align = std::abs(back.end_state.pose.real().dot(start.pose.real()));
    CHECK(std::abs(align - 1.0) < 1e-12);
}

TEST_CASE("plan_straight_line reference discretization") {
    const ContactState start = tilted_start(0.30634);
    const auto states = plan_straight_line(start, 0.1368, 4000, kCylinder);
    REQUIRE(states.size() == 4001);

    // dx = 0.0342 mm per element.
    const double dx = (states[1].contact_point - states[0].contact_point).norm();
    CHECK(dx == doctest::Approx(0.0342e-3).epsilon(1e-10));

    // All contact points stay on the commanded line.
    const Vec3 dir = start.heading;
    for (const auto& s : states) {
        const Vec3 rel = s.contact_point - start.contact_point;
        CHECK((rel - dir * rel.dot(dir)).norm() < 1e-10);
    }
}

TEST_CASE("plan_straight_line with a single diameter element rotates by pi") {
    const ContactState start = tilted_start(0.40);
    const auto states = plan_straight_line(start, 2.0 * kCylinder.radius, 1, kCylinder);
    REQUIRE(states.size() == 2);
    const double angle =
        testsupport::rotation_angle_between(states.front().pose.real(), states.back().pose.real());
    CHECK(angle == doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("cumulative rotation matches 2 N asin(L / 2RN)") {
    const double length = 0.1368;
    const ContactState start = tilted_start(0.30634);
    for (int n : {2, 5, 10, 50}) {
        const auto states = plan_straight_line(start, length, n, kCylinder);
        double total = 0.0;
        for (size_t i = 0; i + 1 < states.size(); ++i) {
            total += testsupport::rotation_angle_between(states[i].pose.real(),
                                                         states[i + 1].pose.real());
        }
        const double expected = 2.0 * n * std::asin(length / (2.0 * kCylinder.radius * n));
        CHECK(std::abs(total - expected) < 1e-9);
    }
}

TEST_CASE("plan_straight_line rejects bad input") {
    const ContactState start = tilted_start();
    CHECK_THROWS_AS(plan_straight_line(start, -1.0, 10, kCylinder), InvalidInputError);
    CHECK_THROWS_AS(plan_straight_line(start, 0.1, 0, kCylinder), InvalidInputError);
    // Chord longer than the diameter propagates from element_angle.
    CHECK_THROWS_AS(plan_straight_line(start, 1.0, 2, kCylinder), InvalidInputError);
}
