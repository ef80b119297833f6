#include <doctest.h>

#include "edgeroll/errors.hpp"
#include "edgeroll/screw.hpp"
#include "test_support.hpp"

using namespace edgeroll;
using testsupport::Rng;

TEST_CASE("screw_to_dual_quat special screws") {
    // Zero angle, zero slide: identity.
    const UnitDualQuaternion id = screw_to_dual_quat({0.0, 0.0, Vec3::unit_x(), Vec3::zero()});
    CHECK((id.real() - Quaternion::identity()).norm() == 0.0);
    CHECK(id.dual().norm() == 0.0);

    // Half turn about z through the origin.
    const UnitDualQuaternion half = screw_to_dual_quat({M_PI, 0.0, Vec3::unit_z(), Vec3::zero()});
    CHECK(std::abs(half.real().w) < 1e-16);
    CHECK(std::abs(half.real().z - 1.0) < 1e-15);
    CHECK(half.dual().norm() < 1e-16);
}

TEST_CASE("extract_screw special cases") {
    // Pure rotation by theta about z through the origin.
    const double theta = 0.9;
    const auto rot = extract_screw(from_pose(Pose{Vec3::zero(), Quaternion::from_axis_angle(Vec3::unit_z(), theta)}));
    REQUIRE(rot.has_value());
    CHECK(rot->theta == doctest::Approx(theta).epsilon(1e-12));
    CHECK(std::abs(rot->d) < 1e-12);
    CHECK((rot->u - Vec3::unit_z()).norm() < 1e-12);
    CHECK(rot->m.norm() < 1e-12);

    // Pure translation along x.
    const double t = 0.42;
    const auto trans = extract_screw(translation_transform({t, 0.0, 0.0}));
    REQUIRE(trans.has_value());
    CHECK(trans->theta == 0.0);
    CHECK(trans->d == doctest::Approx(t).epsilon(1e-14));
    CHECK((trans->u - Vec3::unit_x()).norm() < 1e-14);
    CHECK(trans->m.norm() == 0.0);

    // Identity: no screw axis.
    CHECK(!extract_screw(UnitDualQuaternion::identity()).has_value());
}

TEST_CASE("extract_screw recovers the axis moment") {
    // Rotation about an axis through point r plus a slide.
    const Vec3 u = Vec3{0.3, -0.4, 0.5}.normalized();
    const Vec3 r{0.2, 0.7, -0.1};
    const ScrewParameters in{1.2, 0.35, u, r.cross(u)};
    const auto out = extract_screw(screw_to_dual_quat(in));
    REQUIRE(out.has_value());
    CHECK(out->theta == doctest::Approx(in.theta).epsilon(1e-10));
    CHECK(out->d == doctest::Approx(in.d).epsilon(1e-10));
    CHECK((out->u - in.u).norm() < 1e-9);
    CHECK((out->m - in.m).norm() < 1e-9);
}

TEST_CASE("screw round trip over random screws") {
    Rng rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const ScrewParameters s = testsupport::random_screw(rng);
        const UnitDualQuaternion d = screw_to_dual_quat(s);
        CHECK(std::abs(d.real().dot(d.real()) - 1.0) < 1e-10);
        CHECK(std::abs(d.real().dot(d.dual())) < 1e-10);

        const auto back = extract_screw(d);
        REQUIRE(back.has_value());
        CHECK(std::abs(back->theta - s.theta) < 1e-9);
        CHECK(std::abs(back->d - s.d) < 1e-9);
        CHECK((back->u - s.u).norm() < 1e-9);
        CHECK((back->m - s.m).norm() < 1e-9);
        // Screw invariants.
        CHECK(std::abs(back->u.norm() - 1.0) < 1e-10);
        CHECK(std::abs(back->u.dot(back->m)) < 1e-9);
        CHECK(back->theta >= 0.0);
        CHECK(back->theta <= M_PI);
    }
}

TEST_CASE("extraction canonicalizes theta beyond pi") {
    // A 3/2 turn about z is reported as the complementary short rotation.
    const double theta = 1.5 * M_PI;
    const UnitDualQuaternion d =
        from_pose(Pose{Vec3::zero(), Quaternion::from_axis_angle(Vec3::unit_z(), theta)});
    const auto s = extract_screw(d);
    REQUIRE(s.has_value());
    CHECK(s->theta == doctest::Approx(0.5 * M_PI).epsilon(1e-12));
    CHECK((s->u + Vec3::unit_z()).norm() < 1e-12);
}

TEST_CASE("screw_power endpoints and composition") {
    Rng rng(103);
    for (int trial = 0; trial < 300; ++trial) {
        const UnitDualQuaternion a = testsupport::random_unit_dq(rng);
        const UnitDualQuaternion b = testsupport::random_unit_dq(rng);
        const UnitDualQuaternion d12 = a.conjugate() * b;

        const UnitDualQuaternion p0 = screw_power(d12, 0.0);
        CHECK((p0.real() - Quaternion::identity()).norm() < 1e-12);
        CHECK(p0.dual().norm() < 1e-12);

        const UnitDualQuaternion p1 = screw_power(d12, 1.0);
        const double sign = d12.real().dot(p1.real()) >= 0 ? 1.0 : -1.0;
        CHECK((p1.real() - sign * d12.real()).norm() < 1e-10);
        CHECK((p1.dual() - sign * d12.dual()).norm() < 1e-10);

        const UnitDualQuaternion half = screw_power(d12, 0.5);
        const UnitDualQuaternion twice = half * half;
        const double sign2 = d12.real().dot(twice.real()) >= 0 ? 1.0 : -1.0;
        CHECK((twice.real() - sign2 * d12.real()).norm() < 1e-9);
        CHECK((twice.dual() - sign2 * d12.dual()).norm() < 1e-9);
    }
}

TEST_CASE("screw_power of identity is identity for all s") {
    for (double s : {0.0, 0.25, 0.5, 1.0}) {
        const UnitDualQuaternion p = screw_power(UnitDualQuaternion::identity(), s);
        CHECK((p.real() - Quaternion::identity()).norm() == 0.0);
        CHECK(p.dual().norm() == 0.0);
    }
}

TEST_CASE("screw_power scales the rotation angle linearly") {
    Rng rng(107);
    for (int trial = 0; trial < 200; ++trial) {
        const ScrewParameters s = testsupport::random_screw(rng);
        const UnitDualQuaternion d12 = screw_to_dual_quat(s);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double frac = u(rng);
        const UnitDualQuaternion p = screw_power(d12, frac);
        const double angle = testsupport::rotation_angle_between(p.real(), Quaternion::identity());
        CHECK(std::abs(angle - frac * s.theta) < 1e-10);
    }
}

TEST_CASE("sclerp endpoints and constant path") {
    Rng rng(109);
    const UnitDualQuaternion d1 = testsupport::random_unit_dq(rng);
    const UnitDualQuaternion d2 = testsupport::random_unit_dq(rng);

    const UnitDualQuaternion at0 = sclerp(d1, d2, 0.0);
    CHECK((at0.real() - d1.real()).norm() < 1e-12);
    CHECK((at0.dual() - d1.dual()).norm() < 1e-12);

    const UnitDualQuaternion at1 = sclerp(d1, d2, 1.0);
    const double sign = at1.real().dot(d2.real()) >= 0 ? 1.0 : -1.0;
    CHECK((at1.real() - sign * d2.real()).norm() < 1e-10);
    CHECK((at1.dual() - sign * d2.dual()).norm() < 1e-10);

    for (double s : {0.0, 0.3, 0.7, 1.0}) {
        const UnitDualQuaternion mid = sclerp(d1, d1, s);
        CHECK((mid.real() - d1.real()).norm() < 1e-12);
        CHECK((mid.dual() - d1.dual()).norm() < 1e-12);
    }
}

TEST_CASE("sclerp keeps the shared fixed point fixed") {
    Rng rng(113);
    for (int trial = 0; trial < 1000; ++trial) {
        const UnitDualQuaternion d1 = testsupport::random_unit_dq(rng);
        const Vec3 fixed_world = testsupport::random_vec3(rng, 1.5);
        const Vec3 axis = testsupport::random_unit_vec3(rng);
        std::uniform_real_distribution<double> ang(-2.5, 2.5);
        const UnitDualQuaternion d2 = rotation_about_axis(axis, fixed_world, ang(rng)) * d1;

        const Vec3 body_point = d1.conjugate().transform_point(fixed_world);
        for (int k = 0; k <= 10; ++k) {
            const UnitDualQuaternion mid = sclerp(d1, d2, k / 10.0);
            CHECK((mid.transform_point(body_point) - fixed_world).norm() < 1e-9);
        }
    }
}
