#include <doctest.h>

#include "edgeroll/dual_quaternion.hpp"
#include "edgeroll/errors.hpp"
#include "edgeroll/quaternion.hpp"
#include "test_support.hpp"

using namespace edgeroll;
using testsupport::Rng;

TEST_CASE("quaternion identity and basis products") {
    Rng rng(42);
    const Quaternion q = testsupport::random_unit_quaternion(rng);
    const Quaternion id = Quaternion::identity();

    const Quaternion iq = id * q;
    CHECK(iq.w == q.w);
    CHECK(iq.x == q.x);
    CHECK(iq.y == q.y);
    CHECK(iq.z == q.z);

    const Quaternion i{0, 1, 0, 0};
    const Quaternion j{0, 0, 1, 0};
    const Quaternion k = i * j;
    CHECK(k.w == 0.0);
    CHECK(k.x == 0.0);
    CHECK(k.y == 0.0);
    CHECK(k.z == 1.0);
}

TEST_CASE("quaternion product of units is unit") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const Quaternion a = testsupport::random_unit_quaternion(rng);
        const Quaternion b = testsupport::random_unit_quaternion(rng);
        CHECK(std::abs((a * b).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("quaternion multiplication is associative and distributive") {
    Rng rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Quaternion a{u(rng), u(rng), u(rng), u(rng)};
        const Quaternion b{u(rng), u(rng), u(rng), u(rng)};
        const Quaternion c{u(rng), u(rng), u(rng), u(rng)};

        const Quaternion assoc = (a * b) * c - a * (b * c);
        CHECK(assoc.norm() < 1e-12);

        const Quaternion dist = a * (b + c) - (a * b + a * c);
        CHECK(dist.norm() < 1e-12);
    }
}

TEST_CASE("quaternion rotate matches sandwich product") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Quaternion q = testsupport::random_unit_quaternion(rng);
        const Vec3 v = testsupport::random_vec3(rng, 3.0);
        const Quaternion sandwich = q * Quaternion{0.0, v} * q.conjugate();
        const Vec3 r = q.rotate(v);
        CHECK((r - sandwich.vec()).norm() < 1e-12);
        CHECK(std::abs(sandwich.w) < 1e-12);
    }
}

TEST_CASE("dual quaternion product rule") {
    Rng rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto random_quat = [&] { return Quaternion{u(rng), u(rng), u(rng), u(rng)}; };
    for (int trial = 0; trial < 200; ++trial) {
        const DualQuaternion a{random_quat(), random_quat()};
        const DualQuaternion b{random_quat(), random_quat()};
        const DualQuaternion prod = a * b;
        const Quaternion real = a.real * b.real;
        const Quaternion dual = a.real * b.dual + a.dual * b.real;
        CHECK((prod.real - real).norm() == 0.0);
        CHECK((prod.dual - dual).norm() == 0.0);
    }
}

TEST_CASE("dual quaternion identity and translation composition") {
    const DualQuaternion sigma{{0.3, 0.1, -0.4, 0.2}, {0.0, 0.5, 0.6, -0.7}};
    const DualQuaternion prod = DualQuaternion::identity() * sigma;
    CHECK((prod.real - sigma.real).norm() == 0.0);
    CHECK((prod.dual - sigma.dual).norm() == 0.0);

    const Vec3 p1{0.1, -0.2, 0.3};
    const Vec3 p2{-0.4, 0.5, 0.05};
    const UnitDualQuaternion t12 = translation_transform(p1) * translation_transform(p2);
    CHECK((t12.translation() - (p1 + p2)).norm() < 1e-15);
    CHECK((t12.real() - Quaternion::identity()).norm() < 1e-15);
}

TEST_CASE("unit dual quaternions are closed under multiplication") {
    Rng rng(19);
    for (int trial = 0; trial < 1000; ++trial) {
        const UnitDualQuaternion a = testsupport::random_unit_dq(rng);
        const UnitDualQuaternion b = testsupport::random_unit_dq(rng);
        const UnitDualQuaternion c = a * b;
        CHECK(std::abs(c.real().dot(c.real()) - 1.0) < 1e-9);
        CHECK(std::abs(c.real().dot(c.dual())) < 1e-9);
    }
}

TEST_CASE("from_pose special cases") {
    // Identity pose.
    const UnitDualQuaternion id = from_pose(Pose{});
    CHECK((id.real() - Quaternion::identity()).norm() == 0.0);
    CHECK(id.dual().norm() == 0.0);

    // Pure translation: D = 1 + eps (1/2) Q_p.
    const Vec3 p{0.2, -0.7, 1.1};
    const UnitDualQuaternion t = from_pose(Pose{p, Quaternion::identity()});
    CHECK((t.real() - Quaternion::identity()).norm() == 0.0);
    CHECK((t.dual().vec() - 0.5 * p).norm() < 1e-15);
    CHECK(t.dual().w == 0.0);

    // Pure rotation: D = Q_R + 0 eps.
    const Quaternion qr = Quaternion::from_axis_angle(Vec3{0, 0, 1}, 0.8);
    const UnitDualQuaternion r = from_pose(Pose{Vec3::zero(), qr});
    CHECK((r.real() - qr).norm() < 1e-15);
    CHECK(r.dual().norm() < 1e-15);
}

TEST_CASE("pose round trip") {
    Rng rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        const Pose pose = testsupport::random_pose(rng, 2.0);
        const Pose back = to_pose(from_pose(pose));
        CHECK((back.position - pose.position).norm() < 1e-10);
        // Rotations may differ by global sign.
        const double align = std::abs(back.rotation.dot(pose.rotation));
        CHECK(std::abs(align - 1.0) < 1e-10);
    }
}

TEST_CASE("to_pose is sign independent") {
    Rng rng(29);
    const UnitDualQuaternion d = testsupport::random_unit_dq(rng);
    const Pose a = to_pose(d);
    const Pose b = to_pose(-d);
    CHECK(a.position.x == b.position.x);
    CHECK(a.position.y == b.position.y);
    CHECK(a.position.z == b.position.z);
    CHECK(std::abs(a.rotation.dot(b.rotation) - 1.0) < 1e-15);
}

TEST_CASE("pose conversion rejects bad input") {
    CHECK_THROWS_AS(from_pose(Pose{Vec3::zero(), Quaternion{1.0, 0.5, 0.0, 0.0}}), InvalidInputError);
    CHECK_THROWS_AS(UnitDualQuaternion::from_parts(Quaternion{0.5, 0, 0, 0}, Quaternion::zero()),
                    InvalidInputError);
    CHECK_THROWS_AS(to_pose(UnitDualQuaternion::from_parts_unchecked(Quaternion{0.7, 0, 0, 0},
                                                                     Quaternion::zero())),
                    InvalidInputError);
}

TEST_CASE("transform_point matches pose action") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const Pose pose = testsupport::random_pose(rng, 2.0);
        const Vec3 x = testsupport::random_vec3(rng, 2.0);
        const Vec3 expected = pose.rotation.rotate(x) + pose.position;
        const Vec3 got = from_pose(pose).transform_point(x);
        CHECK((got - expected).norm() < 1e-12);
    }
}
