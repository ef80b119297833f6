#include <doctest.h>

#include <chrono>

#include "edgeroll/back_forth.hpp"
#include "edgeroll/trajectory.hpp"
#include "edgeroll/errors.hpp"
#include "test_support.hpp"

using namespace edgeroll;

namespace {

// Published instance: p_O = (0.25, -0.50), p_F = (0.60, -0.25),
// alpha_max = 75 deg, l_max = 0.1512 m. The weight must be large enough
// that the leg lengths equalize; with small w the optimum degenerates to
// near-collinear legs of very unequal length (zero line deviation), which
// is not the published motion.
BackForthProblem reference_problem(double weight = 100.0) {
    BackForthProblem problem;
    problem.p_start = {0.25, -0.50};
    problem.p_goal = {0.60, -0.25};
    problem.alpha_max = 75.0 * M_PI / 180.0;
    problem.l_max = 0.1512;
    problem.weight = weight;
    return problem;
}

const std::vector<double> kReferenceAlphas = {-2.15 * M_PI / 180.0, -75.0 * M_PI / 180.0,
                                          75.0 * M_PI / 180.0, -75.0 * M_PI / 180.0,
                                          75.0 * M_PI / 180.0};
const std::vector<double> kReferenceLengths = {0.1368, 0.1361, 0.1372, 0.1361, 0.1368};

} // namespace

TEST_CASE("intersection_points reproduces the reference polyline endpoint") {
    const auto points = intersection_points(kReferenceLengths, kReferenceAlphas, {0.25, -0.50});
    REQUIRE(points.size() == 5);
    CHECK((points.back() - Vec2{0.60, -0.25}).norm() < 2e-4);
}

TEST_CASE("intersection_points simple cases") {
    // Single line along the x axis.
    const auto single = intersection_points({0.3}, {0.0}, {1.0, 2.0});
    REQUIRE(single.size() == 1);
    CHECK((single[0] - Vec2{1.3, 2.0}).norm() < 1e-15);

    // Two lines, 90 degree turn: the second leg contributes with a minus
    // sign, so p2 = p_O + (a, -b).
    const double a = 0.2, b = 0.15;
    const auto two = intersection_points({a, b}, {0.0, M_PI / 2.0}, {0.0, 0.0});
    REQUIRE(two.size() == 2);
    CHECK((two[1] - Vec2{a, -b}).norm() < 1e-15);

    CHECK_THROWS_AS(intersection_points({0.1}, {0.0, 0.1}, {0, 0}), InvalidInputError);
}

TEST_CASE("back_forth_objective value structure") {
    BackForthProblem problem = reference_problem();

    // Collinear equal-length legs: zero objective.
    problem.p_start = {0.0, 0.0};
    problem.p_goal = {0.4, 0.0};
    CHECK(back_forth_objective({0.2, 0.2}, {0.0, M_PI}, problem) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // One leg landing delta off the line with zero weight: objective equals
    // the offset distance.
    problem.weight = 0.0;
    const double delta_off = 0.05;
    // Leg at 90 degrees of length delta_off lands exactly delta_off off L_OF.
    CHECK(back_forth_objective({delta_off}, {M_PI / 2.0}, problem) ==
          doctest::Approx(delta_off).epsilon(1e-12));

    // Degenerate reference line.
    problem.p_goal = problem.p_start;
    CHECK_THROWS_AS(back_forth_objective({0.1}, {0.0}, problem), InvalidInputError);
}

TEST_CASE("reference solution objective is the frozen regression baseline") {
    const double obj = back_forth_objective(kReferenceLengths, kReferenceAlphas, reference_problem(10.0));
    // Evaluated once with this implementation and frozen; the hand
    // computation of the distance terms gives the same 0.1323 m scale.
    CHECK(obj == doctest::Approx(0.132304).epsilon(1e-4));
}

TEST_CASE("analytic gradients match central finite differences") {
    testsupport::Rng rng(401);
    std::uniform_real_distribution<double> alpha_dist(-1.0, 1.0);
    std::uniform_real_distribution<double> len_dist(0.02, 0.14);

    BackForthProblem problem = reference_problem();
    for (int trial = 0; trial < 25; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 5);
        std::vector<double> alphas(k), lengths(k);
        for (int i = 0; i < k; ++i) {
            alphas[i] = alpha_dist(rng);
            lengths[i] = len_dist(rng);
        }
        const auto terms = detail::evaluate_terms(problem, alphas, lengths);

        const double h = 1e-7;
        for (int i = 0; i < k; ++i) {
            auto ap = alphas, am = alphas;
            ap[i] += h;
            am[i] -= h;
            const auto tp = detail::evaluate_terms(problem, ap, lengths);
            const auto tm = detail::evaluate_terms(problem, am, lengths);
            CHECK(terms.d_obj_d_alpha[i] ==
                  doctest::Approx((tp.objective - tm.objective) / (2 * h)).epsilon(1e-5));
            CHECK(terms.d_rx_d_alpha[i] ==
                  doctest::Approx((tp.residual.x - tm.residual.x) / (2 * h)).epsilon(1e-5));
            CHECK(terms.d_ry_d_alpha[i] ==
                  doctest::Approx((tp.residual.y - tm.residual.y) / (2 * h)).epsilon(1e-5));

            auto lp = lengths, lm = lengths;
            lp[i] += h;
            lm[i] -= h;
            const auto tpl = detail::evaluate_terms(problem, alphas, lp);
            const auto tml = detail::evaluate_terms(problem, alphas, lm);
            CHECK(terms.d_obj_d_length[i] ==
                  doctest::Approx((tpl.objective - tml.objective) / (2 * h)).epsilon(1e-5));
            CHECK(terms.d_rx_d_length[i] ==
                  doctest::Approx((tpl.residual.x - tml.residual.x) / (2 * h)).epsilon(1e-5));
            CHECK(terms.d_ry_d_length[i] ==
                  doctest::Approx((tpl.residual.y - tml.residual.y) / (2 * h)).epsilon(1e-5));
        }
    }
}

TEST_CASE("solve_back_forth single-line shortcut") {
    BackForthProblem problem;
    problem.p_start = {0.1, 0.1};
    problem.p_goal = {0.2, 0.15};
    problem.alpha_max = 75.0 * M_PI / 180.0;
    problem.l_max = 0.1512;
    const BackForthSolution sol = solve_back_forth(problem);
    CHECK(sol.k == 1);
    CHECK(sol.alphas[0] == doctest::Approx(std::atan2(0.05, 0.1)).epsilon(1e-12));
    CHECK(sol.lengths[0] == doctest::Approx(std::sqrt(0.0125)).epsilon(1e-12));
    CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sol.closure_residual < 1e-12);
}

TEST_CASE("solve_back_forth solves the reference instance with k = 5") {
    const auto t0 = std::chrono::steady_clock::now();
    const BackForthSolution sol = solve_back_forth(reference_problem(), 0);
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    CHECK(sol.k == 5);
    CHECK(sol.closure_residual < 1e-6);
    for (int j = 0; j < sol.k; ++j) {
        CHECK(std::abs(sol.alphas[j]) <= reference_problem().alpha_max + 1e-8);
        CHECK(sol.lengths[j] <= reference_problem().l_max + 1e-8);
        CHECK(sol.lengths[j] > 0.0);
    }
    // At least as good as the reference local optimum.
    const double paper_obj = back_forth_objective(kReferenceLengths, kReferenceAlphas, reference_problem());
    CHECK(sol.objective <= paper_obj + 1e-4);
    // Total path length close to the reference 0.683 m.
    double total = 0.0;
    for (double l : sol.lengths) {
        total += l;
    }
    CHECK(total == doctest::Approx(0.683).epsilon(0.02));
    CHECK(elapsed < 60.0);

    // Endpoint closure feeds the last intersection point.
    CHECK((sol.intersections.back() - reference_problem().p_goal).norm() < 1e-6);
}

TEST_CASE("a small variance weight admits the degenerate collinear optimum") {
    // With w too small the cheapest feasible motion rolls along the
    // reference line itself, backing up slightly on the even legs: zero
    // line deviation, very unequal lengths. This is why the reference
    // configs use w = 100.
    const BackForthSolution sol = solve_back_forth(reference_problem(10.0), 0);
    CHECK(sol.k == 5);
    CHECK(sol.objective < 0.06);
    double total = 0.0;
    for (double l : sol.lengths) {
        total += l;
    }
    CHECK(total < 0.55);
}

TEST_CASE("solve_back_forth is deterministic for a fixed seed") {
    const BackForthSolution a = solve_back_forth(reference_problem(), 7);
    const BackForthSolution b = solve_back_forth(reference_problem(), 7);
    REQUIRE(a.k == b.k);
    for (int j = 0; j < a.k; ++j) {
        CHECK(a.alphas[j] == b.alphas[j]);
        CHECK(a.lengths[j] == b.lengths[j]);
    }
}

TEST_CASE("k below the minimum is infeasible for the reference instance") {
    BackForthProblem problem = reference_problem();
    problem.k = 4;
    CHECK_THROWS_AS(solve_back_forth(problem), InfeasibleError);
}

TEST_CASE("solve_back_forth scale consistency") {
    // Scaling the points and l_max by s while scaling the variance weight
    // by 1/s makes the objective homogeneous of degree one, so the argmin
    // carries over: alphas unchanged, lengths scaled.
    const double s = 2.0;
    BackForthProblem base = reference_problem();
    BackForthProblem scaled = base;
    scaled.p_start = base.p_start * s;
    scaled.p_goal = base.p_goal * s;
    scaled.l_max = base.l_max * s;
    scaled.weight = base.weight / s;

    const BackForthSolution sol_base = solve_back_forth(base, 0);
    const BackForthSolution sol_scaled = solve_back_forth(scaled, 0);
    REQUIRE(sol_base.k == sol_scaled.k);
    for (int j = 0; j < sol_base.k; ++j) {
        CHECK(std::abs(sol_scaled.alphas[j] - sol_base.alphas[j]) < 1e-4);
        CHECK(std::abs(sol_scaled.lengths[j] / s - sol_base.lengths[j]) < 1e-4);
    }
    CHECK(sol_scaled.objective == doctest::Approx(s * sol_base.objective).epsilon(1e-6));
}

TEST_CASE("solve_back_forth reports infeasibility") {
    BackForthProblem problem;
    problem.p_start = {0.0, 0.0};
    problem.p_goal = {1.0, 0.0};
    problem.alpha_max = 75.0 * M_PI / 180.0;
    problem.l_max = 0.1512;
    problem.k = 2; // two short legs cannot span a meter
    CHECK_THROWS_AS(solve_back_forth(problem), InfeasibleError);

    try {
        solve_back_forth(problem);
    } catch (const InfeasibleError& e) {
        CHECK(e.last_k_tried == 2);
        CHECK(e.best_residual_m > 0.1);
    }
}

TEST_CASE("solve_back_forth validates inputs") {
    BackForthProblem problem = reference_problem();
    problem.p_goal = problem.p_start;
    CHECK_THROWS_AS(solve_back_forth(problem), InvalidInputError);

    problem = reference_problem();
    problem.alpha_max = 0.0;
    CHECK_THROWS_AS(solve_back_forth(problem), InvalidInputError);

    problem = reference_problem();
    problem.l_max = -1.0;
    CHECK_THROWS_AS(solve_back_forth(problem), InvalidInputError);
}

TEST_CASE("plan_back_forth lays out rolls and pivots along the polyline") {
    const CylinderGeometry geom{0.037, 0.234};
    const double beta = M_PI / 2.0 - std::atan(geom.height / (2.0 * geom.radius));
    const BackForthProblem problem = reference_problem();
    const UnitDualQuaternion start =
        make_contact_state(problem.p_start.lifted(), Vec3::unit_x(), M_PI / 2.0, geom).pose;

    const int n_per_line = 40;
    const BackForthPlan plan = plan_back_forth(problem, start, std::nullopt, geom, beta, n_per_line);
    const int k = plan.solution.k;
    REQUIRE(k == 5);
    // initial align + tilt pivots + k * n rolls + (k-1) pivots + final pivot.
    CHECK(plan.steps.size() == static_cast<size_t>(2 + k * n_per_line + (k - 1) + 1));

    int rolls = 0, pivots = 0;
    for (const auto& step : plan.steps) {
        if (step.kind == PrimitiveKind::Roll) {
            ++rolls;
        } else if (step.kind == PrimitiveKind::Pivot) {
            ++pivots;
        }
    }
    CHECK(rolls == k * n_per_line);
    CHECK(pivots == k + 2); // align, tilt, k-1 intersections, final

    // Every planned configuration stays on or above the support plane.
    for (const auto& step : plan.steps) {
        for (const auto& pose : step.poses) {
            CHECK(min_rim_height(pose, geom.radius) >= -1e-9);
        }
    }

    // The contact chain ends at p_F.
    CHECK((plan.steps.back().contact_end - problem.p_goal.lifted()).norm() < 1e-5);
    // And the final pose rests upright there.
    const auto goal_pose = plan.steps.back().end_pose();
    CHECK((symmetry_axis(goal_pose) - Vec3::unit_z()).norm() < 1e-9);
    CHECK((nearest_rim_point(goal_pose, geom.radius, problem.p_goal.lifted()) -
           problem.p_goal.lifted())
              .norm() < 1e-5);

    // Roll headings alternate: consecutive lines' travel directions differ
    // by pi - |alpha|.
    const auto& sol = plan.solution;
    double phi = sol.alphas[0];
    Vec3 prev_travel{std::cos(phi), std::sin(phi), 0.0};
    for (int j = 1; j < k; ++j) {
        phi += sol.alphas[j];
        Vec3 travel = Vec3{std::cos(phi), std::sin(phi), 0.0} * ((j % 2 == 0) ? 1.0 : -1.0);
        const double angle = std::acos(std::clamp(travel.dot(prev_travel), -1.0, 1.0));
        CHECK(angle == doctest::Approx(M_PI - std::abs(sol.alphas[j])).epsilon(1e-9));
        prev_travel = travel;
    }
}

TEST_CASE("back-and-forth trajectory contact trace follows the solution polyline") {
    const CylinderGeometry geom{0.037, 0.234};
    const double beta = M_PI / 2.0 - std::atan(geom.height / (2.0 * geom.radius));
    const BackForthProblem problem = reference_problem();
    const UnitDualQuaternion start =
        make_contact_state(problem.p_start.lifted(), Vec3::unit_x(), M_PI / 2.0, geom).pose;
    const BackForthPlan plan = plan_back_forth(problem, start, std::nullopt, geom, beta, 60);

    TimingConfig timing;
    timing.duration_s = 2.0;
    timing.rate_hz = 250.0;
    timing.pivot_duration_s = 0.5;
    const PlannedTrajectory traj = emit_trajectory(plan.steps, timing);

    // Polyline vertices: p_O then the solved intersection points.
    std::vector<Vec3> vertices{problem.p_start.lifted()};
    for (const Vec2& p : plan.solution.intersections) {
        vertices.push_back(p.lifted());
    }
    auto distance_to_polyline = [&](const Vec3& q) {
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i + 1 < vertices.size(); ++i) {
            const Vec3 a = vertices[i];
            const Vec3 d = vertices[i + 1] - a;
            const double t = std::clamp((q - a).dot(d) / d.squared_norm(), 0.0, 1.0);
            best = std::min(best, (q - (a + t * d)).norm());
        }
        return best;
    };
    for (const auto& sample : traj.samples) {
        CHECK(distance_to_polyline(sample.contact_point) < 1e-5);
    }
}

TEST_CASE("plan_back_forth single-line degenerate case") {
    const CylinderGeometry geom{0.037, 0.234};
    const double beta = 0.4;
    BackForthProblem problem;
    problem.p_start = {0.0, 0.0};
    problem.p_goal = {0.12, 0.0};
    problem.alpha_max = M_PI / 3.0;
    problem.l_max = 0.1512;
    const UnitDualQuaternion start =
        make_contact_state(problem.p_start.lifted(), Vec3::unit_x(), M_PI / 2.0, geom).pose;

    const BackForthPlan plan = plan_back_forth(problem, start, std::nullopt, geom, beta, 24);
    CHECK(plan.solution.k == 1);
    REQUIRE(plan.steps.size() == 26); // pivot + 24 rolls + pivot
    CHECK(plan.steps.front().kind == PrimitiveKind::Pivot);
    CHECK(plan.steps.back().kind == PrimitiveKind::Pivot);
    CHECK((plan.steps.back().contact_end - problem.p_goal.lifted()).norm() < 1e-9);
}
