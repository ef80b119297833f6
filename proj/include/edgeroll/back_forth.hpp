#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edgeroll/cylinder.hpp"
#include "edgeroll/primitives.hpp"
#include "edgeroll/vec3.hpp"

namespace edgeroll {

/// Plan a back-and-forth polyline from p_start to p_goal: k rolling lines of
/// lengths l joined by pivots of angles alpha, minimizing
///     ||d|| + weight * var(l)
/// subject to the endpoint closure
///     sum_j (-1)^(j+1) l_j e^(i phi_j) = p_goal - p_start,  phi_m = sum_{j<=m} alpha_j
/// and |alpha_j| <= alpha_max, 0 < l_j <= l_max. d holds the distances of
/// the intersection points to the straight line through p_start and p_goal.
struct BackForthProblem {
    Vec2 p_start;
    Vec2 p_goal;
    double alpha_max = 0.0; // radians, in (0, pi)
    double l_max = 0.0;     // meters
    double weight = 10.0;
    /// Line count; searched upward from floor(|p_goal - p_start| / l_max)
    /// when absent.
    std::optional<int> k;
};

struct BackForthSolution {
    int k = 0;
    std::vector<double> lengths;
    std::vector<double> alphas;
    std::vector<Vec2> intersections;
    double objective = 0.0;
    double closure_residual = 0.0; // meters
};

/// Intersection points p_m = sum_{j<=m} (-1)^(j+1) l_j e^(i phi_j) + p_start,
/// treating the support plane as the complex plane.
std::vector<Vec2> intersection_points(const std::vector<double>& lengths,
                                      const std::vector<double>& alphas, const Vec2& p_start);

/// ||d|| + weight * var(l) for a candidate (l, alpha); population variance.
/// Throws InvalidInputError when p_start == p_goal (the reference line is
/// undefined).
double back_forth_objective(const std::vector<double>& lengths, const std::vector<double>& alphas,
                            const BackForthProblem& problem);

/// Solve the constrained problem. Multi-start (32 starts seeded by `seed`)
/// quadratic-penalty iterations with BFGS inner solves; bounds are enforced
/// by tanh/sigmoid variable transforms, the closure equality by an escalated
/// augmented penalty. With `k` absent, the smallest feasible line count
/// wins. Throws InfeasibleError when no k up to 25 admits a feasible
/// solution.
BackForthSolution solve_back_forth(const BackForthProblem& problem, uint64_t seed = 0);

struct BackForthPlan {
    BackForthSolution solution;
    std::vector<PrimitiveStep> steps;
};

/// Full back-and-forth motion plan: initial pivot by (alpha_1, beta) in two
/// screws through p_start (vertical-axis rotation, then the tilt, so the
/// edge never sweeps below the plane), per line a straight roll of
/// n_per_line elements, a vertical-axis pivot by alpha_{j+1} at each
/// intersection (the roll direction alternates between consecutive lines),
/// and a final pivot to `final_pose` (upright placement at p_goal when
/// absent).
BackForthPlan plan_back_forth(const BackForthProblem& problem, const UnitDualQuaternion& start_pose,
                              const std::optional<UnitDualQuaternion>& final_pose,
                              const CylinderGeometry& geom, double beta, int n_per_line,
                              uint64_t seed = 0);

namespace detail {

/// Smoothed objective, closure residual, and their analytic gradients; the
/// unit-test finite-difference oracle checks these.
struct ObjectiveTerms {
    double objective = 0.0; // sqrt(sum d_m^2 + eps) + weight * var(l)
    Vec2 residual;
    std::vector<double> d_obj_d_alpha, d_obj_d_length;
    std::vector<double> d_rx_d_alpha, d_rx_d_length;
    std::vector<double> d_ry_d_alpha, d_ry_d_length;
};

ObjectiveTerms evaluate_terms(const BackForthProblem& problem, const std::vector<double>& alphas,
                              const std::vector<double>& lengths);

} // namespace detail

} // namespace edgeroll
