#pragma once

#include <variant>
#include <vector>

#include "edgeroll/vec3.hpp"

namespace edgeroll {

/// Straight line between two plane points.
struct LineCurve {
    Vec2 start;
    Vec2 end;
};

/// Circular arc, angles in radians measured from +x about the center;
/// the sweep runs from start_angle to end_angle (signed).
struct ArcCurve {
    Vec2 center;
    double radius = 0.0;
    double start_angle = 0.0;
    double end_angle = 0.0;
};

/// y = c0 + c1 x + c2 x^2 + ... over x in [x_start, x_end], sampled
/// uniformly in x.
struct PolynomialCurve {
    std::vector<double> coefficients;
    double x_start = 0.0;
    double x_end = 0.0;
};

using CurveDescriptor = std::variant<LineCurve, ArcCurve, PolynomialCurve>;

/// Piecewise-linear path on the support plane. turn_angles[i] is the signed
/// in-plane angle (counterclockwise positive seen from +z) from segment i to
/// segment i+1.
struct DiscretizedPath {
    std::vector<Vec3> points;           // n+1 points, z = 0
    std::vector<double> segment_lengths; // n
    std::vector<double> turn_angles;     // n-1

    size_t segment_count() const { return segment_lengths.size(); }
    double total_length() const;
    /// Unit direction of segment i.
    Vec3 segment_direction(size_t i) const;
};

/// Sample the curve into n linear segments (n+1 points): lines and arcs
/// uniformly in arc length, polynomials uniformly in the x parameter.
/// Throws InvalidInputError for degenerate (zero length) curves or n < 1.
DiscretizedPath discretize_curve(const CurveDescriptor& curve, int n);

/// Build a DiscretizedPath directly from plane points.
DiscretizedPath path_from_points(const std::vector<Vec2>& points);

} // namespace edgeroll
