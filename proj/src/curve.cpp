#include "edgeroll/curve.hpp"

#include <cmath>

#include "edgeroll/errors.hpp"

namespace edgeroll {

double DiscretizedPath::total_length() const {
    double sum = 0.0;
    for (double l : segment_lengths) {
        sum += l;
    }
    return sum;
}

Vec3 DiscretizedPath::segment_direction(size_t i) const {
    return (points[i + 1] - points[i]) / segment_lengths[i];
}

namespace {

DiscretizedPath finish_path(std::vector<Vec3> points) {
    DiscretizedPath path;
    path.points = std::move(points);
    const size_t n = path.points.size() - 1;
    path.segment_lengths.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double len = (path.points[i + 1] - path.points[i]).norm();
        if (!(len > 0.0)) {
            throw InvalidInputError("degenerate path: zero-length segment");
        }
        path.segment_lengths.push_back(len);
    }
    path.turn_angles.reserve(n > 0 ? n - 1 : 0);
    for (size_t i = 0; i + 1 < n; ++i) {
        const Vec3 a = path.segment_direction(i);
        const Vec3 b = path.segment_direction(i + 1);
        path.turn_angles.push_back(std::atan2(a.cross(b).z, a.dot(b)));
    }
    return path;
}

} // namespace

DiscretizedPath discretize_curve(const CurveDescriptor& curve, int n) {
    if (n < 1) {
        throw InvalidInputError("segment count must be at least 1");
    }
    std::vector<Vec3> pts;
    pts.reserve(static_cast<size_t>(n) + 1);

    if (const auto* line = std::get_if<LineCurve>(&curve)) {
        const Vec2 delta = line->end - line->start;
        if (delta.norm() <= 0.0) {
            throw InvalidInputError("degenerate line curve: endpoints coincide");
        }
        for (int i = 0; i <= n; ++i) {
            pts.push_back((line->start + delta * (static_cast<double>(i) / n)).lifted());
        }
    } else if (const auto* arc = std::get_if<ArcCurve>(&curve)) {
        if (!(arc->radius > 0.0) || arc->start_angle == arc->end_angle) {
            throw InvalidInputError("degenerate arc curve");
        }
        for (int i = 0; i <= n; ++i) {
            const double a = arc->start_angle +
                             (arc->end_angle - arc->start_angle) * (static_cast<double>(i) / n);
            pts.push_back(Vec2{arc->center.x + arc->radius * std::cos(a),
                               arc->center.y + arc->radius * std::sin(a)}
                              .lifted());
        }
    } else {
        const auto& poly = std::get<PolynomialCurve>(curve);
        if (poly.x_start == poly.x_end || poly.coefficients.empty()) {
            throw InvalidInputError("degenerate polynomial curve");
        }
        for (int i = 0; i <= n; ++i) {
            const double x = poly.x_start +
                             (poly.x_end - poly.x_start) * (static_cast<double>(i) / n);
            double y = 0.0;
            for (size_t c = poly.coefficients.size(); c-- > 0;) {
                y = y * x + poly.coefficients[c];
            }
            pts.push_back(Vec3{x, y, 0.0});
        }
    }
    return finish_path(std::move(pts));
}

DiscretizedPath path_from_points(const std::vector<Vec2>& points) {
    if (points.size() < 2) {
        throw InvalidInputError("a path needs at least two points");
    }
    std::vector<Vec3> pts;
    pts.reserve(points.size());
    for (const Vec2& p : points) {
        pts.push_back(p.lifted());
    }
    return finish_path(std::move(pts));
}

} // namespace edgeroll
