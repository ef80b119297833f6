#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "edgeroll/cylinder.hpp"
#include "edgeroll/quaternion.hpp"

namespace edgeroll {

/// How far the constant-screw approximation of one straight rolled line
/// deviates from pure rolling. rolled_arc is R times the accumulated
/// rotation angle; the approximation always over-rotates (asin x >= x), so
/// rolled_arc >= commanded_length.
struct SlippageReport {
    int segments = 0;
    double commanded_length = 0.0; // meters
    double rolled_arc = 0.0;       // meters
    double slippage = 0.0;         // |commanded_length - rolled_arc|, meters
    bool overshoot = false;        // rolled_arc > commanded_length
};

/// Rotation angle between two unit quaternions: 2 acos(|q1 . q2|) in [0, pi].
/// Throws InvalidInputError when either input is non-unit beyond 1e-6.
double quaternion_angle(const Quaternion& q1, const Quaternion& q2);

/// Roll `length` in `n` elements from `start` and measure the slippage.
///
/// The total rotation is accumulated per element (each element turns by
/// 2 dtheta < pi), because the single-pair quaternion formula wraps at pi
/// and long lines rotate by more than that.
SlippageReport slippage_for_n(double length, int n, const CylinderGeometry& geom,
                              const ContactState& start);

/// Stability tilt beta = pi/2 - atan(H / 2R): the center of mass sits
/// directly above the edge contact point.
double stability_tilt(const CylinderGeometry& geom);

/// Joint-range proxy for the longest single rolled line: l_max = R dtheta_max.
double lmax_from_joint_range(double radius, double dtheta_max);

struct SlippageSweepRow {
    double length = 0.0;
    int segments = 0;
    double dx_mm = 0.0;
    double slippage_m = 0.0;
};

struct SlippageSweep {
    std::vector<SlippageSweepRow> rows;
    /// (length, N) pairs whose chord L/N exceeds the edge diameter; these
    /// lie outside the rolling construction and carry no slippage value.
    std::vector<std::pair<double, int>> skipped;
};

/// Slippage over a grid of line lengths and segment counts.
SlippageSweep run_slippage_sweep(const std::vector<double>& lengths, const std::vector<int>& ns,
                                 const CylinderGeometry& geom);

/// CSV columns N,dx_mm,slippage_m; a leading length_m column is added when
/// the sweep covers more than one length. 12 significant digits.
void write_slippage_csv(const SlippageSweep& sweep, bool multi_length, std::ostream& out);

} // namespace edgeroll
