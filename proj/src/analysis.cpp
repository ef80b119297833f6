#include "edgeroll/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "edgeroll/errors.hpp"
#include "edgeroll/rolling.hpp"

namespace edgeroll {

double quaternion_angle(const Quaternion& q1, const Quaternion& q2) {
    if (!q1.is_unit(1e-6) || !q2.is_unit(1e-6)) {
        throw InvalidInputError("quaternion_angle expects unit quaternions");
    }
    const double c = std::min(1.0, std::abs(q1.dot(q2)));
    return 2.0 * std::acos(c);
}

SlippageReport slippage_for_n(double length, int n, const CylinderGeometry& geom,
                              const ContactState& start) {
    if (n < 1) {
        throw InvalidInputError("segment count must be at least 1");
    }
    const auto states = plan_straight_line(start, length, n, geom);

    // Accumulate the exact per-element rotation 2 dtheta. Long lines rotate
    // beyond pi, where the single-pair quaternion recovery wraps; the
    // quaternion formula serves as a per-element cross-check of the pose
    // chain instead.
    const double dtheta = element_angle(length / n, geom.radius);
    const double total_angle = 2.0 * n * dtheta;
    for (size_t i = 0; i + 1 < states.size(); ++i) {
        const double measured =
            quaternion_angle(states[i].pose.real(), states[i + 1].pose.real());
        if (std::abs(measured - 2.0 * dtheta) > 1e-8) {
            throw InvalidInputError("rolled pose chain disagrees with the element rotation");
        }
    }

    SlippageReport report;
    report.segments = n;
    report.commanded_length = length;
    report.rolled_arc = geom.radius * total_angle;
    report.slippage = std::abs(report.rolled_arc - report.commanded_length);
    report.overshoot = report.rolled_arc > report.commanded_length;
    return report;
}

double stability_tilt(const CylinderGeometry& geom) {
    validate(geom);
    return M_PI / 2.0 - std::atan(geom.height / (2.0 * geom.radius));
}

double lmax_from_joint_range(double radius, double dtheta_max) {
    if (!(radius > 0.0) || dtheta_max < 0.0) {
        throw InvalidInputError("radius must be positive and dtheta_max non-negative");
    }
    return radius * dtheta_max;
}

SlippageSweep run_slippage_sweep(const std::vector<double>& lengths, const std::vector<int>& ns,
                                 const CylinderGeometry& geom) {
    validate(geom);
    if (lengths.empty() || ns.empty()) {
        throw InvalidInputError("slippage sweep needs at least one length and one N");
    }
    const ContactState start =
        make_contact_state(Vec3::zero(), Vec3::unit_x(), stability_tilt(geom), geom);

    SlippageSweep sweep;
    for (double length : lengths) {
        if (!(length > 0.0)) {
            throw InvalidInputError("sweep lengths must be positive");
        }
        for (int n : ns) {
            if (n < 1) {
                throw InvalidInputError("sweep segment counts must be positive");
            }
            if (length / n > 2.0 * geom.radius) {
                sweep.skipped.emplace_back(length, n);
                continue;
            }
            const SlippageReport report = slippage_for_n(length, n, geom, start);
            sweep.rows.push_back(SlippageSweepRow{length, n, 1e3 * length / n, report.slippage});
        }
    }
    return sweep;
}

void write_slippage_csv(const SlippageSweep& sweep, bool multi_length, std::ostream& out) {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    out << (multi_length ? "length_m,N,dx_mm,slippage_m" : "N,dx_mm,slippage_m") << '\n';
    for (const SlippageSweepRow& row : sweep.rows) {
        if (multi_length) {
            out << fmt(row.length) << ',';
        }
        out << row.segments << ',' << fmt(row.dx_mm) << ',' << fmt(row.slippage_m) << '\n';
    }
}

} // namespace edgeroll
