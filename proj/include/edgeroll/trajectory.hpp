#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edgeroll/primitives.hpp"

namespace edgeroll {

/// s(t) = 3 (t/T)^2 - 2 (t/T)^3 sampled at t_i = i / rate for
/// i = 0 .. sample_count-1; s(0) = 0, s(T) = 1, zero boundary velocity.
std::vector<double> cubic_time_scale(int sample_count, double duration, double rate);

/// Time allotment for trajectory emission. The rolling flow (roll and slide
/// steps, plus alignment pivots smaller than micro_pivot_rad) shares
/// duration_s proportionally to equivalent arc length; every larger pivot
/// is a standalone phase of pivot_duration_s. Each phase is cubic
/// time-scaled so the motion stops between phases.
struct TimingConfig {
    double duration_s = 20.0;
    double rate_hz = 1000.0;
    double pivot_duration_s = 3.0;
    double micro_pivot_rad = 0.05;
};

struct TrajectorySample {
    double t = 0.0;
    Pose object_pose;
    std::optional<Pose> ee_pose;
    PrimitiveKind primitive = PrimitiveKind::Roll;
    Vec3 contact_point;
};

struct PlannedTrajectory {
    std::vector<TrajectorySample> samples;
    bool has_ee = false;
};

/// Resample the plan at the controller rate. Poses between step endpoints
/// come from the steps' own constant screws, so every emitted sample lies
/// on a constant screw motion. With a grasp transform G, each sample also
/// carries ee_pose = object_pose * G.
PlannedTrajectory emit_trajectory(const std::vector<PrimitiveStep>& plan,
                                  const TimingConfig& timing,
                                  const std::optional<Pose>& grasp_transform = std::nullopt);

enum class TrajectoryFormat { Csv, Jsonl };

/// CSV columns t,px,py,pz,qw,qx,qy,qz,primitive,cx,cy,cz (ee_px..ee_qz
/// appended when present); JSONL uses the same keys, one sample per line.
/// All numbers are printed with 12 significant digits, so identical
/// trajectories serialize to identical bytes.
void export_trajectory(const PlannedTrajectory& trajectory, std::ostream& out,
                       TrajectoryFormat format);
void export_trajectory_file(const PlannedTrajectory& trajectory, const std::string& path,
                            TrajectoryFormat format);

PlannedTrajectory parse_trajectory(std::istream& in, TrajectoryFormat format);
PlannedTrajectory parse_trajectory_file(const std::string& path, TrajectoryFormat format);

} // namespace edgeroll
