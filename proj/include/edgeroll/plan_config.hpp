#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "edgeroll/back_forth.hpp"
#include "edgeroll/curve.hpp"
#include "edgeroll/curved_path.hpp"
#include "edgeroll/trajectory.hpp"

namespace edgeroll {

/// Flat `key = value` configuration text with [section] headers; `#` and `;`
/// start comments. Keys address as "section.key".
class ConfigMap {
public:
    static ConfigMap parse(const std::string& text);
    static ConfigMap load(const std::string& path); // throws IoError when unreadable

    void set(const std::string& dotted_key, const std::string& value);
    std::optional<std::string> get(const std::string& dotted_key) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

enum class PlanMode { Line, Curve, BackForth, Slide };

const char* to_string(PlanMode mode);

/// Validated, typed plan description assembled from a ConfigMap.
struct PlanConfig {
    CylinderGeometry object;
    PlanMode mode = PlanMode::Line;
    double beta = 0.0; // resolved: "auto" becomes the stability tilt

    // mode line
    Vec2 line_start;
    double line_heading_rad = 0.0;
    double line_length = 0.0;
    int line_segments = 0;

    // modes curve / slide
    CurveDescriptor curve;
    int curve_segments = 0;

    // mode backforth
    BackForthProblem backforth;
    int segments_per_line = 0;

    TimingConfig timing;
    std::optional<Pose> grasp;

    std::string output_path;
    TrajectoryFormat format = TrajectoryFormat::Csv;
};

/// Builds and validates the plan configuration; unknown keys, missing
/// required keys, and malformed values raise InvalidInputError.
PlanConfig build_plan_config(const ConfigMap& map);

struct PlanOutput {
    std::vector<PrimitiveStep> steps;
    std::optional<BackForthSolution> solution;
};

/// Run the configured planner. The object starts upright on the support
/// plane (curve, slide, and backforth modes pivot it into the rolling
/// posture first; line mode starts already tilted at the line start) and is
/// returned upright at the goal.
PlanOutput run_plan(const PlanConfig& config, uint64_t seed);

/// Controller-rate trajectory for a plan produced by run_plan.
PlannedTrajectory make_trajectory(const PlanConfig& config, const PlanOutput& output);

} // namespace edgeroll
