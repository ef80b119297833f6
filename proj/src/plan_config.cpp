#include "edgeroll/plan_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "edgeroll/analysis.hpp"
#include "edgeroll/errors.hpp"

namespace edgeroll {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_numbers(const std::string& value, const std::string& key) {
    std::istringstream in(value);
    std::vector<double> out;
    double v;
    while (in >> v) {
        out.push_back(v);
    }
    std::string rest;
    if (!(in >> rest).eof() || out.empty()) {
        throw InvalidInputError("config key '" + key + "' is not a number list: " + value);
    }
    return out;
}

const std::set<std::string> kKnownKeys = {
    "object.radius",        "object.height",
    "plan.mode",            "plan.beta",
    "plan.start",           "plan.heading_deg",    "plan.length",
    "plan.segments",        "plan.curve",          "plan.center",
    "plan.radius",          "plan.start_angle_deg", "plan.end_angle_deg",
    "plan.end",             "plan.coefficients",   "plan.x_range",
    "plan.p_o",             "plan.p_f",            "plan.alpha_max_deg",
    "plan.l_max",           "plan.dtheta_max",     "plan.w",              "plan.k",
    "plan.segments_per_line",
    "timing.duration_s",    "timing.rate_hz",      "timing.pivot_duration_s",
    "timing.micro_pivot_rad",
    "grasp.position",       "grasp.rotation",
    "output.path",          "output.format",
};

class ConfigReader {
public:
    explicit ConfigReader(const ConfigMap& map) : map_(map) {}

    std::string require(const std::string& key) const {
        const auto value = map_.get(key);
        if (!value) {
            throw InvalidInputError("config is missing required key '" + key + "'");
        }
        return *value;
    }

    double number(const std::string& key) const {
        const auto values = parse_numbers(require(key), key);
        if (values.size() != 1) {
            throw InvalidInputError("config key '" + key + "' expects a single number");
        }
        return values[0];
    }

    double number_or(const std::string& key, double fallback) const {
        return map_.get(key) ? number(key) : fallback;
    }

    int integer(const std::string& key) const {
        const double v = number(key);
        if (v != std::floor(v)) {
            throw InvalidInputError("config key '" + key + "' expects an integer");
        }
        return static_cast<int>(v);
    }

    Vec2 vec2(const std::string& key) const {
        const auto values = parse_numbers(require(key), key);
        if (values.size() != 2) {
            throw InvalidInputError("config key '" + key + "' expects two numbers");
        }
        return {values[0], values[1]};
    }

    bool has(const std::string& key) const { return map_.get(key).has_value(); }

    const ConfigMap& map() const { return map_; }

private:
    const ConfigMap& map_;
};

PlanMode parse_mode(const std::string& value) {
    if (value == "line") return PlanMode::Line;
    if (value == "curve") return PlanMode::Curve;
    if (value == "backforth") return PlanMode::BackForth;
    if (value == "slide") return PlanMode::Slide;
    throw InvalidInputError("unknown plan mode: " + value);
}

CurveDescriptor parse_curve(const ConfigReader& cfg) {
    const std::string kind = cfg.require("plan.curve");
    if (kind == "line") {
        return LineCurve{cfg.vec2("plan.start"), cfg.vec2("plan.end")};
    }
    if (kind == "arc") {
        return ArcCurve{cfg.vec2("plan.center"), cfg.number("plan.radius"),
                        cfg.number("plan.start_angle_deg") * M_PI / 180.0,
                        cfg.number("plan.end_angle_deg") * M_PI / 180.0};
    }
    if (kind == "polynomial") {
        const auto coeffs = parse_numbers(cfg.require("plan.coefficients"), "plan.coefficients");
        const auto range = parse_numbers(cfg.require("plan.x_range"), "plan.x_range");
        if (range.size() != 2) {
            throw InvalidInputError("plan.x_range expects two numbers");
        }
        return PolynomialCurve{coeffs, range[0], range[1]};
    }
    throw InvalidInputError("unknown curve kind: " + kind);
}

} // namespace

ConfigMap ConfigMap::parse(const std::string& text) {
    ConfigMap map;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw InvalidInputError("config line " + std::to_string(line_no) +
                                        ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInputError("config line " + std::to_string(line_no) +
                                    ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || section.empty()) {
            throw InvalidInputError("config line " + std::to_string(line_no) +
                                    ": key outside a [section] or empty key");
        }
        map.values_[section + "." + key] = value;
    }
    return map;
}

ConfigMap ConfigMap::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str());
}

void ConfigMap::set(const std::string& dotted_key, const std::string& value) {
    if (dotted_key.find('.') == std::string::npos) {
        throw InvalidInputError("config key must be 'section.key': " + dotted_key);
    }
    values_[dotted_key] = trim(value);
}

std::optional<std::string> ConfigMap::get(const std::string& dotted_key) const {
    const auto it = values_.find(dotted_key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const char* to_string(PlanMode mode) {
    switch (mode) {
    case PlanMode::Line: return "line";
    case PlanMode::Curve: return "curve";
    case PlanMode::BackForth: return "backforth";
    case PlanMode::Slide: return "slide";
    }
    return "unknown";
}

PlanConfig build_plan_config(const ConfigMap& map) {
    for (const auto& [key, value] : map.entries()) {
        if (kKnownKeys.find(key) == kKnownKeys.end()) {
            throw InvalidInputError("unknown config key '" + key + "'");
        }
    }
    const ConfigReader cfg(map);

    PlanConfig plan;
    plan.object.radius = cfg.number("object.radius");
    plan.object.height = cfg.number("object.height");
    validate(plan.object);

    plan.mode = parse_mode(cfg.require("plan.mode"));

    const std::string beta = cfg.has("plan.beta") ? cfg.require("plan.beta") : "auto";
    plan.beta = (beta == "auto") ? stability_tilt(plan.object) : cfg.number("plan.beta");
    if (!(plan.beta > 0.0) || !(plan.beta < M_PI / 2.0)) {
        throw InvalidInputError("plan.beta must lie in (0, pi/2)");
    }

    switch (plan.mode) {
    case PlanMode::Line:
        plan.line_start = cfg.vec2("plan.start");
        plan.line_heading_rad = cfg.number_or("plan.heading_deg", 0.0) * M_PI / 180.0;
        plan.line_length = cfg.number("plan.length");
        plan.line_segments = cfg.integer("plan.segments");
        if (!(plan.line_length > 0.0) || plan.line_segments < 1) {
            throw InvalidInputError("plan.length must be positive and plan.segments >= 1");
        }
        break;
    case PlanMode::Curve:
    case PlanMode::Slide:
        plan.curve = parse_curve(cfg);
        plan.curve_segments = cfg.integer("plan.segments");
        if (plan.curve_segments < 1) {
            throw InvalidInputError("plan.segments must be at least 1");
        }
        break;
    case PlanMode::BackForth:
        plan.backforth.p_start = cfg.vec2("plan.p_o");
        plan.backforth.p_goal = cfg.vec2("plan.p_f");
        plan.backforth.alpha_max = cfg.number("plan.alpha_max_deg") * M_PI / 180.0;
        // Either a direct line-length cap or a wrist range to derive it from.
        if (cfg.has("plan.l_max")) {
            plan.backforth.l_max = cfg.number("plan.l_max");
        } else if (cfg.has("plan.dtheta_max")) {
            plan.backforth.l_max =
                lmax_from_joint_range(plan.object.radius, cfg.number("plan.dtheta_max"));
        } else {
            throw InvalidInputError("backforth mode needs plan.l_max or plan.dtheta_max");
        }
        plan.backforth.weight = cfg.number_or("plan.w", 10.0);
        if (cfg.has("plan.k") && cfg.require("plan.k") != "auto") {
            plan.backforth.k = cfg.integer("plan.k");
        }
        plan.segments_per_line = cfg.integer("plan.segments_per_line");
        if (plan.segments_per_line < 1) {
            throw InvalidInputError("plan.segments_per_line must be at least 1");
        }
        break;
    }

    plan.timing.duration_s = cfg.number_or("timing.duration_s", 20.0);
    plan.timing.rate_hz = cfg.number_or("timing.rate_hz", 1000.0);
    plan.timing.pivot_duration_s = cfg.number_or("timing.pivot_duration_s", 3.0);
    plan.timing.micro_pivot_rad = cfg.number_or("timing.micro_pivot_rad", 0.05);
    if (!(plan.timing.duration_s > 0.0) || !(plan.timing.rate_hz > 0.0) ||
        plan.timing.pivot_duration_s < 0.0 || plan.timing.micro_pivot_rad < 0.0) {
        throw InvalidInputError("timing values must be positive");
    }

    if (cfg.has("grasp.position") || cfg.has("grasp.rotation")) {
        Pose grasp;
        if (cfg.has("grasp.position")) {
            const auto p = parse_numbers(cfg.require("grasp.position"), "grasp.position");
            if (p.size() != 3) {
                throw InvalidInputError("grasp.position expects three numbers");
            }
            grasp.position = {p[0], p[1], p[2]};
        }
        if (cfg.has("grasp.rotation")) {
            const auto q = parse_numbers(cfg.require("grasp.rotation"), "grasp.rotation");
            if (q.size() != 4) {
                throw InvalidInputError("grasp.rotation expects four numbers (w x y z)");
            }
            grasp.rotation = Quaternion{q[0], q[1], q[2], q[3]};
            if (!grasp.rotation.is_unit(1e-6)) {
                throw InvalidInputError("grasp.rotation must be a unit quaternion");
            }
        }
        plan.grasp = grasp;
    }

    plan.output_path = cfg.has("output.path") ? cfg.require("output.path") : "";
    const std::string format = cfg.has("output.format") ? cfg.require("output.format") : "csv";
    if (format == "csv") {
        plan.format = TrajectoryFormat::Csv;
    } else if (format == "jsonl") {
        plan.format = TrajectoryFormat::Jsonl;
    } else {
        throw InvalidInputError("output.format must be csv or jsonl");
    }
    return plan;
}

PlanOutput run_plan(const PlanConfig& config, uint64_t seed) {
    PlanOutput output;
    switch (config.mode) {
    case PlanMode::Line: {
        const Vec3 heading{std::cos(config.line_heading_rad), std::sin(config.line_heading_rad),
                           0.0};
        ContactState state =
            make_contact_state(config.line_start.lifted(), heading, config.beta, config.object);
        output.steps =
            roll_line_steps(state, config.line_length, config.line_segments, config.object);
        break;
    }
    case PlanMode::Curve:
    case PlanMode::Slide: {
        PlanProblem problem;
        problem.path = discretize_curve(config.curve, config.curve_segments);
        problem.geom = config.object;
        problem.beta = config.beta;
        problem.start_pose = make_contact_state(problem.path.points.front(),
                                                problem.path.segment_direction(0), M_PI / 2.0,
                                                config.object)
                                 .pose;
        output.steps = config.mode == PlanMode::Curve ? plan_curved_roll(problem)
                                                      : plan_curved_slide(problem);
        break;
    }
    case PlanMode::BackForth: {
        const UnitDualQuaternion start =
            make_contact_state(config.backforth.p_start.lifted(), Vec3::unit_x(), M_PI / 2.0,
                               config.object)
                .pose;
        BackForthPlan plan = plan_back_forth(config.backforth, start, std::nullopt, config.object,
                                             config.beta, config.segments_per_line, seed);
        output.steps = std::move(plan.steps);
        output.solution = std::move(plan.solution);
        break;
    }
    }
    return output;
}

PlannedTrajectory make_trajectory(const PlanConfig& config, const PlanOutput& output) {
    return emit_trajectory(output.steps, config.timing, config.grasp);
}

} // namespace edgeroll
