#include "edgeroll/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "edgeroll/errors.hpp"

namespace edgeroll {

namespace {

double cubic_s(double tau) {
    tau = std::clamp(tau, 0.0, 1.0);
    return tau * tau * (3.0 - 2.0 * tau);
}

struct Phase {
    size_t first_step = 0;
    bool standalone_pivot = false;
    double duration = 0.0;
    double start_time = 0.0;
    std::vector<double> cumulative; // per-step parameter prefix, cumulative.back() = total
};

bool is_standalone_pivot(const PrimitiveStep& step, const TimingConfig& timing) {
    return step.kind == PrimitiveKind::Pivot && !step.screws.empty() &&
           std::abs(step.screws[0].theta) >= timing.micro_pivot_rad;
}

std::vector<Phase> build_phases(const std::vector<PrimitiveStep>& plan, const TimingConfig& timing) {
    // Group the steps: maximal runs of rolling flow (rolls, slides, micro
    // pivots) between standalone pivots. The rolling runs share duration_s
    // proportionally to their parameter length; every standalone pivot runs
    // for pivot_duration_s.
    std::vector<Phase> phases;
    size_t i = 0;
    double rolling_param_total = 0.0;
    while (i < plan.size()) {
        if (is_standalone_pivot(plan[i], timing)) {
            Phase phase;
            phase.first_step = i;
            phase.standalone_pivot = true;
            phase.duration = timing.pivot_duration_s;
            phase.cumulative = {plan[i].param_length > 0.0 ? plan[i].param_length : 1.0};
            phases.push_back(std::move(phase));
            ++i;
            continue;
        }
        Phase phase;
        phase.first_step = i;
        double total = 0.0;
        while (i < plan.size() && !is_standalone_pivot(plan[i], timing)) {
            total += plan[i].param_length;
            phase.cumulative.push_back(total);
            ++i;
        }
        if (total > 0.0) {
            rolling_param_total += total;
            phases.push_back(std::move(phase));
        }
    }
    for (Phase& phase : phases) {
        if (!phase.standalone_pivot) {
            phase.duration = rolling_param_total > 0.0
                                 ? timing.duration_s * phase.cumulative.back() / rolling_param_total
                                 : 0.0;
        }
    }
    // Drop zero-duration phases and lay out the timeline.
    std::vector<Phase> laid_out;
    double t = 0.0;
    for (Phase& phase : phases) {
        if (phase.duration <= 0.0) {
            continue;
        }
        phase.start_time = t;
        t += phase.duration;
        laid_out.push_back(std::move(phase));
    }
    return laid_out;
}

} // namespace

std::vector<double> cubic_time_scale(int sample_count, double duration, double rate) {
    if (sample_count < 1 || !(duration > 0.0) || !(rate > 0.0)) {
        throw InvalidInputError("cubic_time_scale expects positive inputs");
    }
    std::vector<double> s(static_cast<size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) {
        s[static_cast<size_t>(i)] = cubic_s((static_cast<double>(i) / rate) / duration);
    }
    return s;
}

PlannedTrajectory emit_trajectory(const std::vector<PrimitiveStep>& plan,
                                  const TimingConfig& timing,
                                  const std::optional<Pose>& grasp_transform) {
    if (plan.empty()) {
        throw InvalidInputError("cannot emit a trajectory from an empty plan");
    }
    if (!(timing.rate_hz > 0.0) || !(timing.duration_s > 0.0) || timing.pivot_duration_s < 0.0) {
        throw InvalidInputError("timing configuration must be positive");
    }

    const std::vector<Phase> phases = build_phases(plan, timing);
    PlannedTrajectory trajectory;
    trajectory.has_ee = grasp_transform.has_value();
    if (phases.empty()) {
        return trajectory;
    }

    const bool has_grasp = grasp_transform.has_value();
    const UnitDualQuaternion grasp =
        has_grasp ? from_pose(*grasp_transform) : UnitDualQuaternion::identity();

    const double total_time = phases.back().start_time + phases.back().duration;
    const auto count = static_cast<size_t>(std::llround(total_time * timing.rate_hz));
    trajectory.samples.reserve(count);

    size_t phase_index = 0;
    for (size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / timing.rate_hz;
        while (phase_index + 1 < phases.size() &&
               t >= phases[phase_index].start_time + phases[phase_index].duration) {
            ++phase_index;
        }
        const Phase& phase = phases[phase_index];
        const double progress =
            cubic_s((t - phase.start_time) / phase.duration) * phase.cumulative.back();

        const auto it = std::lower_bound(phase.cumulative.begin(), phase.cumulative.end(), progress,
                                         [](double cum, double p) { return cum < p; });
        size_t offset = static_cast<size_t>(it - phase.cumulative.begin());
        if (offset >= phase.cumulative.size()) {
            offset = phase.cumulative.size() - 1;
        }
        // Skip zero-length entries so xi is well defined.
        while (offset + 1 < phase.cumulative.size() &&
               (offset == 0 ? phase.cumulative[0] : phase.cumulative[offset] -
                                                        phase.cumulative[offset - 1]) <= 0.0) {
            ++offset;
        }
        const PrimitiveStep& step = plan[phase.first_step + offset];
        const double prev_cum = offset == 0 ? 0.0 : phase.cumulative[offset - 1];
        const double span = phase.cumulative[offset] - prev_cum;
        const double xi = span > 0.0 ? std::clamp((progress - prev_cum) / span, 0.0, 1.0) : 1.0;

        TrajectorySample sample;
        sample.t = t;
        const UnitDualQuaternion pose_dq = step.pose_at(xi);
        sample.object_pose = to_pose(pose_dq);
        sample.primitive = step.kind;
        sample.contact_point = step.contact_at(xi);
        if (has_grasp) {
            sample.ee_pose = to_pose(pose_dq * grasp);
        }
        trajectory.samples.push_back(std::move(sample));
    }
    return trajectory;
}

namespace {

const char* kBaseHeader = "t,px,py,pz,qw,qx,qy,qz,primitive,cx,cy,cz";
const char* kEeHeader = ",ee_px,ee_py,ee_pz,ee_qw,ee_qx,ee_qy,ee_qz";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

PrimitiveKind primitive_from_string(const std::string& name) {
    if (name == "roll") return PrimitiveKind::Roll;
    if (name == "pivot") return PrimitiveKind::Pivot;
    if (name == "slide") return PrimitiveKind::Slide;
    throw InvalidInputError("unknown primitive label: " + name);
}

void write_csv(const PlannedTrajectory& trajectory, std::ostream& out) {
    out << kBaseHeader;
    if (trajectory.has_ee) {
        out << kEeHeader;
    }
    out << '\n';
    for (const TrajectorySample& s : trajectory.samples) {
        const Pose& p = s.object_pose;
        out << fmt(s.t) << ',' << fmt(p.position.x) << ',' << fmt(p.position.y) << ','
            << fmt(p.position.z) << ',' << fmt(p.rotation.w) << ',' << fmt(p.rotation.x) << ','
            << fmt(p.rotation.y) << ',' << fmt(p.rotation.z) << ',' << to_string(s.primitive)
            << ',' << fmt(s.contact_point.x) << ',' << fmt(s.contact_point.y) << ','
            << fmt(s.contact_point.z);
        if (trajectory.has_ee) {
            const Pose& e = *s.ee_pose;
            out << ',' << fmt(e.position.x) << ',' << fmt(e.position.y) << ',' << fmt(e.position.z)
                << ',' << fmt(e.rotation.w) << ',' << fmt(e.rotation.x) << ',' << fmt(e.rotation.y)
                << ',' << fmt(e.rotation.z);
        }
        out << '\n';
    }
}

void write_jsonl(const PlannedTrajectory& trajectory, std::ostream& out) {
    for (const TrajectorySample& s : trajectory.samples) {
        const Pose& p = s.object_pose;
        out << "{\"t\":" << fmt(s.t) << ",\"px\":" << fmt(p.position.x)
            << ",\"py\":" << fmt(p.position.y) << ",\"pz\":" << fmt(p.position.z)
            << ",\"qw\":" << fmt(p.rotation.w) << ",\"qx\":" << fmt(p.rotation.x)
            << ",\"qy\":" << fmt(p.rotation.y) << ",\"qz\":" << fmt(p.rotation.z)
            << ",\"primitive\":\"" << to_string(s.primitive) << "\",\"cx\":"
            << fmt(s.contact_point.x) << ",\"cy\":" << fmt(s.contact_point.y)
            << ",\"cz\":" << fmt(s.contact_point.z);
        if (trajectory.has_ee) {
            const Pose& e = *s.ee_pose;
            out << ",\"ee_px\":" << fmt(e.position.x) << ",\"ee_py\":" << fmt(e.position.y)
                << ",\"ee_pz\":" << fmt(e.position.z) << ",\"ee_qw\":" << fmt(e.rotation.w)
                << ",\"ee_qx\":" << fmt(e.rotation.x) << ",\"ee_qy\":" << fmt(e.rotation.y)
                << ",\"ee_qz\":" << fmt(e.rotation.z);
        }
        out << "}\n";
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

PlannedTrajectory parse_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw InvalidInputError("trajectory CSV is missing its header");
    }
    if (!header.empty() && header.back() == '\r') {
        header.pop_back();
    }
    const bool has_ee = header == std::string(kBaseHeader) + kEeHeader;
    if (!has_ee && header != kBaseHeader) {
        throw InvalidInputError("unrecognized trajectory CSV header");
    }

    PlannedTrajectory trajectory;
    trajectory.has_ee = has_ee;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        const size_t expected = has_ee ? 19 : 12;
        if (fields.size() != expected) {
            throw InvalidInputError("trajectory CSV row has the wrong column count");
        }
        TrajectorySample s;
        s.t = std::stod(fields[0]);
        s.object_pose.position = {std::stod(fields[1]), std::stod(fields[2]), std::stod(fields[3])};
        s.object_pose.rotation = {std::stod(fields[4]), std::stod(fields[5]), std::stod(fields[6]),
                                  std::stod(fields[7])};
        s.primitive = primitive_from_string(fields[8]);
        s.contact_point = {std::stod(fields[9]), std::stod(fields[10]), std::stod(fields[11])};
        if (has_ee) {
            Pose e;
            e.position = {std::stod(fields[12]), std::stod(fields[13]), std::stod(fields[14])};
            e.rotation = {std::stod(fields[15]), std::stod(fields[16]), std::stod(fields[17]),
                          std::stod(fields[18])};
            s.ee_pose = e;
        }
        trajectory.samples.push_back(std::move(s));
    }
    return trajectory;
}

PlannedTrajectory parse_jsonl(std::istream& in) {
    PlannedTrajectory trajectory;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInputError(std::string("bad trajectory JSONL line: ") + e.what());
        }
        TrajectorySample s;
        s.t = j.at("t").get<double>();
        s.object_pose.position = {j.at("px").get<double>(), j.at("py").get<double>(),
                                  j.at("pz").get<double>()};
        s.object_pose.rotation = {j.at("qw").get<double>(), j.at("qx").get<double>(),
                                  j.at("qy").get<double>(), j.at("qz").get<double>()};
        s.primitive = primitive_from_string(j.at("primitive").get<std::string>());
        s.contact_point = {j.at("cx").get<double>(), j.at("cy").get<double>(),
                           j.at("cz").get<double>()};
        const bool has_ee = j.contains("ee_px");
        if (first) {
            trajectory.has_ee = has_ee;
            first = false;
        } else if (has_ee != trajectory.has_ee) {
            throw InvalidInputError("trajectory JSONL mixes samples with and without ee poses");
        }
        if (has_ee) {
            Pose e;
            e.position = {j.at("ee_px").get<double>(), j.at("ee_py").get<double>(),
                          j.at("ee_pz").get<double>()};
            e.rotation = {j.at("ee_qw").get<double>(), j.at("ee_qx").get<double>(),
                          j.at("ee_qy").get<double>(), j.at("ee_qz").get<double>()};
            s.ee_pose = e;
        }
        trajectory.samples.push_back(std::move(s));
    }
    return trajectory;
}

} // namespace

void export_trajectory(const PlannedTrajectory& trajectory, std::ostream& out,
                       TrajectoryFormat format) {
    if (format == TrajectoryFormat::Csv) {
        write_csv(trajectory, out);
    } else {
        write_jsonl(trajectory, out);
    }
}

void export_trajectory_file(const PlannedTrajectory& trajectory, const std::string& path,
                            TrajectoryFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open trajectory output file: " + path);
    }
    export_trajectory(trajectory, out, format);
    out.flush();
    if (!out) {
        throw IoError("failed writing trajectory file: " + path);
    }
}

PlannedTrajectory parse_trajectory(std::istream& in, TrajectoryFormat format) {
    return format == TrajectoryFormat::Csv ? parse_csv(in) : parse_jsonl(in);
}

PlannedTrajectory parse_trajectory_file(const std::string& path, TrajectoryFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open trajectory file: " + path);
    }
    return parse_trajectory(in, format);
}

} // namespace edgeroll
