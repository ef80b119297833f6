#include "edgeroll.h"

#include <cstring>
#include <memory>
#include <fstream>
#include <string>

#include "edgeroll/analysis.hpp"
#include "edgeroll/errors.hpp"
#include "edgeroll/plan_config.hpp"

using namespace edgeroll;

struct er_config {
    ConfigMap map;
};

struct er_plan {
    PlanConfig config;
    PlanOutput output;
};

struct er_trajectory {
    PlannedTrajectory trajectory;
    TrajectoryFormat format = TrajectoryFormat::Csv;
};

namespace {

thread_local std::string g_last_error;

er_status fail(er_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
er_status guarded(Fn&& fn) {
    try {
        fn();
        return ER_OK;
    } catch (const InfeasibleError& e) {
        return fail(ER_ERR_INFEASIBLE, e.what());
    } catch (const IoError& e) {
        return fail(ER_ERR_IO, e.what());
    } catch (const InvalidInputError& e) {
        return fail(ER_ERR_INVALID_INPUT, e.what());
    } catch (const std::exception& e) {
        return fail(ER_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ER_ERR_INTERNAL, "unknown error");
    }
}

er_status require_nonnull(const void* p, const char* what) {
    if (p == nullptr) {
        return fail(ER_ERR_INVALID_INPUT, std::string(what) + " must not be null");
    }
    return ER_OK;
}

TrajectoryFormat parse_format(const char* format) {
    const std::string f = format == nullptr ? "" : format;
    if (f == "csv") {
        return TrajectoryFormat::Csv;
    }
    if (f == "jsonl") {
        return TrajectoryFormat::Jsonl;
    }
    throw InvalidInputError("format must be \"csv\" or \"jsonl\"");
}

void copy_pose(const Pose& pose, double out[7]) {
    out[0] = pose.position.x;
    out[1] = pose.position.y;
    out[2] = pose.position.z;
    out[3] = pose.rotation.w;
    out[4] = pose.rotation.x;
    out[5] = pose.rotation.y;
    out[6] = pose.rotation.z;
}

const BackForthSolution* solution_of(const er_plan* plan) {
    if (!plan->output.solution) {
        throw InvalidInputError("plan carries no back-and-forth solution");
    }
    return &*plan->output.solution;
}

} // namespace

extern "C" {

const char* er_version(void) { return "0.1.0"; }

const char* er_status_name(er_status status) {
    switch (status) {
    case ER_OK: return "ok";
    case ER_ERR_INVALID_INPUT: return "invalid input";
    case ER_ERR_INFEASIBLE: return "infeasible";
    case ER_ERR_IO: return "io error";
    case ER_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* er_last_error(void) { return g_last_error.c_str(); }

er_status er_config_create(er_config** out) {
    if (er_status s = require_nonnull(out, "out"); s != ER_OK) return s;
    return guarded([&] { *out = new er_config{}; });
}

er_status er_config_load(const char* path, er_config** out) {
    if (er_status s = require_nonnull(out, "out"); s != ER_OK) return s;
    if (er_status s = require_nonnull(path, "path"); s != ER_OK) return s;
    return guarded([&] { *out = new er_config{ConfigMap::load(path)}; });
}

er_status er_config_parse(const char* text, er_config** out) {
    if (er_status s = require_nonnull(out, "out"); s != ER_OK) return s;
    if (er_status s = require_nonnull(text, "text"); s != ER_OK) return s;
    return guarded([&] { *out = new er_config{ConfigMap::parse(text)}; });
}

er_status er_config_set(er_config* config, const char* key, const char* value) {
    if (er_status s = require_nonnull(config, "config"); s != ER_OK) return s;
    if (er_status s = require_nonnull(key, "key"); s != ER_OK) return s;
    if (er_status s = require_nonnull(value, "value"); s != ER_OK) return s;
    return guarded([&] { config->map.set(key, value); });
}

er_status er_config_get(const er_config* config, const char* key, char* buffer,
                        size_t buffer_size) {
    if (er_status s = require_nonnull(config, "config"); s != ER_OK) return s;
    if (er_status s = require_nonnull(key, "key"); s != ER_OK) return s;
    if (er_status s = require_nonnull(buffer, "buffer"); s != ER_OK) return s;
    return guarded([&] {
        const auto value = config->map.get(key);
        if (!value) {
            throw InvalidInputError(std::string("config key not set: ") + key);
        }
        if (buffer_size == 0) {
            throw InvalidInputError("buffer_size must be positive");
        }
        std::strncpy(buffer, value->c_str(), buffer_size - 1);
        buffer[buffer_size - 1] = '\0';
    });
}

void er_config_destroy(er_config* config) { delete config; }

er_status er_plan_run(const er_config* config, uint64_t seed, er_plan** out) {
    if (er_status s = require_nonnull(config, "config"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out, "out"); s != ER_OK) return s;
    return guarded([&] {
        auto plan = std::make_unique<er_plan>();
        plan->config = build_plan_config(config->map);
        plan->output = run_plan(plan->config, seed);
        *out = plan.release();
    });
}

void er_plan_destroy(er_plan* plan) { delete plan; }

size_t er_plan_step_count(const er_plan* plan) {
    return plan == nullptr ? 0 : plan->output.steps.size();
}

er_status er_plan_step_kind(const er_plan* plan, size_t index, const char** out) {
    if (er_status s = require_nonnull(plan, "plan"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out, "out"); s != ER_OK) return s;
    return guarded([&] {
        if (index >= plan->output.steps.size()) {
            throw InvalidInputError("step index out of range");
        }
        *out = to_string(plan->output.steps[index].kind);
    });
}

er_status er_plan_final_contact(const er_plan* plan, double out_xyz[3]) {
    if (er_status s = require_nonnull(plan, "plan"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out_xyz, "out_xyz"); s != ER_OK) return s;
    return guarded([&] {
        if (plan->output.steps.empty()) {
            throw InvalidInputError("plan is empty");
        }
        const Vec3 contact = plan->output.steps.back().contact_end;
        out_xyz[0] = contact.x;
        out_xyz[1] = contact.y;
        out_xyz[2] = contact.z;
    });
}

er_status er_plan_solution_k(const er_plan* plan, int32_t* out_k) {
    if (er_status s = require_nonnull(plan, "plan"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out_k, "out_k"); s != ER_OK) return s;
    return guarded([&] { *out_k = solution_of(plan)->k; });
}

er_status er_plan_solution_objective(const er_plan* plan, double* out_objective) {
    if (er_status s = require_nonnull(plan, "plan"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out_objective, "out_objective"); s != ER_OK) return s;
    return guarded([&] { *out_objective = solution_of(plan)->objective; });
}

er_status er_plan_solution_residual(const er_plan* plan, double* out_residual_m) {
    if (er_status s = require_nonnull(plan, "plan"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out_residual_m, "out_residual_m"); s != ER_OK) return s;
    return guarded([&] { *out_residual_m = solution_of(plan)->closure_residual; });
}

er_status er_plan_solution_lengths(const er_plan* plan, double* out_lengths, size_t capacity,
                                   int32_t* out_k) {
    if (er_status s = require_nonnull(plan, "plan"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out_k, "out_k"); s != ER_OK) return s;
    return guarded([&] {
        const BackForthSolution* sol = solution_of(plan);
        *out_k = sol->k;
        if (out_lengths != nullptr) {
            const size_t n = std::min(capacity, sol->lengths.size());
            std::memcpy(out_lengths, sol->lengths.data(), n * sizeof(double));
        }
    });
}

er_status er_plan_solution_angles(const er_plan* plan, double* out_angles_rad, size_t capacity,
                                  int32_t* out_k) {
    if (er_status s = require_nonnull(plan, "plan"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out_k, "out_k"); s != ER_OK) return s;
    return guarded([&] {
        const BackForthSolution* sol = solution_of(plan);
        *out_k = sol->k;
        if (out_angles_rad != nullptr) {
            const size_t n = std::min(capacity, sol->alphas.size());
            std::memcpy(out_angles_rad, sol->alphas.data(), n * sizeof(double));
        }
    });
}

er_status er_trajectory_emit(const er_plan* plan, er_trajectory** out) {
    if (er_status s = require_nonnull(plan, "plan"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out, "out"); s != ER_OK) return s;
    return guarded([&] {
        auto trajectory = std::make_unique<er_trajectory>();
        trajectory->trajectory = make_trajectory(plan->config, plan->output);
        trajectory->format = plan->config.format;
        *out = trajectory.release();
    });
}

void er_trajectory_destroy(er_trajectory* trajectory) { delete trajectory; }

size_t er_trajectory_sample_count(const er_trajectory* trajectory) {
    return trajectory == nullptr ? 0 : trajectory->trajectory.samples.size();
}

er_status er_trajectory_sample(const er_trajectory* trajectory, size_t index, double* out_t,
                               double out_object_pose[7], double out_contact[3],
                               double* ee_pose_or_null) {
    if (er_status s = require_nonnull(trajectory, "trajectory"); s != ER_OK) return s;
    return guarded([&] {
        const auto& samples = trajectory->trajectory.samples;
        if (index >= samples.size()) {
            throw InvalidInputError("sample index out of range");
        }
        const TrajectorySample& sample = samples[index];
        if (out_t != nullptr) {
            *out_t = sample.t;
        }
        if (out_object_pose != nullptr) {
            copy_pose(sample.object_pose, out_object_pose);
        }
        if (out_contact != nullptr) {
            out_contact[0] = sample.contact_point.x;
            out_contact[1] = sample.contact_point.y;
            out_contact[2] = sample.contact_point.z;
        }
        if (ee_pose_or_null != nullptr) {
            if (!sample.ee_pose) {
                throw InvalidInputError("trajectory carries no end-effector poses");
            }
            copy_pose(*sample.ee_pose, ee_pose_or_null);
        }
    });
}

er_status er_trajectory_write(const er_trajectory* trajectory, const char* path,
                              const char* format) {
    if (er_status s = require_nonnull(trajectory, "trajectory"); s != ER_OK) return s;
    if (er_status s = require_nonnull(path, "path"); s != ER_OK) return s;
    return guarded([&] {
        const TrajectoryFormat fmt =
            format == nullptr ? trajectory->format : parse_format(format);
        export_trajectory_file(trajectory->trajectory, path, fmt);
    });
}

er_status er_trajectory_read(const char* path, const char* format, er_trajectory** out) {
    if (er_status s = require_nonnull(path, "path"); s != ER_OK) return s;
    if (er_status s = require_nonnull(out, "out"); s != ER_OK) return s;
    return guarded([&] {
        auto trajectory = std::make_unique<er_trajectory>();
        trajectory->format = parse_format(format);
        trajectory->trajectory = parse_trajectory_file(path, trajectory->format);
        *out = trajectory.release();
    });
}

er_status er_slippage(double length_m, int32_t segments, double radius_m, double height_m,
                      double* out_slippage_m, double* out_dx_mm) {
    return guarded([&] {
        const CylinderGeometry geom{radius_m, height_m};
        validate(geom);
        const ContactState start =
            make_contact_state(Vec3::zero(), Vec3::unit_x(), stability_tilt(geom), geom);
        const SlippageReport report = slippage_for_n(length_m, segments, geom, start);
        if (out_slippage_m != nullptr) {
            *out_slippage_m = report.slippage;
        }
        if (out_dx_mm != nullptr) {
            *out_dx_mm = 1e3 * length_m / segments;
        }
    });
}

er_status er_slippage_sweep_write(const double* lengths_m, size_t length_count,
                                  const int32_t* segment_counts, size_t n_count, double radius_m,
                                  double height_m, const char* path, int32_t* out_skipped) {
    if (er_status s = require_nonnull(lengths_m, "lengths_m"); s != ER_OK) return s;
    if (er_status s = require_nonnull(segment_counts, "segment_counts"); s != ER_OK) return s;
    if (er_status s = require_nonnull(path, "path"); s != ER_OK) return s;
    return guarded([&] {
        const std::vector<double> lengths(lengths_m, lengths_m + length_count);
        std::vector<int> ns(segment_counts, segment_counts + n_count);
        const SlippageSweep sweep = run_slippage_sweep(lengths, ns, {radius_m, height_m});
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw IoError(std::string("cannot open sweep output file: ") + path);
        }
        write_slippage_csv(sweep, lengths.size() > 1, out);
        if (!out.flush()) {
            throw IoError(std::string("failed writing sweep file: ") + path);
        }
        if (out_skipped != nullptr) {
            *out_skipped = static_cast<int32_t>(sweep.skipped.size());
        }
    });
}

er_status er_stability_tilt(double radius_m, double height_m, double* out_beta_rad) {
    if (er_status s = require_nonnull(out_beta_rad, "out_beta_rad"); s != ER_OK) return s;
    return guarded([&] { *out_beta_rad = stability_tilt({radius_m, height_m}); });
}

er_status er_lmax_from_joint_range(double radius_m, double dtheta_max_rad, double* out_lmax_m) {
    if (er_status s = require_nonnull(out_lmax_m, "out_lmax_m"); s != ER_OK) return s;
    return guarded([&] { *out_lmax_m = lmax_from_joint_range(radius_m, dtheta_max_rad); });
}

} // extern "C"
