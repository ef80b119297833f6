/*
 * C API for the edgeroll motion-planning library.
 *
 * All functions returning er_status give ER_OK on success; on failure
 * er_last_error() returns a thread-local description of what went wrong.
 * Objects created by er_*_create/load/run calls are released with the
 * matching er_*_destroy.
 */
#ifndef EDGEROLL_H
#define EDGEROLL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ER_BUILD_SHARED)
#define ER_API __declspec(dllexport)
#else
#define ER_API __declspec(dllimport)
#endif
#else
#define ER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum er_status {
    ER_OK = 0,
    ER_ERR_INVALID_INPUT = 1,
    ER_ERR_INFEASIBLE = 2,
    ER_ERR_IO = 3,
    ER_ERR_INTERNAL = 4
} er_status;

typedef struct er_config er_config;
typedef struct er_plan er_plan;
typedef struct er_trajectory er_trajectory;

ER_API const char* er_version(void);
ER_API const char* er_status_name(er_status status);
/* Thread-local message from the most recent failing call. */
ER_API const char* er_last_error(void);

/* ---- configuration -------------------------------------------------- */

ER_API er_status er_config_create(er_config** out);
ER_API er_status er_config_load(const char* path, er_config** out);
ER_API er_status er_config_parse(const char* text, er_config** out);
/* Keys address as "section.key", e.g. er_config_set(c, "plan.mode", "line"). */
ER_API er_status er_config_set(er_config* config, const char* key, const char* value);
/* Copies the value into buffer (NUL terminated, truncating); fails with
 * ER_ERR_INVALID_INPUT when the key is absent. */
ER_API er_status er_config_get(const er_config* config, const char* key, char* buffer,
                               size_t buffer_size);
ER_API void er_config_destroy(er_config* config);

/* ---- planning -------------------------------------------------------- */

/* Validates the configuration and runs the configured planner. `seed`
 * drives the optimizer multi-start (backforth mode); other modes are
 * deterministic regardless. */
ER_API er_status er_plan_run(const er_config* config, uint64_t seed, er_plan** out);
ER_API void er_plan_destroy(er_plan* plan);

ER_API size_t er_plan_step_count(const er_plan* plan);
/* Primitive of step `index` as "roll", "pivot", or "slide". */
ER_API er_status er_plan_step_kind(const er_plan* plan, size_t index, const char** out);
/* Contact point at the end of the plan (meters). */
ER_API er_status er_plan_final_contact(const er_plan* plan, double out_xyz[3]);

/* Back-and-forth solution access; these fail with ER_ERR_INVALID_INPUT for
 * plans of other modes. Arrays receive min(capacity, k) entries; *out_k is
 * always the full line count. */
ER_API er_status er_plan_solution_k(const er_plan* plan, int32_t* out_k);
ER_API er_status er_plan_solution_objective(const er_plan* plan, double* out_objective);
ER_API er_status er_plan_solution_residual(const er_plan* plan, double* out_residual_m);
ER_API er_status er_plan_solution_lengths(const er_plan* plan, double* out_lengths,
                                          size_t capacity, int32_t* out_k);
ER_API er_status er_plan_solution_angles(const er_plan* plan, double* out_angles_rad,
                                         size_t capacity, int32_t* out_k);

/* ---- trajectories ----------------------------------------------------- */

/* Time-scale the plan at the configured controller rate. */
ER_API er_status er_trajectory_emit(const er_plan* plan, er_trajectory** out);
ER_API void er_trajectory_destroy(er_trajectory* trajectory);

ER_API size_t er_trajectory_sample_count(const er_trajectory* trajectory);
/* t (s), object pose (px py pz qw qx qy qz), contact point (cx cy cz).
 * ee_pose_or_null receives the end-effector pose when the plan carries a
 * grasp transform (pass NULL to skip). */
ER_API er_status er_trajectory_sample(const er_trajectory* trajectory, size_t index,
                                      double* out_t, double out_object_pose[7],
                                      double out_contact[3], double* ee_pose_or_null);

/* format: "csv" or "jsonl". Identical trajectories write identical bytes. */
ER_API er_status er_trajectory_write(const er_trajectory* trajectory, const char* path,
                                     const char* format);
ER_API er_status er_trajectory_read(const char* path, const char* format, er_trajectory** out);

/* ---- analysis --------------------------------------------------------- */

/* Slippage of rolling `length_m` in `segments` elements; also reports the
 * element size in millimeters. */
ER_API er_status er_slippage(double length_m, int32_t segments, double radius_m, double height_m,
                             double* out_slippage_m, double* out_dx_mm);

/* Sweep CSV over the given segment counts (columns N,dx_mm,slippage_m; a
 * leading length_m column when several lengths are given). Segment counts
 * whose element exceeds the edge diameter are skipped; *out_skipped (may be
 * NULL) receives how many. */
ER_API er_status er_slippage_sweep_write(const double* lengths_m, size_t length_count,
                                         const int32_t* segment_counts, size_t n_count,
                                         double radius_m, double height_m, const char* path,
                                         int32_t* out_skipped);

/* Tilt placing the center of mass above the edge contact point. */
ER_API er_status er_stability_tilt(double radius_m, double height_m, double* out_beta_rad);

/* Longest single rolled line under a joint range: R * dtheta_max. */
ER_API er_status er_lmax_from_joint_range(double radius_m, double dtheta_max_rad,
                                          double* out_lmax_m);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EDGEROLL_H */
