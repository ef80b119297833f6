// Command-line front end for the edgeroll shared library. Everything goes
// through the C API in edgeroll.h; this file holds no planning logic.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <edgeroll.h>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

int exit_code_for(er_status status) {
    switch (status) {
    case ER_OK: return kExitOk;
    case ER_ERR_INFEASIBLE: return kExitInfeasible;
    case ER_ERR_INVALID_INPUT:
    case ER_ERR_IO: return kExitInvalid;
    case ER_ERR_INTERNAL: return kExitInternal;
    }
    return kExitInternal;
}

int report_failure(er_status status) {
    std::fprintf(stderr, "error (%s): %s\n", er_status_name(status), er_last_error());
    return exit_code_for(status);
}

struct ConfigDeleter {
    void operator()(er_config* p) const { er_config_destroy(p); }
};
struct PlanDeleter {
    void operator()(er_plan* p) const { er_plan_destroy(p); }
};
struct TrajectoryDeleter {
    void operator()(er_trajectory* p) const { er_trajectory_destroy(p); }
};

using ConfigPtr = std::unique_ptr<er_config, ConfigDeleter>;
using PlanPtr = std::unique_ptr<er_plan, PlanDeleter>;
using TrajectoryPtr = std::unique_ptr<er_trajectory, TrajectoryDeleter>;

struct PlanOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool quiet = false;
};

void add_plan_options(CLI::App* cmd, PlanOptions& options) {
    cmd->add_option("-c,--config", options.config_path, "plan configuration file")->required();
    cmd->add_option("-o,--out", options.out_path, "trajectory output file (overrides output.path)");
    cmd->add_option("-f,--format", options.format, "output format: csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("-s,--set", options.overrides,
                    "override a config entry, e.g. --set plan.segments=1000");
    cmd->add_option("--seed", options.seed, "random seed for the optimizer multi-start");
    cmd->add_flag("-q,--quiet", options.quiet, "suppress the summary output");
}

int run_plan_command(const std::string& mode, const PlanOptions& options) {
    er_config* raw_config = nullptr;
    if (er_status s = er_config_load(options.config_path.c_str(), &raw_config); s != ER_OK) {
        return report_failure(s);
    }
    ConfigPtr config(raw_config);

    if (er_status s = er_config_set(config.get(), "plan.mode", mode.c_str()); s != ER_OK) {
        return report_failure(s);
    }
    for (const std::string& entry : options.overrides) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects section.key=value, got '%s'\n",
                         entry.c_str());
            return kExitInvalid;
        }
        if (er_status s = er_config_set(config.get(), entry.substr(0, eq).c_str(),
                                        entry.substr(eq + 1).c_str());
            s != ER_OK) {
            return report_failure(s);
        }
    }
    if (!options.out_path.empty()) {
        if (er_status s = er_config_set(config.get(), "output.path", options.out_path.c_str());
            s != ER_OK) {
            return report_failure(s);
        }
    }
    if (!options.format.empty()) {
        if (er_status s = er_config_set(config.get(), "output.format", options.format.c_str());
            s != ER_OK) {
            return report_failure(s);
        }
    }

    er_plan* raw_plan = nullptr;
    if (er_status s = er_plan_run(config.get(), options.seed, &raw_plan); s != ER_OK) {
        return report_failure(s);
    }
    PlanPtr plan(raw_plan);

    if (!options.quiet) {
        std::printf("planned %zu primitive steps (mode %s, seed %" PRIu64 ")\n",
                    er_plan_step_count(plan.get()), mode.c_str(), options.seed);
        double contact[3] = {0, 0, 0};
        if (er_plan_final_contact(plan.get(), contact) == ER_OK) {
            std::printf("final contact point: (%.6f, %.6f, %.6f) m\n", contact[0], contact[1],
                        contact[2]);
        }
        std::int32_t k = 0;
        if (er_plan_solution_k(plan.get(), &k) == ER_OK) {
            std::vector<double> lengths(static_cast<size_t>(k));
            std::vector<double> angles(static_cast<size_t>(k));
            std::int32_t k2 = 0;
            er_plan_solution_lengths(plan.get(), lengths.data(), lengths.size(), &k2);
            er_plan_solution_angles(plan.get(), angles.data(), angles.size(), &k2);
            double objective = 0.0, residual = 0.0, total = 0.0;
            er_plan_solution_objective(plan.get(), &objective);
            er_plan_solution_residual(plan.get(), &residual);
            std::printf("back-and-forth solution: k = %d\n", k);
            for (std::int32_t j = 0; j < k; ++j) {
                std::printf("  line %d: alpha = %+8.3f deg, l = %.4f m\n", j + 1,
                            angles[static_cast<size_t>(j)] * 180.0 / 3.14159265358979323846,
                            lengths[static_cast<size_t>(j)]);
                total += lengths[static_cast<size_t>(j)];
            }
            std::printf("  total length = %.4f m, objective = %.6f, closure residual = %.3e m\n",
                        total, objective, residual);
        }
    }

    // Resolve the output path after overrides; no path means summary only.
    char out_path[1024] = {0};
    if (er_config_get(config.get(), "output.path", out_path, sizeof out_path) != ER_OK ||
        out_path[0] == '\0') {
        if (!options.quiet) {
            std::printf("no output.path configured; trajectory not written\n");
        }
        return kExitOk;
    }

    er_trajectory* raw_trajectory = nullptr;
    if (er_status s = er_trajectory_emit(plan.get(), &raw_trajectory); s != ER_OK) {
        return report_failure(s);
    }
    TrajectoryPtr trajectory(raw_trajectory);
    if (er_status s = er_trajectory_write(trajectory.get(), out_path, nullptr); s != ER_OK) {
        return report_failure(s);
    }
    if (!options.quiet) {
        std::printf("wrote %zu samples to %s\n", er_trajectory_sample_count(trajectory.get()),
                    out_path);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"edgeroll: screw-based edge-rolling motion planner"};
    app.require_subcommand(1);

    PlanOptions line_opts, curve_opts, backforth_opts, slide_opts;
    add_plan_options(app.add_subcommand("plan-line", "roll along a straight line"), line_opts);
    add_plan_options(app.add_subcommand("plan-curve", "roll along a discretized curve"),
                     curve_opts);
    add_plan_options(
        app.add_subcommand("plan-backforth", "optimized back-and-forth motion between two points"),
        backforth_opts);
    add_plan_options(app.add_subcommand("plan-slide", "slide along a discretized curve"),
                     slide_opts);

    std::vector<double> sweep_lengths{0.1368};
    std::vector<std::int32_t> sweep_ns;
    double sweep_radius = 0.037;
    double sweep_height = 0.234;
    std::string sweep_out = "slippage.csv";
    bool sweep_quiet = false;
    CLI::App* sweep = app.add_subcommand(
        "slippage-sweep", "tabulate rolling slippage against the segment count");
    sweep->add_option("--lengths", sweep_lengths, "line lengths in meters")->delimiter(',');
    sweep->add_option("--N", sweep_ns, "segment counts")->delimiter(',')->required();
    sweep->add_option("--radius", sweep_radius, "edge radius in meters");
    sweep->add_option("--height", sweep_height, "cylinder height in meters");
    sweep->add_option("-o,--out", sweep_out, "output CSV path");
    sweep->add_flag("-q,--quiet", sweep_quiet, "suppress the summary output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    if (app.got_subcommand("plan-line")) {
        return run_plan_command("line", line_opts);
    }
    if (app.got_subcommand("plan-curve")) {
        return run_plan_command("curve", curve_opts);
    }
    if (app.got_subcommand("plan-backforth")) {
        return run_plan_command("backforth", backforth_opts);
    }
    if (app.got_subcommand("plan-slide")) {
        return run_plan_command("slide", slide_opts);
    }

    // slippage-sweep
    std::int32_t skipped = 0;
    if (er_status s = er_slippage_sweep_write(sweep_lengths.data(), sweep_lengths.size(),
                                              sweep_ns.data(), sweep_ns.size(), sweep_radius,
                                              sweep_height, sweep_out.c_str(), &skipped);
        s != ER_OK) {
        return report_failure(s);
    }
    if (!sweep_quiet) {
        std::printf("wrote slippage sweep to %s\n", sweep_out.c_str());
        if (skipped > 0) {
            std::fprintf(stderr,
                         "warning: %d (length, N) pairs skipped: element longer than the edge "
                         "diameter\n",
                         skipped);
        }
    }
    return kExitOk;
}
