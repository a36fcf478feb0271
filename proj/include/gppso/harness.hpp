#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gppso/engine.hpp"

namespace gppso {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

/// Multi-seed experiment: n_runs independent runs of the base config,
/// seeded base.seed + run index.
struct BatchSpec {
    SwarmConfig base;
    int n_runs = 50;
    /// Worker threads; 0 picks the hardware concurrency. Runs are
    /// independent and merged in run order, so the thread count never
    /// changes the result.
    int threads = 0;
};

struct RunSummary {
    int run = 0;
    std::uint64_t seed = 0;
    double final_conflict = 0.0;
    long steps = 0;
    /// Unset when the run failed; `error` carries the reason.
    std::optional<Termination> termination;
    std::string error;
};

struct BatchSummary {
    /// Pointwise mean over runs of the best conflict found so far. Runs
    /// that terminate early hold their final value for later points;
    /// padded_runs counts how many runs are padded at each step.
    std::vector<double> mean_best;
    /// Pointwise mean over runs of the clustering group's mean conflict.
    std::vector<double> mean_avg;
    std::vector<int> padded_runs;
    std::vector<RunSummary> runs;
    /// Fraction of runs whose final conflict beat the objective's
    /// acceptable error.
    double success_rate = 0.0;
};

BatchSummary batch_run(const BatchSpec& spec);

/// One desk-scale reproduction cell: the named preset (bst, bst_c, bst_p
/// or gp) on a benchmark, t_max = 30000, stall fraction 0.25. Presets
/// without a maximizer group get the five-particle one appended, since
/// the relative-error measures need the worst-solution record it
/// maintains.
struct Table3Row {
    double final_conflict = 0.0;
    long steps = 0;
    Termination termination = Termination::t_max_reached;
};

SwarmConfig table3_config(std::string_view preset, FunctionId function_id,
                          std::uint64_t seed);
Table3Row replicate_table3(std::string_view preset, FunctionId function_id,
                           std::uint64_t seed);

/// Runs a single-particle study and writes the trajectory as CSV
/// (header t,x,v) to out_file.
void trajectory_study(const TrajectoryStudyConfig& config,
                      const std::filesystem::path& out_file);

/// Writes a run trace as CSV. Columns, exactly:
///   t,cgbest,mean_conflict,rel_c_me,rel_p_mse,rel_p_cg_gbest,rel_c_cav,
///   rel_c_cgbest,rel_p_cg,rel_p_gbest
/// with the error columns empty before enough history exists. "csv" is
/// the only format.
void export_trace(const RunRecord& record, const std::filesystem::path& file,
                  std::string_view format = "csv");

/// Writes a batch summary into a directory: mean_best.csv and
/// mean_avg.csv (curves with the padded-run count column) plus runs.csv
/// with columns run,seed,final_conflict,steps,termination.
void export_trace(const BatchSummary& summary, const std::filesystem::path& dir,
                  std::string_view format = "csv");

} // namespace gppso
