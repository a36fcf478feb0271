#include "gppso/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace gppso {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

void require_csv(std::string_view format) {
    if (format != "csv") {
        throw std::invalid_argument("unknown export format: " + std::string(format));
    }
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open output file: " + file.string());
    return out;
}

} // namespace

BatchSummary batch_run(const BatchSpec& spec) {
    if (spec.n_runs < 1) throw std::invalid_argument("batch: n_runs must be >= 1");
    spec.base.validate();

    std::vector<RunRecord> records(static_cast<std::size_t>(spec.n_runs));
    std::vector<RunSummary> summaries(static_cast<std::size_t>(spec.n_runs));
    std::vector<char> completed(static_cast<std::size_t>(spec.n_runs), 0);

    unsigned thread_count = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                             : std::thread::hardware_concurrency();
    if (thread_count == 0) thread_count = 4;
    thread_count = std::min<unsigned>(thread_count, static_cast<unsigned>(spec.n_runs));

    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= spec.n_runs) return;
            SwarmConfig config = spec.base;
            config.seed = spec.base.seed + static_cast<std::uint64_t>(idx);
            RunSummary& summary = summaries[static_cast<std::size_t>(idx)];
            summary.run = idx;
            summary.seed = config.seed;
            try {
                RunRecord record = run(config);
                summary.final_conflict = record.best_conflict;
                summary.steps = record.steps;
                summary.termination = record.termination;
                records[static_cast<std::size_t>(idx)] = std::move(record);
                completed[static_cast<std::size_t>(idx)] = 1;
            } catch (const std::exception& e) {
                summary.final_conflict = std::numeric_limits<double>::quiet_NaN();
                summary.error = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    BatchSummary result;
    result.runs = std::move(summaries);

    std::size_t longest = 0;
    int n_completed = 0;
    for (int i = 0; i < spec.n_runs; ++i) {
        if (!completed[static_cast<std::size_t>(i)]) continue;
        ++n_completed;
        longest = std::max(longest, records[static_cast<std::size_t>(i)].trace.size());
    }
    if (n_completed > 0) {
        result.mean_best.assign(longest, 0.0);
        result.mean_avg.assign(longest, 0.0);
        result.padded_runs.assign(longest, 0);
        for (int i = 0; i < spec.n_runs; ++i) {
            if (!completed[static_cast<std::size_t>(i)]) continue;
            const auto& trace = records[static_cast<std::size_t>(i)].trace;
            for (std::size_t t = 0; t < longest; ++t) {
                const TraceRow& row = t < trace.size() ? trace[t] : trace.back();
                result.mean_best[t] += row.cgbest;
                result.mean_avg[t] += row.mean_conflict;
                if (t >= trace.size()) ++result.padded_runs[t];
            }
        }
        for (std::size_t t = 0; t < longest; ++t) {
            result.mean_best[t] /= n_completed;
            result.mean_avg[t] /= n_completed;
        }
    }

    int successes = 0;
    const double bar = spec.base.objective.acceptable_error;
    for (const auto& summary : result.runs) {
        if (summary.termination && summary.final_conflict < bar) ++successes;
    }
    result.success_rate = static_cast<double>(successes) / spec.n_runs;
    return result;
}

SwarmConfig table3_config(std::string_view preset, FunctionId function_id,
                          std::uint64_t seed) {
    SwarmConfig config = preset_config(preset, make_objective(function_id));
    bool has_maximizer = false;
    for (const auto& group : config.sub_swarms) {
        has_maximizer = has_maximizer || group.role == Role::maximizer;
    }
    if (!has_maximizer) config.sub_swarms.push_back(maximizer_sub_swarm());
    config.stopping.t_max = 30000;
    config.stopping.stall_fraction = 0.25;
    config.seed = seed;
    return config;
}

Table3Row replicate_table3(std::string_view preset, FunctionId function_id,
                           std::uint64_t seed) {
    const RunRecord record = run(table3_config(preset, function_id, seed));
    return {record.best_conflict, record.steps, record.termination};
}

void trajectory_study(const TrajectoryStudyConfig& config,
                      const std::filesystem::path& out_file) {
    const auto trajectory = simulate_single_particle(config);
    auto out = open_out(out_file);
    out << "t,x,v\n";
    for (const auto& point : trajectory) {
        out << point.t << ',' << format_double(point.x) << ',' << format_double(point.v)
            << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + out_file.string());
}

void export_trace(const RunRecord& record, const std::filesystem::path& file,
                  std::string_view format) {
    require_csv(format);
    auto out = open_out(file);
    out << "t,cgbest,mean_conflict,rel_c_me,rel_p_mse,rel_p_cg_gbest,rel_c_cav,"
           "rel_c_cgbest,rel_p_cg,rel_p_gbest\n";
    for (const TraceRow& row : record.trace) {
        out << row.t << ',' << format_double(row.cgbest) << ','
            << format_double(row.mean_conflict) << ',';
        if (row.errors) {
            const ErrorSnapshot& e = *row.errors;
            out << format_double(e.rel_c_me) << ',' << format_double(e.rel_p_mse) << ','
                << format_double(e.rel_p_cg_gbest) << ',' << format_double(e.rel_c_cav) << ','
                << format_double(e.rel_c_cgbest) << ',' << format_double(e.rel_p_cg) << ','
                << format_double(e.rel_p_gbest);
        } else {
            out << ",,,,,,";
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

void export_trace(const BatchSummary& summary, const std::filesystem::path& dir,
                  std::string_view format) {
    require_csv(format);
    std::filesystem::create_directories(dir);

    {
        auto out = open_out(dir / "mean_best.csv");
        out << "t,mean_cgbest,padded_runs\n";
        for (std::size_t t = 0; t < summary.mean_best.size(); ++t) {
            out << t << ',' << format_double(summary.mean_best[t]) << ','
                << summary.padded_runs[t] << '\n';
        }
    }
    {
        auto out = open_out(dir / "mean_avg.csv");
        out << "t,mean_avg_conflict,padded_runs\n";
        for (std::size_t t = 0; t < summary.mean_avg.size(); ++t) {
            out << t << ',' << format_double(summary.mean_avg[t]) << ','
                << summary.padded_runs[t] << '\n';
        }
    }
    {
        auto out = open_out(dir / "runs.csv");
        out << "run,seed,final_conflict,steps,termination\n";
        for (const RunSummary& r : summary.runs) {
            out << r.run << ',' << r.seed << ',' << format_double(r.final_conflict) << ','
                << r.steps << ','
                << (r.termination ? to_string(*r.termination) : std::string_view("failed"))
                << '\n';
        }
    }
}

} // namespace gppso
