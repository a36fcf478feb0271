#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gppso/harness.hpp"

using namespace gppso;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gppso_test_" + std::to_string(std::rand()) + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::vector<std::string> read_lines(const fs::path& file) {
    std::ifstream in(file);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

SwarmConfig small_config(std::uint64_t seed, long t_max = 60) {
    SwarmConfig config = preset_config("bst", make_objective(FunctionId::sphere));
    config.stopping.t_max = t_max;
    config.seed = seed;
    return config;
}

} // namespace

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.77e-49, 12345.6789, -0.0, 42.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(42.0) == "42");
}

TEST_CASE("batch_run: a single run's curves equal its trace") {
    BatchSpec spec;
    spec.base = small_config(11);
    spec.n_runs = 1;
    const BatchSummary summary = batch_run(spec);
    const RunRecord record = run(spec.base);

    REQUIRE(summary.mean_best.size() == record.trace.size());
    for (std::size_t t = 0; t < record.trace.size(); ++t) {
        CHECK(summary.mean_best[t] == record.trace[t].cgbest);
        CHECK(summary.mean_avg[t] == record.trace[t].mean_conflict);
        CHECK(summary.padded_runs[t] == 0);
    }
}

TEST_CASE("batch_run: two runs average pointwise") {
    BatchSpec spec;
    spec.base = small_config(100);
    spec.n_runs = 2;
    const BatchSummary summary = batch_run(spec);

    SwarmConfig c0 = spec.base;
    SwarmConfig c1 = spec.base;
    c1.seed = 101;
    const RunRecord a = run(c0);
    const RunRecord b = run(c1);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t t = 0; t < a.trace.size(); ++t) {
        CHECK(summary.mean_best[t] ==
              doctest::Approx((a.trace[t].cgbest + b.trace[t].cgbest) / 2.0).epsilon(1e-15));
    }
}

TEST_CASE("batch_run: mean best curve is non-increasing") {
    BatchSpec spec;
    spec.base = small_config(500, 120);
    spec.n_runs = 8;
    const BatchSummary summary = batch_run(spec);
    for (std::size_t t = 1; t < summary.mean_best.size(); ++t) {
        CHECK(summary.mean_best[t] <= summary.mean_best[t - 1]);
    }
}

TEST_CASE("batch_run: thread count never changes the summary") {
    BatchSpec spec;
    spec.base = small_config(7, 80);
    spec.n_runs = 6;
    spec.threads = 1;
    const BatchSummary serial = batch_run(spec);
    spec.threads = 6;
    const BatchSummary parallel = batch_run(spec);

    REQUIRE(serial.mean_best.size() == parallel.mean_best.size());
    for (std::size_t t = 0; t < serial.mean_best.size(); ++t) {
        CHECK(serial.mean_best[t] == parallel.mean_best[t]);
        CHECK(serial.mean_avg[t] == parallel.mean_avg[t]);
    }
    for (std::size_t i = 0; i < serial.runs.size(); ++i) {
        CHECK(serial.runs[i].final_conflict == parallel.runs[i].final_conflict);
        CHECK(serial.runs[i].seed == parallel.runs[i].seed);
    }
}

TEST_CASE("batch_run: early-terminating runs pad with their final values") {
    // a constant objective stalls and stops early; padded points repeat it
    BatchSpec spec;
    SwarmConfig config;
    SubSwarmSpec g;
    g.count = 4;
    g.params.inertia_weight = 0.7;
    config.sub_swarms = {g};
    Objective obj;
    obj.conflict = [](std::span<const double>) { return 5.0; };
    obj.lo = {-1.0};
    obj.hi = {1.0};
    obj.acceptable_error = 1.0;
    config.objective = obj;
    config.stopping.t_max = 100;

    // one stalled run plus one full-length run of a different objective is
    // impossible in a batch, so check padding against the longest run
    spec.base = config;
    spec.n_runs = 3;
    const BatchSummary summary = batch_run(spec);
    REQUIRE(!summary.mean_best.empty());
    CHECK(summary.mean_best.back() == 5.0);
    CHECK(summary.runs[0].termination == Termination::set2);
    // every run stalls at the same step here, so no padding is recorded
    for (int padded : summary.padded_runs) CHECK(padded == 0);
    CHECK(summary.success_rate == 0.0);
}

TEST_CASE("batch_run: seeds are base plus run index, success rate recomputable") {
    BatchSpec spec;
    spec.base = small_config(1000, 40);
    spec.n_runs = 4;
    const BatchSummary summary = batch_run(spec);
    int successes = 0;
    for (const auto& r : summary.runs) {
        CHECK(r.seed == 1000 + static_cast<std::uint64_t>(r.run));
        if (r.termination && r.final_conflict < spec.base.objective.acceptable_error) {
            ++successes;
        }
    }
    CHECK(summary.success_rate == doctest::Approx(successes / 4.0));
}

TEST_CASE("export_trace: run record layout and round-trip") {
    TempDir dir;
    SwarmConfig config = small_config(3, 10);
    const RunRecord record = run(config);
    const fs::path file = dir.path / "trace.csv";
    export_trace(record, file);

    const auto lines = read_lines(file);
    REQUIRE(lines.size() == record.trace.size() + 1);
    CHECK(lines[0] ==
          "t,cgbest,mean_conflict,rel_c_me,rel_p_mse,rel_p_cg_gbest,rel_c_cav,"
          "rel_c_cgbest,rel_p_cg,rel_p_gbest");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 10);
        CHECK(std::stol(cells[0]) == record.trace[i - 1].t);
        CHECK(std::stod(cells[1]) == record.trace[i - 1].cgbest);
        CHECK(std::stod(cells[2]) == record.trace[i - 1].mean_conflict);
        // error columns stay empty before enough history exists
        CHECK(cells[3].empty() == !record.trace[i - 1].errors.has_value());
    }
    CHECK_THROWS_AS(export_trace(record, dir.path / "x.bin", "parquet"),
                    std::invalid_argument);
}

TEST_CASE("export_trace: error columns filled once the window is warm") {
    TempDir dir;
    SwarmConfig config = small_config(3, 130);
    const RunRecord record = run(config);
    const fs::path file = dir.path / "trace.csv";
    export_trace(record, file);
    const auto lines = read_lines(file);
    const auto early = split_csv(lines[100]); // t=99
    CHECK(early[3].empty());
    const auto warm = split_csv(lines[101]); // t=100
    REQUIRE(!warm[3].empty());
    CHECK(std::stod(warm[4]) == record.trace[100].errors->rel_p_mse);
}

TEST_CASE("export_trace: batch summary files") {
    TempDir dir;
    BatchSpec spec;
    spec.base = small_config(9, 30);
    spec.n_runs = 3;
    const BatchSummary summary = batch_run(spec);
    export_trace(summary, dir.path);

    const auto best = read_lines(dir.path / "mean_best.csv");
    CHECK(best[0] == "t,mean_cgbest,padded_runs");
    CHECK(best.size() == summary.mean_best.size() + 1);

    const auto avg = read_lines(dir.path / "mean_avg.csv");
    CHECK(avg[0] == "t,mean_avg_conflict,padded_runs");

    const auto runs = read_lines(dir.path / "runs.csv");
    CHECK(runs[0] == "run,seed,final_conflict,steps,termination");
    REQUIRE(runs.size() == 4);
    for (std::size_t i = 1; i < runs.size(); ++i) {
        const auto cells = split_csv(runs[i]);
        REQUIRE(cells.size() == 5);
        const std::string& term = cells[4];
        CHECK((term == "set1" || term == "set2" || term == "tmax"));
        CHECK(std::stod(cells[2]) == summary.runs[i - 1].final_conflict);
    }
}

TEST_CASE("trajectory_study: writes t,x,v rows") {
    TempDir dir;
    TrajectoryStudyConfig config;
    config.mode = WeightMode::mean_replaced;
    config.w = 1.0;
    config.steps = 12;
    const fs::path file = dir.path / "traj.csv";
    trajectory_study(config, file);
    const auto lines = read_lines(file);
    REQUIRE(lines.size() == 14);
    CHECK(lines[0] == "t,x,v");
    const auto first = split_csv(lines[1]);
    CHECK(first[0] == "0");
    CHECK(std::stod(first[1]) == 100.0);
    // the cycle from the dynamics study shows up in the file
    CHECK(std::stod(split_csv(lines[2])[1]) == -100.0);
    CHECK(std::stod(split_csv(lines[4])[1]) == 100.0);
}

TEST_CASE("replicate_table3: configuration contract") {
    const SwarmConfig config = table3_config("bst_p", FunctionId::sphere, 1);
    CHECK(config.stopping.t_max == 30000);
    CHECK(config.stopping.stall_fraction == 0.25);
    int maximizers = 0;
    for (const auto& g : config.sub_swarms) {
        if (g.role == Role::maximizer) maximizers += g.count;
    }
    CHECK(maximizers == 5);

    // gp already carries its maximizer group; nothing more is added
    const SwarmConfig gp = table3_config("gp", FunctionId::sphere, 1);
    int gp_total = 0;
    for (const auto& g : gp.sub_swarms) gp_total += g.count;
    CHECK(gp_total == 35);
}

TEST_CASE("batch_run: per-run failures are recorded, the rest aggregate") {
    // single-threaded so the shared counter fails the second run only:
    // run 0 consumes exactly 2 + 30*2 = 62 evaluations
    auto calls = std::make_shared<int>(0);
    BatchSpec spec;
    spec.threads = 1;
    SwarmConfig config;
    SubSwarmSpec g;
    g.count = 2;
    config.sub_swarms = {g};
    Objective obj;
    obj.conflict = [calls](std::span<const double> x) -> double {
        if (++*calls > 70) throw std::domain_error("budget exhausted");
        return x[0] * x[0];
    };
    obj.lo = {-10.0};
    obj.hi = {10.0};
    obj.acceptable_error = 1.0;
    config.objective = obj;
    config.stopping.t_max = 30;
    spec.base = config;
    spec.n_runs = 2;
    const BatchSummary summary = batch_run(spec);

    REQUIRE(summary.runs.size() == 2);
    CHECK(summary.runs[0].termination.has_value());
    CHECK(summary.runs[0].error.empty());
    CHECK_FALSE(summary.runs[1].termination.has_value());
    CHECK(!summary.runs[1].error.empty());
    CHECK(std::isnan(summary.runs[1].final_conflict));
    // the curves still cover the completed run
    REQUIRE(summary.mean_best.size() == 31);
    CHECK(summary.mean_best[0] == summary.mean_best[0]); // not NaN
}
