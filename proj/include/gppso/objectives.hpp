#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace gppso {

/// Benchmark suite. Ids are the stable lowercase strings used in config
/// files and on the command line.
enum class FunctionId {
    sphere,
    rosenbrock,
    rastrigin,
    griewank,
    schaffer_f6_2d,
    schaffer_f6,
};

FunctionId parse_function_id(std::string_view name);
std::string_view to_string(FunctionId id);

/// A benchmark problem: function, hyper-cube domain, and the absolute
/// error below which a run counts as successful.
struct ObjectiveSpec {
    FunctionId function_id = FunctionId::sphere;
    int dimension = 30;
    double search_lo = -100.0;
    double search_hi = 100.0;
    double acceptable_error = 0.01;

    void validate() const;
};

/// Suite defaults for one function (dimension, domain, acceptable error).
ObjectiveSpec benchmark_spec(FunctionId id);

/// Evaluates the benchmark at x. Throws on dimension mismatch or
/// non-finite components.
double evaluate(const ObjectiveSpec& spec, std::span<const double> x);

/// Engine-facing objective: any conflict function over a box. Benchmarks
/// convert via make_objective; user problems plug in the same way.
struct Objective {
    std::function<double(std::span<const double>)> conflict;
    std::vector<double> lo;
    std::vector<double> hi;
    double acceptable_error = 0.0;

    int dimension() const { return static_cast<int>(lo.size()); }
    void validate() const;
};

Objective make_objective(const ObjectiveSpec& spec);
Objective make_objective(FunctionId id);

} // namespace gppso
