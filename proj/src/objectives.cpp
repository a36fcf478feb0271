#include "gppso/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gppso {

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return s;
}

// The 100 multiplies only the first square; minimum 0 at the all-ones
// point, f(0,...,0) = n - 1.
double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double rastrigin(std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) {
        s += xi * xi - 10.0 * std::cos(2.0 * std::numbers::pi * xi) + 10.0;
    }
    return s;
}

double griewank(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double schaffer_f6(std::span<const double> x) {
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    const double s = std::sin(std::sqrt(r2));
    const double d = 1.0 + 0.001 * r2;
    return (s * s - 0.5) / (d * d) + 0.5;
}

} // namespace

FunctionId parse_function_id(std::string_view name) {
    if (name == "sphere") return FunctionId::sphere;
    if (name == "rosenbrock") return FunctionId::rosenbrock;
    if (name == "rastrigin") return FunctionId::rastrigin;
    if (name == "griewank") return FunctionId::griewank;
    if (name == "schaffer_f6_2d") return FunctionId::schaffer_f6_2d;
    if (name == "schaffer_f6") return FunctionId::schaffer_f6;
    throw std::invalid_argument("unknown benchmark function: " + std::string(name));
}

std::string_view to_string(FunctionId id) {
    switch (id) {
    case FunctionId::sphere: return "sphere";
    case FunctionId::rosenbrock: return "rosenbrock";
    case FunctionId::rastrigin: return "rastrigin";
    case FunctionId::griewank: return "griewank";
    case FunctionId::schaffer_f6_2d: return "schaffer_f6_2d";
    case FunctionId::schaffer_f6: return "schaffer_f6";
    }
    throw std::invalid_argument("unknown FunctionId");
}

void ObjectiveSpec::validate() const {
    if (dimension < 1) throw std::invalid_argument("objective dimension must be >= 1");
    if (!(search_lo < search_hi)) {
        throw std::invalid_argument("objective bounds require search_lo < search_hi");
    }
    if (!(acceptable_error > 0.0)) {
        throw std::invalid_argument("acceptable_error must be > 0");
    }
    if (function_id == FunctionId::schaffer_f6_2d && dimension != 2) {
        throw std::invalid_argument("schaffer_f6_2d is defined for dimension 2 only");
    }
}

ObjectiveSpec benchmark_spec(FunctionId id) {
    switch (id) {
    case FunctionId::sphere: return {id, 30, -100.0, 100.0, 0.01};
    case FunctionId::rosenbrock: return {id, 30, -30.0, 30.0, 100.0};
    case FunctionId::rastrigin: return {id, 30, -5.12, 5.12, 100.0};
    case FunctionId::griewank: return {id, 30, -600.0, 600.0, 0.1};
    case FunctionId::schaffer_f6_2d: return {id, 2, -100.0, 100.0, 0.00001};
    case FunctionId::schaffer_f6: return {id, 30, -100.0, 100.0, 0.1};
    }
    throw std::invalid_argument("unknown FunctionId");
}

double evaluate(const ObjectiveSpec& spec, std::span<const double> x) {
    if (static_cast<int>(x.size()) != spec.dimension) {
        throw std::invalid_argument("evaluate: position has wrong dimension");
    }
    for (double xi : x) {
        if (!std::isfinite(xi)) {
            throw std::invalid_argument("evaluate: non-finite position component");
        }
    }
    switch (spec.function_id) {
    case FunctionId::sphere: return sphere(x);
    case FunctionId::rosenbrock: return rosenbrock(x);
    case FunctionId::rastrigin: return rastrigin(x);
    case FunctionId::griewank: return griewank(x);
    case FunctionId::schaffer_f6_2d: return schaffer_f6(x);
    case FunctionId::schaffer_f6: return schaffer_f6(x);
    }
    throw std::invalid_argument("unknown FunctionId");
}

void Objective::validate() const {
    if (!conflict) throw std::invalid_argument("objective: conflict function not set");
    if (lo.empty() || lo.size() != hi.size()) {
        throw std::invalid_argument("objective: bounds must be non-empty and equal length");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) {
            throw std::invalid_argument("objective: bounds require lo < hi per dimension");
        }
    }
}

Objective make_objective(const ObjectiveSpec& spec) {
    spec.validate();
    Objective obj;
    obj.conflict = [spec](std::span<const double> x) { return evaluate(spec, x); };
    obj.lo.assign(static_cast<std::size_t>(spec.dimension), spec.search_lo);
    obj.hi.assign(static_cast<std::size_t>(spec.dimension), spec.search_hi);
    obj.acceptable_error = spec.acceptable_error;
    return obj;
}

Objective make_objective(FunctionId id) { return make_objective(benchmark_spec(id)); }

} // namespace gppso
