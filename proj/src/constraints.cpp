#include "gppso/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gppso {

ConstraintMode parse_constraint_mode(std::string_view name) {
    if (name == "none") return ConstraintMode::none;
    if (name == "cutoff") return ConstraintMode::cutoff;
    if (name == "preserve") return ConstraintMode::preserve;
    if (name == "penalty") return ConstraintMode::penalty;
    throw std::invalid_argument("unknown constraint mode: " + std::string(name));
}

std::string_view to_string(ConstraintMode mode) {
    switch (mode) {
    case ConstraintMode::none: return "none";
    case ConstraintMode::cutoff: return "cutoff";
    case ConstraintMode::preserve: return "preserve";
    case ConstraintMode::penalty: return "penalty";
    }
    throw std::invalid_argument("unknown ConstraintMode");
}

void Box::validate() const {
    if (lo.empty() || lo.size() != hi.size()) {
        throw std::invalid_argument("box: bounds must be non-empty and equal length");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] <= hi[i])) {
            throw std::invalid_argument("box: lo must not exceed hi");
        }
    }
}

bool Box::contains(std::span<const double> x) const {
    if (x.size() != lo.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    }
    return true;
}

Box uniform_box(int dimension, double lo, double hi) {
    Box box;
    box.lo.assign(static_cast<std::size_t>(dimension), lo);
    box.hi.assign(static_cast<std::size_t>(dimension), hi);
    box.validate();
    return box;
}

bool is_feasible(std::span<const double> x, const ConstraintSet& cs, double tol) {
    if (cs.box && !cs.box->contains(x)) return false;
    for (const auto& g : cs.inequalities) {
        if (g(x) > tol) return false;
    }
    for (const auto& g : cs.equalities) {
        if (std::abs(g(x)) > tol) return false;
    }
    return true;
}

void cutoff_repair(std::span<double> x, const Box& box) {
    if (x.size() != box.lo.size()) {
        throw std::invalid_argument("cutoff_repair: dimension mismatch");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > box.hi[i]) {
            x[i] = box.hi[i];
        } else if (x[i] < box.lo[i]) {
            x[i] = box.lo[i];
        }
    }
}

FeasibleSample feasible_initialize(Rng& rng, const Box& sampling_box,
                                   const ConstraintSet& cs, double tol, int max_attempts) {
    sampling_box.validate();
    if (max_attempts < 1) {
        throw std::invalid_argument("feasible_initialize: max_attempts must be >= 1");
    }
    FeasibleSample sample;
    sample.position.resize(sampling_box.lo.size());
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        for (std::size_t j = 0; j < sample.position.size(); ++j) {
            sample.position[j] = rng.uniform(sampling_box.lo[j], sampling_box.hi[j]);
        }
        if (is_feasible(sample.position, cs, tol)) {
            sample.attempts = attempt;
            return sample;
        }
    }
    throw std::runtime_error("feasible initialization failed after " +
                             std::to_string(max_attempts) +
                             " attempts; the feasible region may be too small");
}

std::vector<double> violation_measures(std::span<const double> x, const ConstraintSet& cs) {
    std::vector<double> v;
    v.reserve(cs.inequalities.size() + cs.equalities.size());
    for (const auto& g : cs.inequalities) {
        v.push_back(std::max(0.0, g(x)));
    }
    for (const auto& g : cs.equalities) {
        v.push_back(g(x));
    }
    return v;
}

double penalized_conflict(double f_value, std::span<const double> violations, double lambda) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("penalized_conflict: lambda must be > 0");
    }
    double q = 0.0;
    for (double fj : violations) q += fj * fj;
    return f_value + lambda * q;
}

void PenaltyState::validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("penalty: lambda must be > 0");
    if (!(beta1 > 1.0) || !(beta2 > 1.0)) {
        throw std::invalid_argument("penalty: beta1 and beta2 must be > 1");
    }
    if (beta1 == beta2) throw std::invalid_argument("penalty: beta1 must differ from beta2");
    if (lookback < 1) throw std::invalid_argument("penalty: lookback must be >= 1");
}

void update_lambda(PenaltyState& state, bool best_was_feasible) {
    state.history.push_back(best_was_feasible);
    while (static_cast<int>(state.history.size()) > state.lookback) {
        state.history.pop_front();
    }
    if (static_cast<int>(state.history.size()) < state.lookback) return;
    const bool all = std::all_of(state.history.begin(), state.history.end(),
                                 [](bool f) { return f; });
    const bool none = std::none_of(state.history.begin(), state.history.end(),
                                   [](bool f) { return f; });
    if (all) {
        state.lambda /= state.beta1;
    } else if (none) {
        state.lambda *= state.beta2;
    }
}

} // namespace gppso
