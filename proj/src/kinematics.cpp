#include "gppso/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace gppso {

namespace {

void validate_schedule(const std::optional<LinearSchedule>& s, const char* what) {
    if (!s) return;
    if (!std::isfinite(s->start) || !std::isfinite(s->end)) {
        throw std::invalid_argument(std::string(what) + " schedule endpoints must be finite");
    }
}

double scheduled(double constant, const std::optional<LinearSchedule>& s, long t, long t_max) {
    if (!s) return constant;
    if (t_max <= 0) return s->start;
    const double frac = static_cast<double>(t) / static_cast<double>(t_max);
    return s->start + (s->end - s->start) * frac;
}

} // namespace

void ParameterSet::validate() const {
    if (individuality_weight < 0.0 || sociality_weight < 0.0) {
        throw std::invalid_argument("individuality and sociality weights must be >= 0");
    }
    if (v_max && !(*v_max > 0.0)) {
        throw std::invalid_argument("v_max must be > 0");
    }
    validate_schedule(inertia_schedule, "inertia");
    validate_schedule(individuality_schedule, "individuality");
    validate_schedule(sociality_schedule, "sociality");
}

Weights realized_weights(const ParameterSet& params, long t, long t_max) {
    if (t < 0 || t > t_max) {
        throw std::invalid_argument("realized_weights: t outside [0, t_max]");
    }
    Weights wt;
    wt.w = scheduled(params.inertia_weight, params.inertia_schedule, t, t_max);
    wt.iw = scheduled(params.individuality_weight, params.individuality_schedule, t, t_max);
    wt.sw = scheduled(params.sociality_weight, params.sociality_schedule, t, t_max);
    return wt;
}

void clamp_velocity(std::span<double> velocity, double v_max) {
    if (!(v_max > 0.0)) {
        throw std::invalid_argument("clamp_velocity: v_max must be > 0");
    }
    for (double& v : velocity) {
        if (v > v_max) {
            v = v_max;
        } else if (v < -v_max) {
            v = -v_max;
        }
    }
}

void update_position(std::span<double> position, std::span<const double> velocity) {
    if (position.size() != velocity.size()) {
        throw std::invalid_argument("update_position: vector length mismatch");
    }
    for (std::size_t j = 0; j < position.size(); ++j) {
        position[j] += velocity[j];
    }
}

double constriction_factor(double acceleration_weight, double kappa) {
    if (!(kappa > 0.0) || kappa > 1.0) {
        throw std::invalid_argument("constriction_factor: kappa must lie in (0,1]");
    }
    if (acceleration_weight >= 4.0) {
        const double aw = acceleration_weight;
        return 2.0 * kappa / (aw - 2.0 + std::sqrt(aw * aw - 4.0 * aw));
    }
    return std::sqrt(kappa);
}

ParameterSet constricted_parameter_set(double acceleration_weight, double kappa,
                                       double v_max) {
    const double chi = constriction_factor(acceleration_weight, kappa);
    ParameterSet params;
    params.inertia_weight = chi;
    params.individuality_weight = chi * acceleration_weight / 2.0;
    params.sociality_weight = chi * acceleration_weight / 2.0;
    params.v_max = v_max;
    params.validate();
    return params;
}

double polynomial_acceleration(double inertia_weight) {
    const double w = inertia_weight;
    const double w2 = w * w;
    return -4.142 * w2 * w2 + 12.398 * w2 * w - 12.77 * w2 + 7.803 * w + 2.0;
}

void TrajectoryStudyConfig::validate() const {
    if (steps < 1) throw std::invalid_argument("trajectory study: steps must be >= 1");
    if (individuality_weight < 0.0 || sociality_weight < 0.0) {
        throw std::invalid_argument("trajectory study: weights must be >= 0");
    }
    if (v_max && !(*v_max > 0.0)) {
        throw std::invalid_argument("trajectory study: v_max must be > 0");
    }
    if (v0_range && v0_range->first > v0_range->second) {
        throw std::invalid_argument("trajectory study: empty v0 interval");
    }
}

std::vector<TrajectoryPoint> simulate_single_particle(const TrajectoryStudyConfig& config) {
    config.validate();
    Rng rng(config.seed);

    double x = config.x0;
    double v = config.v0_range ? rng.uniform(config.v0_range->first, config.v0_range->second)
                               : config.v0;

    std::vector<TrajectoryPoint> trajectory;
    trajectory.reserve(static_cast<std::size_t>(config.steps) + 1);
    trajectory.push_back({0, x, v});

    const double p = config.attractor;
    for (long t = 1; t <= config.steps; ++t) {
        double u1 = 1.0;
        double u2 = 1.0;
        switch (config.mode) {
        case WeightMode::stochastic:
            u1 = rng.uniform01();
            u2 = rng.uniform01();
            break;
        case WeightMode::mean_replaced:
            u1 = u2 = 0.5;
            break;
        case WeightMode::removed:
            break;
        }
        v = config.w * v + config.individuality_weight * u1 * (p - x) +
            config.sociality_weight * u2 * (p - x);
        if (config.v_max) {
            v = std::clamp(v, -*config.v_max, *config.v_max);
        }
        x += v;
        trajectory.push_back({t, x, v});
    }
    return trajectory;
}

} // namespace gppso
