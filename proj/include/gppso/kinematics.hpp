#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gppso/rng.hpp"

namespace gppso {

/// Linear ramp from `start` at t = 0 to `end` at t = t_max.
struct LinearSchedule {
    double start = 0.0;
    double end = 0.0;
};

/// Velocity-update coefficients for one particle group.
///
/// The update rule is
///   v' = w*v + iw*U1*(pbest - x) + sw*U2*(gbest - x)
/// with U1, U2 fresh uniform draws per component. Setting the inertia
/// weight to 1 recovers the inertia-free rule; feeding the weights
/// produced by constricted_parameter_set() recovers the constricted rule.
struct ParameterSet {
    double inertia_weight = 1.0;
    double individuality_weight = 2.0;
    double sociality_weight = 2.0;
    /// Per-component velocity clamp. When unset, the engine substitutes
    /// half the search-space range.
    std::optional<double> v_max;
    std::optional<LinearSchedule> inertia_schedule;
    std::optional<LinearSchedule> individuality_schedule;
    std::optional<LinearSchedule> sociality_schedule;

    void validate() const;
};

/// Weights realized at a concrete time-step.
struct Weights {
    double w = 1.0;
    double iw = 2.0;
    double sw = 2.0;
};

/// Evaluates constant or linearly scheduled weights at step t of a run
/// capped at t_max. Throws std::invalid_argument if t is outside
/// [0, t_max].
Weights realized_weights(const ParameterSet& params, long t, long t_max);

/// One member of the swarm. For maximizer particles the pbest fields hold
/// the worst experience so far instead of the best.
struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> pbest_position;
    double pbest_conflict = 0.0;
    std::size_t group_id = 0;
};

/// In-place velocity update. Consumes exactly two draws per component, in
/// component order: individuality first, then sociality.
template <UniformSource R>
void update_velocity(std::span<double> velocity, std::span<const double> position,
                     std::span<const double> pbest, std::span<const double> gbest,
                     const Weights& wt, R& rng) {
    const std::size_t n = velocity.size();
    if (position.size() != n || pbest.size() != n || gbest.size() != n) {
        throw std::invalid_argument("update_velocity: vector length mismatch");
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        velocity[j] = wt.w * velocity[j] + wt.iw * u1 * (pbest[j] - position[j]) +
                      wt.sw * u2 * (gbest[j] - position[j]);
    }
}

/// Clips every component into [-v_max, +v_max]. In-range components are
/// left bit-identical. Idempotent.
void clamp_velocity(std::span<double> velocity, double v_max);

/// x' = x + v, componentwise.
void update_position(std::span<double> position, std::span<const double> velocity);

/// Constriction factor for a total acceleration weight `aw` and
/// 0 < kappa <= 1:
///   aw >= 4:  2*kappa / (aw - 2 + sqrt(aw^2 - 4*aw))
///   aw <  4:  sqrt(kappa)
double constriction_factor(double acceleration_weight, double kappa);

/// Inertia-form equivalent of the constricted update with the
/// acceleration weight split evenly between individuality and sociality:
/// w = chi, iw = sw = chi*aw/2. Stepping with these weights reproduces
/// the constricted rule exactly.
ParameterSet constricted_parameter_set(double acceleration_weight, double kappa,
                                       double v_max);

/// Acceleration weight paired to an inertia weight by the quartic fit
///   aw(w) = -4.142 w^4 + 12.398 w^3 - 12.77 w^2 + 7.803 w + 2,
/// the tuning curve that favours fast clustering.
double polynomial_acceleration(double inertia_weight);

/// How the per-term random weights are treated in a single-particle study.
enum class WeightMode {
    stochastic,    ///< fresh uniform draws each term, each step
    mean_replaced, ///< draws replaced by their mean 0.5
    removed,       ///< draws replaced by 1
};

/// One-dimensional single-particle study: the particle is attracted to a
/// fixed point standing in for both best experiences.
struct TrajectoryStudyConfig {
    double x0 = 100.0;
    double v0 = 0.0;
    /// When set, v0 is drawn uniformly from this interval instead.
    std::optional<std::pair<double, double>> v0_range;
    double attractor = 0.0;
    WeightMode mode = WeightMode::stochastic;
    double w = 1.0;
    double individuality_weight = 2.0;
    double sociality_weight = 2.0;
    std::optional<double> v_max;
    long steps = 1000;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrajectoryPoint {
    long t = 0;
    double x = 0.0;
    double v = 0.0;
};

/// Runs the study and returns steps+1 points, the initial state included.
/// In stochastic mode the seed fully determines the trajectory.
std::vector<TrajectoryPoint> simulate_single_particle(const TrajectoryStudyConfig& config);

} // namespace gppso
