#include "gppso/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gppso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Box sampling_box(const SwarmConfig& config) {
    if (config.init_region) return *config.init_region;
    Box box;
    box.lo = config.objective.lo;
    box.hi = config.objective.hi;
    return box;
}

double default_v_max(const Objective& objective) {
    double range = 0.0;
    for (std::size_t k = 0; k < objective.lo.size(); ++k) {
        range = std::max(range, objective.hi[k] - objective.lo[k]);
    }
    return 0.5 * range;
}

double evaluate_conflict(const SwarmConfig& config, std::span<const double> x, long t,
                         std::size_t particle) {
    try {
        return config.objective.conflict(x);
    } catch (const std::exception& e) {
        throw std::runtime_error("objective evaluation failed at step " + std::to_string(t) +
                                 ", particle " + std::to_string(particle) + ": " + e.what());
    }
}

} // namespace

void SwarmConfig::validate() const {
    objective.validate();
    if (sub_swarms.empty()) throw std::invalid_argument("config: no sub-swarms");
    bool has_minimizer = false;
    for (const auto& group : sub_swarms) {
        if (group.count < 1) throw std::invalid_argument("config: sub-swarm count must be >= 1");
        group.params.validate();
        if (group.role == Role::minimizer) {
            has_minimizer = true;
        } else if (group.in_clustering_group) {
            throw std::invalid_argument(
                "config: only minimizer groups can feed the clustering measures");
        }
    }
    if (!has_minimizer) throw std::invalid_argument("config: at least one minimizer group required");

    stopping.validate();

    if (init_region) {
        init_region->validate();
        if (init_region->lo.size() != objective.lo.size()) {
            throw std::invalid_argument("config: init_region dimension mismatch");
        }
    }
    if (constraint_mode == ConstraintMode::cutoff && !constraints.box) {
        throw std::invalid_argument("config: cutoff mode requires box bounds");
    }
    if (constraints.box && constraints.box->lo.size() != objective.lo.size()) {
        throw std::invalid_argument("config: constraint box dimension mismatch");
    }
    if (!constraints.equalities.empty() && !feasibility_tol) {
        throw std::invalid_argument(
            "config: equality constraints require an explicit feasibility tolerance");
    }
    if (feasibility_tol && *feasibility_tol < 0.0) {
        throw std::invalid_argument("config: feasibility tolerance must be >= 0");
    }
    if (constraint_mode == ConstraintMode::penalty) penalty.validate();
    if (feasible_init_max_attempts < 1) {
        throw std::invalid_argument("config: feasible_init_max_attempts must be >= 1");
    }
}

SwarmState init_swarm(const SwarmConfig& config, Rng& rng) {
    config.validate();
    const std::size_t n = config.objective.lo.size();
    const double tol = config.feasibility_tol.value_or(0.0);
    const Box init_box = sampling_box(config);
    const double fallback_v_max = default_v_max(config.objective);

    SwarmState state;
    state.penalty = config.penalty;

    bool any_cluster_flag = false;
    for (const auto& group : config.sub_swarms) {
        state.group_roles.push_back(group.role);
        state.group_v_max.push_back(group.params.v_max.value_or(fallback_v_max));
        any_cluster_flag = any_cluster_flag || group.in_clustering_group;
    }

    for (std::size_t g = 0; g < config.sub_swarms.size(); ++g) {
        const auto& group = config.sub_swarms[g];
        const double v_max = state.group_v_max[g];
        for (int i = 0; i < group.count; ++i) {
            Particle p;
            p.group_id = g;
            if (config.constraint_mode == ConstraintMode::preserve) {
                p.position = feasible_initialize(rng, init_box, config.constraints, tol,
                                                 config.feasible_init_max_attempts)
                                 .position;
            } else {
                p.position.resize(n);
                for (std::size_t k = 0; k < n; ++k) {
                    p.position[k] = rng.uniform(init_box.lo[k], init_box.hi[k]);
                }
                if (config.constraint_mode == ConstraintMode::cutoff) {
                    cutoff_repair(p.position, *config.constraints.box);
                }
            }
            p.velocity.resize(n);
            for (std::size_t k = 0; k < n; ++k) {
                p.velocity[k] = rng.uniform(-v_max, v_max);
            }
            const std::size_t index = state.particles.size();
            if (group.role == Role::minimizer &&
                (group.in_clustering_group || !any_cluster_flag)) {
                state.clustering.push_back(index);
            }
            state.particles.push_back(std::move(p));
        }
    }

    const std::size_t m = state.particles.size();
    state.scores.resize(m);
    state.raw_conflicts.resize(m);
    state.eligible.assign(m, 1);

    state.cgbest = kInf;
    state.cgworst = -kInf;
    for (std::size_t i = 0; i < m; ++i) {
        Particle& p = state.particles[i];
        const double raw = evaluate_conflict(config, p.position, 0, i);
        double score = raw;
        if (config.constraint_mode == ConstraintMode::penalty) {
            const auto violations = violation_measures(p.position, config.constraints);
            score = penalized_conflict(raw, violations, state.penalty.lambda);
        }
        state.raw_conflicts[i] = raw;
        state.scores[i] = score;
        p.pbest_position = p.position;
        p.pbest_conflict = score;
        if (score < state.cgbest) {
            state.cgbest = score;
            state.gbest = p.position;
        }
        if (score > state.cgworst) {
            state.cgworst = score;
            state.gworst = p.position;
        }
    }
    return state;
}

void step(SwarmState& state, const SwarmConfig& config, Rng& rng) {
    const long t_new = state.t + 1;
    const double tol = config.feasibility_tol.value_or(0.0);
    const std::size_t m = state.particles.size();
    std::vector<char> feasible_flags;
    const bool track_feasibility = config.constraint_mode == ConstraintMode::preserve ||
                                   config.constraint_mode == ConstraintMode::penalty;
    if (track_feasibility) feasible_flags.assign(m, 1);

    // Movement and evaluation against the records as of the step start.
    for (std::size_t i = 0; i < m; ++i) {
        Particle& p = state.particles[i];
        const auto& group = config.sub_swarms[p.group_id];
        const Weights wt = realized_weights(group.params, t_new, config.stopping.t_max);
        const auto& attractor =
            state.group_roles[p.group_id] == Role::minimizer ? state.gbest : state.gworst;

        update_velocity(std::span<double>(p.velocity), p.position, p.pbest_position, attractor,
                        wt, rng);
        clamp_velocity(p.velocity, state.group_v_max[p.group_id]);
        update_position(p.position, p.velocity);

        if (config.constraint_mode == ConstraintMode::cutoff) {
            cutoff_repair(p.position, *config.constraints.box);
        }

        const double raw = evaluate_conflict(config, p.position, t_new, i);
        double score = raw;
        bool eligible = true;
        if (config.constraint_mode == ConstraintMode::preserve) {
            const bool feasible = is_feasible(p.position, config.constraints, tol);
            feasible_flags[i] = feasible;
            eligible = feasible;
        } else if (config.constraint_mode == ConstraintMode::penalty) {
            const auto violations = violation_measures(p.position, config.constraints);
            score = penalized_conflict(raw, violations, state.penalty.lambda);
            feasible_flags[i] = is_feasible(p.position, config.constraints, tol);
        }
        state.raw_conflicts[i] = raw;
        state.scores[i] = score;
        state.eligible[i] = eligible;
    }

    // Bookkeeping: personal bests and the global records move together,
    // after the whole swarm has been evaluated.
    for (std::size_t i = 0; i < m; ++i) {
        Particle& p = state.particles[i];
        if (track_feasibility && !feasible_flags[i] && config.reset_infeasible_velocity) {
            std::fill(p.velocity.begin(), p.velocity.end(), 0.0);
        }
        if (!state.eligible[i]) continue;
        const double score = state.scores[i];
        if (state.group_roles[p.group_id] == Role::minimizer) {
            if (score < p.pbest_conflict) {
                p.pbest_conflict = score;
                p.pbest_position = p.position;
            }
        } else {
            if (score > p.pbest_conflict) {
                p.pbest_conflict = score;
                p.pbest_position = p.position;
            }
        }
        if (score < state.cgbest) {
            state.cgbest = score;
            state.gbest = p.position;
        }
        if (score > state.cgworst) {
            state.cgworst = score;
            state.gworst = p.position;
        }
    }

    if (config.constraint_mode == ConstraintMode::penalty) {
        // Generation flag: feasibility of the best minimizer particle of
        // this generation under penalized ranking.
        std::size_t best = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (state.group_roles[state.particles[i].group_id] != Role::minimizer) continue;
            if (best == m || state.scores[i] < state.scores[best]) best = i;
        }
        update_lambda(state.penalty, feasible_flags[best] != 0);
    }

    state.t = t_new;
}

std::string_view to_string(Termination termination) {
    switch (termination) {
    case Termination::set1: return "set1";
    case Termination::set2: return "set2";
    case Termination::t_max_reached: return "tmax";
    }
    throw std::invalid_argument("unknown Termination");
}

namespace {

StepSnapshot make_snapshot(const SwarmState& state) {
    StepSnapshot snap;
    snap.t = state.t;
    snap.conflicts.reserve(state.particles.size());
    for (std::size_t i = 0; i < state.particles.size(); ++i) {
        if (state.eligible[i]) snap.conflicts.push_back(state.scores[i]);
    }
    snap.gbest = state.gbest;
    double sum = 0.0;
    snap.cluster_positions.reserve(state.clustering.size());
    for (std::size_t idx : state.clustering) {
        snap.cluster_positions.push_back(state.particles[idx].position);
        sum += state.scores[idx];
    }
    snap.cluster_mean_conflict =
        state.clustering.empty() ? 0.0 : sum / static_cast<double>(state.clustering.size());
    return snap;
}

} // namespace

RunRecord run(const SwarmConfig& config) {
    config.validate();
    Rng rng(config.seed);
    SwarmState state = init_swarm(config, rng);

    std::vector<double> ranges(config.objective.lo.size());
    for (std::size_t k = 0; k < ranges.size(); ++k) {
        ranges[k] = config.objective.hi[k] - config.objective.lo[k];
    }
    StoppingState stop(config.stopping.window, ranges);

    RunRecord record;
    record.seed = config.seed;
    record.trace.reserve(static_cast<std::size_t>(config.stopping.t_max) + 1);

    const long warmup = std::max<long>(
        config.stopping.window,
        static_cast<long>(std::ceil(config.stopping.min_fraction *
                                    static_cast<double>(config.stopping.t_max))));

    StepSnapshot snap = make_snapshot(state);
    stop.record_step(snap);
    record.trace.push_back({0, state.cgbest, snap.cluster_mean_conflict, std::nullopt});

    record.termination = Termination::t_max_reached;
    for (long t = 1; t <= config.stopping.t_max; ++t) {
        step(state, config, rng);
        snap = make_snapshot(state);
        stop.record_step(snap);

        std::optional<ErrorSnapshot> errors;
        if (stop.ready()) errors = stop.relative_errors();
        record.trace.push_back({t, state.cgbest, snap.cluster_mean_conflict, errors});

        if (errors && t >= warmup && set1_met(*errors, t, config.stopping)) {
            record.termination = Termination::set1;
            break;
        }
        if (set2_met(stop, t, config.stopping)) {
            record.termination = Termination::set2;
            break;
        }
    }

    record.steps = state.t;
    record.best_position = state.gbest;
    record.best_conflict = state.cgbest;
    if (config.constraint_mode == ConstraintMode::penalty) {
        record.best_raw_conflict = config.objective.conflict(state.gbest);
    }
    return record;
}

std::vector<SubSwarmSpec> preset_sub_swarms(std::string_view name) {
    const auto group = [](int count, Role role, double w, double iw, double sw, bool cluster) {
        SubSwarmSpec spec;
        spec.count = count;
        spec.role = role;
        spec.params.inertia_weight = w;
        spec.params.individuality_weight = iw;
        spec.params.sociality_weight = sw;
        spec.in_clustering_group = cluster;
        return spec;
    };
    if (name == "bst") {
        return {group(30, Role::minimizer, 0.7, 2.0, 2.0, true)};
    }
    if (name == "bst_c") {
        return {group(30, Role::minimizer, 0.7298, 1.49609, 1.49609, true)};
    }
    if (name == "bst_p") {
        return {group(30, Role::minimizer, 0.5, 2.0, 2.0, true)};
    }
    if (name == "gp") {
        return {
            group(10, Role::minimizer, 0.7, 2.0, 2.0, false),
            group(10, Role::minimizer, 0.5, 2.0, 2.0, true),
            group(10, Role::minimizer, 0.7298, 1.49609, 1.49609, true),
            group(5, Role::maximizer, 0.7, 2.0, 2.0, false),
        };
    }
    throw std::invalid_argument("unknown preset: " + std::string(name));
}

SubSwarmSpec maximizer_sub_swarm() {
    SubSwarmSpec spec;
    spec.count = 5;
    spec.role = Role::maximizer;
    spec.params.inertia_weight = 0.7;
    spec.params.individuality_weight = 2.0;
    spec.params.sociality_weight = 2.0;
    spec.in_clustering_group = false;
    return spec;
}

SwarmConfig preset_config(std::string_view name, Objective objective) {
    SwarmConfig config;
    config.sub_swarms = preset_sub_swarms(name);
    config.objective = std::move(objective);
    return config;
}

} // namespace gppso
