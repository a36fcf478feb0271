#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gppso/constraints.hpp"
#include "gppso/kinematics.hpp"
#include "gppso/objectives.hpp"
#include "gppso/rng.hpp"
#include "gppso/stopping.hpp"

namespace gppso {

enum class Role {
    minimizer, ///< seeks the best conflict, attracted to gbest
    maximizer, ///< seeks the worst conflict, attracted to gworst
};

/// One homogeneous particle group. Maximizer groups exist to supply the
/// worst-solution record that normalizes the relative-error measures;
/// they reuse the minimizer update rule with the worst-so-far records in
/// place of the best ones.
struct SubSwarmSpec {
    int count = 0;
    Role role = Role::minimizer;
    ParameterSet params;
    /// Whether this group's particles feed the clustering-based stopping
    /// measures. Only meaningful for minimizer groups. When no group is
    /// flagged, all minimizer particles feed them.
    bool in_clustering_group = false;
};

/// Full experiment definition. A config plus its seed determines a run
/// bit for bit.
struct SwarmConfig {
    std::vector<SubSwarmSpec> sub_swarms;
    Objective objective;

    ConstraintMode constraint_mode = ConstraintMode::none;
    ConstraintSet constraints;
    /// Feasibility tolerance. Defaults to 0 (strict); must be set
    /// explicitly when equality constraints are present.
    std::optional<double> feasibility_tol;
    /// Initial adaptive-penalty state for penalty mode.
    PenaltyState penalty;
    /// Optional variant: zero the velocity of a particle found infeasible,
    /// removing its inertia so it is pulled back faster.
    bool reset_infeasible_velocity = false;
    int feasible_init_max_attempts = 1000;

    StoppingConfig stopping;
    std::uint64_t seed = 0;
    /// Sub-box for position initialization; defaults to the objective's
    /// full search box. Flight outside it is permitted later.
    std::optional<Box> init_region;

    void validate() const;
};

struct SwarmState {
    long t = 0;
    std::vector<Particle> particles;
    std::vector<Role> group_roles;
    std::vector<double> group_v_max;
    /// Indices of the particles feeding the clustering measures.
    std::vector<std::size_t> clustering;

    std::vector<double> gbest;
    double cgbest = 0.0;
    std::vector<double> gworst;
    double cgworst = 0.0;

    /// Per-particle results of the latest evaluation round. `scores` are
    /// penalized under penalty mode, raw otherwise; `eligible` marks the
    /// evaluations allowed to update the best/worst records.
    std::vector<double> scores;
    std::vector<double> raw_conflicts;
    std::vector<char> eligible;

    PenaltyState penalty;
};

/// Builds the initial swarm. Draw order, per particle in index order:
/// the position (one draw per component; under preserving feasibility,
/// whole-position rejection attempts), then the velocity (one draw per
/// component, uniform in [-v_max, +v_max]). Personal bests start at the
/// initial positions; the best/worst records are seeded from all initial
/// conflicts.
SwarmState init_swarm(const SwarmConfig& config, Rng& rng);

/// Advances the swarm one step, synchronously: every particle moves and
/// is evaluated against the records as they stood when the step began,
/// then all personal bests and the global records are updated together.
/// Per particle in index order, per component: individuality draw, then
/// sociality draw. Personal and global records update on strict
/// improvement only; every eligible evaluation can move both the best
/// and the worst record, whichever group produced it.
void step(SwarmState& state, const SwarmConfig& config, Rng& rng);

enum class Termination {
    set1,          ///< clustering-based condition set
    set2,          ///< stall-based condition set
    t_max_reached, ///< step cap hit without attaining either set
};

std::string_view to_string(Termination termination);

struct TraceRow {
    long t = 0;
    double cgbest = 0.0;
    double mean_conflict = 0.0;
    /// Present once enough history exists for the windowed measures.
    std::optional<ErrorSnapshot> errors;
};

struct RunRecord {
    std::vector<TraceRow> trace;
    std::vector<double> best_position;
    double best_conflict = 0.0;
    /// Raw conflict at the best position when penalty mode inflated the
    /// recorded scores.
    std::optional<double> best_raw_conflict;
    Termination termination = Termination::t_max_reached;
    long steps = 0;
    std::uint64_t seed = 0;
};

/// Runs a full search: initialization, the synchronous step loop, the
/// termination logic fed every step (the initial state is step 0), and
/// the per-step trace. Set 1 is checked before set 2 when both would
/// fire. Termination is final; no further steps are taken.
RunRecord run(const SwarmConfig& config);

/// Named particle-group compositions:
///   bst    30 minimizers, w=0.7,    iw=sw=2        (robust)
///   bst_c  30 minimizers, w=0.7298, iw=sw=1.49609  (constricted)
///   bst_p  30 minimizers, w=0.5,    iw=sw=2        (quartic-fit tuning)
///   gp     10 of each minimizer tuning above plus 5 maximizers
///          (w=0.7, iw=sw=2); the clustering measures follow the 20
///          fine-clustering particles.
std::vector<SubSwarmSpec> preset_sub_swarms(std::string_view name);

/// The five-particle worst-seeking group that supplies the relative-error
/// normalization when a preset does not already include one.
SubSwarmSpec maximizer_sub_swarm();

/// Assembles a ready-to-run config from a preset name and an objective.
SwarmConfig preset_config(std::string_view name, Objective objective);

} // namespace gppso
