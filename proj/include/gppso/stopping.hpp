#pragma once

#include <optional>
#include <span>
#include <vector>

namespace gppso {

/// Termination tuning. Two independent sets of conditions end a search:
///
/// Set 1 (clustering): fires once t >= min_fraction*t_max and all seven
/// windowed relative-error measures are at or below their thresholds.
///
/// Set 2 (stall): fires once t > stall_fraction*t_max and the best
/// conflict found is exactly the same as it was stall_fraction*t_max
/// steps ago.
struct StoppingConfig {
    long t_max = 10000;
    double min_fraction = 0.1;
    double stall_fraction = 0.35;
    int window = 100;

    // Thresholds for the seven measures, in ErrorSnapshot field order.
    double max_rel_c_me = 1e-12;
    double max_rel_p_mse = 1e-9;
    double max_rel_p_cg_gbest = 1e-9;
    double max_rel_c_cav = 1e-12;
    double max_rel_c_cgbest = 1e-15;
    double max_rel_p_cg = 1e-9;
    double max_rel_p_gbest = 1e-12;

    void validate() const;
};

/// The seven windowed relative-error measures at one time-step, with
/// W the window length, cgbest/cgworst the best/worst conflicts found so
/// far, cbar the mean conflict of the clustering group, cg its centre of
/// gravity, and every position difference normalized by the search range
/// of its own dimension:
///
///   rel_c_me        sum_{i=t-W+1..t} (cbar(i) - cgbest(i))
///                     / (W * (cgworst(t) - cgbest(t)))
///   rel_p_mse       sum_i ||group positions(i) - gbest(i)||
///                     / (W * sqrt(m*n))
///   rel_p_cg_gbest  sum_i ||cg(i) - gbest(i)|| / (W * sqrt(n))
///   rel_c_cav       |cbar(t) - cbar(t-W)| / (W * (cgworst(t) - cgbest(t)))
///   rel_c_cgbest    (cgbest(t-W) - cgbest(t))
///                     / (W * (cgworst(t) - cgbest(t)))
///   rel_p_cg        sum_i ||cg(i) - cg(i-1)|| / (W * sqrt(n))
///   rel_p_gbest     sum_i ||gbest(i) - gbest(i-1)|| / (W * sqrt(n))
///
/// When cgworst - cgbest underflows to nothing (entire swarm collapsed to
/// one conflict value) the conflict-based measures are defined as 0.
struct ErrorSnapshot {
    double rel_c_me = 0.0;
    double rel_p_mse = 0.0;
    double rel_p_cg_gbest = 0.0;
    double rel_c_cav = 0.0;
    double rel_c_cgbest = 0.0;
    double rel_p_cg = 0.0;
    double rel_p_gbest = 0.0;
};

/// What the termination logic needs to see of one completed step.
/// `conflicts` carries every conflict evaluated this step that is allowed
/// to update the best/worst records (maximizer particles included,
/// infeasible evaluations excluded under the preserving-feasibility
/// technique). `gbest` is the best position found so far, after this
/// step's bookkeeping. The cluster fields cover only the particles
/// configured to feed the clustering measures.
struct StepSnapshot {
    long t = 0;
    std::vector<double> conflicts;
    double cluster_mean_conflict = 0.0;
    std::vector<double> gbest;
    std::vector<std::vector<double>> cluster_positions;
};

/// Rolling bookkeeping for the termination logic. Snapshots must arrive
/// for consecutive t starting at 0. Keeps the last window+1 steps of the
/// per-step quantities plus the full history of cgbest (the stall test
/// looks arbitrarily far back).
class StoppingState {
public:
    StoppingState(int window, std::vector<double> dimension_ranges);

    /// Ingests one step. Throws std::invalid_argument on out-of-order t.
    void record_step(const StepSnapshot& snapshot);

    /// True once window+1 steps are recorded and the windowed measures
    /// are defined.
    bool ready() const { return last_t_ >= window_; }

    /// Computes the seven measures at the last recorded step. Throws
    /// std::logic_error before ready().
    ErrorSnapshot relative_errors() const;

    double cgbest() const { return cgbest_; }
    double cgworst() const { return cgworst_; }
    long last_t() const { return last_t_; }
    int window() const { return window_; }

    /// cgbest at every recorded step, indexed by t.
    const std::vector<double>& cgbest_history() const { return cgbest_history_; }

private:
    double& ring(std::vector<double>& buf, long t) const;
    double ring(const std::vector<double>& buf, long t) const;

    int window_;
    std::vector<double> ranges_; // per-dimension search ranges, all > 0
    long last_t_ = -1;
    std::size_t cluster_size_ = 0;

    double cgbest_;
    double cgworst_;
    std::vector<double> cgbest_history_;

    // Ring buffers over the last window+1 steps, indexed by t modulo
    // window+1. The step contributions never change once recorded, so
    // each windowed sum is a plain sum over its ring.
    std::vector<double> cbar_ring_;
    std::vector<double> me_ring_;     // cbar(i) - cgbest(i)
    std::vector<double> mse_ring_;    // ||group positions(i) - gbest(i)||, range-normalized
    std::vector<double> cgg_ring_;    // ||cg(i) - gbest(i)||, range-normalized
    std::vector<double> cgstep_ring_; // ||cg(i) - cg(i-1)||, range-normalized
    std::vector<double> gbstep_ring_; // ||gbest(i) - gbest(i-1)||, range-normalized

    std::vector<double> prev_cg_;
    std::vector<double> prev_gbest_;
};

/// Set-1 decision at step t for an already-computed snapshot.
bool set1_met(const ErrorSnapshot& snapshot, long t, const StoppingConfig& config);

/// Set-2 decision at step t. The lookback index t - stall_fraction*t_max
/// is rounded down to an integer step; the comparison is exact equality
/// of the stored cgbest values (cgbest only ever changes by assignment).
bool set2_met(const StoppingState& state, long t, const StoppingConfig& config);

} // namespace gppso
