#include "gppso/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gppso {

namespace {
constexpr double kDegenerateSpread = 1e-300;
}

void StoppingConfig::validate() const {
    if (t_max < 1) throw std::invalid_argument("stopping: t_max must be >= 1");
    if (!(min_fraction > 0.0) || !(min_fraction < 1.0)) {
        throw std::invalid_argument("stopping: min_fraction must lie in (0,1)");
    }
    if (!(stall_fraction > 0.0) || !(stall_fraction < 1.0)) {
        throw std::invalid_argument("stopping: stall_fraction must lie in (0,1)");
    }
    if (window < 1) throw std::invalid_argument("stopping: window must be >= 1");
    for (double th : {max_rel_c_me, max_rel_p_mse, max_rel_p_cg_gbest, max_rel_c_cav,
                      max_rel_c_cgbest, max_rel_p_cg, max_rel_p_gbest}) {
        if (!(th > 0.0)) throw std::invalid_argument("stopping: thresholds must be > 0");
    }
}

StoppingState::StoppingState(int window, std::vector<double> dimension_ranges)
    : window_(window),
      ranges_(std::move(dimension_ranges)),
      cgbest_(std::numeric_limits<double>::infinity()),
      cgworst_(-std::numeric_limits<double>::infinity()) {
    if (window_ < 1) throw std::invalid_argument("stopping state: window must be >= 1");
    if (ranges_.empty()) throw std::invalid_argument("stopping state: no dimension ranges");
    for (double r : ranges_) {
        if (!(r > 0.0)) throw std::invalid_argument("stopping state: ranges must be > 0");
    }
    const std::size_t cap = static_cast<std::size_t>(window_) + 1;
    cbar_ring_.resize(cap);
    me_ring_.resize(cap);
    mse_ring_.resize(cap);
    cgg_ring_.resize(cap);
    cgstep_ring_.resize(cap);
    gbstep_ring_.resize(cap);
}

double& StoppingState::ring(std::vector<double>& buf, long t) const {
    return buf[static_cast<std::size_t>(t % (window_ + 1))];
}

double StoppingState::ring(const std::vector<double>& buf, long t) const {
    return buf[static_cast<std::size_t>(t % (window_ + 1))];
}

void StoppingState::record_step(const StepSnapshot& snapshot) {
    if (snapshot.t != last_t_ + 1) {
        throw std::invalid_argument("record_step: snapshots must arrive for consecutive t");
    }
    const std::size_t n = ranges_.size();
    if (snapshot.gbest.size() != n) {
        throw std::invalid_argument("record_step: gbest has wrong dimension");
    }
    for (const auto& pos : snapshot.cluster_positions) {
        if (pos.size() != n) {
            throw std::invalid_argument("record_step: cluster position has wrong dimension");
        }
    }
    if (last_t_ < 0) {
        cluster_size_ = snapshot.cluster_positions.size();
    } else if (snapshot.cluster_positions.size() != cluster_size_) {
        throw std::invalid_argument("record_step: clustering group size changed mid-run");
    }

    for (double c : snapshot.conflicts) {
        cgbest_ = std::min(cgbest_, c);
        cgworst_ = std::max(cgworst_, c);
    }

    const long t = snapshot.t;
    cgbest_history_.push_back(cgbest_);

    ring(cbar_ring_, t) = snapshot.cluster_mean_conflict;
    ring(me_ring_, t) = snapshot.cluster_mean_conflict - cgbest_;

    double spread = 0.0;
    std::vector<double> cg(n, 0.0);
    for (const auto& pos : snapshot.cluster_positions) {
        for (std::size_t k = 0; k < n; ++k) {
            const double d = (pos[k] - snapshot.gbest[k]) / ranges_[k];
            spread += d * d;
            cg[k] += pos[k];
        }
    }
    ring(mse_ring_, t) = std::sqrt(spread);

    if (!snapshot.cluster_positions.empty()) {
        for (double& c : cg) c /= static_cast<double>(snapshot.cluster_positions.size());
    }

    double cg_gbest = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = (cg[k] - snapshot.gbest[k]) / ranges_[k];
        cg_gbest += d * d;
    }
    ring(cgg_ring_, t) = std::sqrt(cg_gbest);

    if (t == 0) {
        ring(cgstep_ring_, t) = 0.0;
        ring(gbstep_ring_, t) = 0.0;
    } else {
        double cg_step = 0.0;
        double gb_step = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double dc = (cg[k] - prev_cg_[k]) / ranges_[k];
            const double dg = (snapshot.gbest[k] - prev_gbest_[k]) / ranges_[k];
            cg_step += dc * dc;
            gb_step += dg * dg;
        }
        ring(cgstep_ring_, t) = std::sqrt(cg_step);
        ring(gbstep_ring_, t) = std::sqrt(gb_step);
    }

    prev_cg_ = std::move(cg);
    prev_gbest_ = snapshot.gbest;
    last_t_ = t;
}

ErrorSnapshot StoppingState::relative_errors() const {
    if (!ready()) {
        throw std::logic_error("relative_errors: fewer than window+1 steps recorded");
    }
    const long t = last_t_;
    const long w = window_;
    const double n = static_cast<double>(ranges_.size());
    const double m = static_cast<double>(cluster_size_);

    double me_sum = 0.0;
    double mse_sum = 0.0;
    double cgg_sum = 0.0;
    double cgstep_sum = 0.0;
    double gbstep_sum = 0.0;
    for (long i = t - w + 1; i <= t; ++i) {
        me_sum += ring(me_ring_, i);
        mse_sum += ring(mse_ring_, i);
        cgg_sum += ring(cgg_ring_, i);
        cgstep_sum += ring(cgstep_ring_, i);
        gbstep_sum += ring(gbstep_ring_, i);
    }

    const double wd = static_cast<double>(w);
    ErrorSnapshot e;
    const double spread = cgworst_ - cgbest_;
    if (spread > kDegenerateSpread) {
        e.rel_c_me = me_sum / (wd * spread);
        e.rel_c_cav = std::abs(ring(cbar_ring_, t) - ring(cbar_ring_, t - w)) / (wd * spread);
        e.rel_c_cgbest =
            (cgbest_history_[static_cast<std::size_t>(t - w)] - cgbest_) / (wd * spread);
    }
    e.rel_p_mse = (m > 0.0) ? mse_sum / (wd * std::sqrt(m * n)) : 0.0;
    e.rel_p_cg_gbest = cgg_sum / (wd * std::sqrt(n));
    e.rel_p_cg = cgstep_sum / (wd * std::sqrt(n));
    e.rel_p_gbest = gbstep_sum / (wd * std::sqrt(n));
    return e;
}

bool set1_met(const ErrorSnapshot& snapshot, long t, const StoppingConfig& config) {
    if (static_cast<double>(t) < config.min_fraction * static_cast<double>(config.t_max)) {
        return false;
    }
    return snapshot.rel_c_me <= config.max_rel_c_me &&
           snapshot.rel_p_mse <= config.max_rel_p_mse &&
           snapshot.rel_p_cg_gbest <= config.max_rel_p_cg_gbest &&
           snapshot.rel_c_cav <= config.max_rel_c_cav &&
           snapshot.rel_c_cgbest <= config.max_rel_c_cgbest &&
           snapshot.rel_p_cg <= config.max_rel_p_cg &&
           snapshot.rel_p_gbest <= config.max_rel_p_gbest;
}

bool set2_met(const StoppingState& state, long t, const StoppingConfig& config) {
    const double stall_window = config.stall_fraction * static_cast<double>(config.t_max);
    if (static_cast<double>(t) <= stall_window) return false;
    const long lookback = static_cast<long>(std::floor(static_cast<double>(t) - stall_window));
    const auto& hist = state.cgbest_history();
    if (t > state.last_t() || lookback < 0) return false;
    return hist[static_cast<std::size_t>(lookback)] - hist[static_cast<std::size_t>(t)] == 0.0;
}

} // namespace gppso
