#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gppso/rng.hpp"

namespace gppso {

enum class ConstraintMode {
    none,     ///< unconstrained search
    cutoff,   ///< positions clipped onto the feasible box every step
    preserve, ///< infeasible positions banned from all memories
    penalty,  ///< conflicts inflated by an adaptive violation penalty
};

ConstraintMode parse_constraint_mode(std::string_view name);
std::string_view to_string(ConstraintMode mode);

/// Per-dimension interval bounds.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    void validate() const;
    bool contains(std::span<const double> x) const;
};

Box uniform_box(int dimension, double lo, double hi);

using ConstraintFn = std::function<double(std::span<const double>)>;

/// Feasibility is the conjunction of the box test, g(x) <= tol for every
/// inequality, and |g(x)| <= tol for every equality. An empty set makes
/// everything feasible. Equalities are carried in the data model but only
/// the penalty technique uses them.
struct ConstraintSet {
    std::optional<Box> box;
    std::vector<ConstraintFn> inequalities;
    std::vector<ConstraintFn> equalities;

    bool empty() const { return !box && inequalities.empty() && equalities.empty(); }
};

bool is_feasible(std::span<const double> x, const ConstraintSet& cs, double tol = 0.0);

/// Clips each component into the box; in-range components unchanged. The
/// velocity is left alone.
void cutoff_repair(std::span<double> x, const Box& box);

struct FeasibleSample {
    std::vector<double> position;
    int attempts = 0;
};

/// Rejection-samples a feasible point: positions drawn uniformly from the
/// sampling box (one draw per component, in component order) until one
/// satisfies the constraint set. Throws std::runtime_error naming the
/// attempt count when max_attempts is exhausted, which can happen when
/// the feasible region is small.
FeasibleSample feasible_initialize(Rng& rng, const Box& sampling_box,
                                   const ConstraintSet& cs, double tol, int max_attempts);

/// Violation measure per constraint: max{0, g(x)} for inequalities,
/// g(x) unchanged for equalities (squared downstream). Box bounds do not
/// contribute; express them as inequalities if they should.
std::vector<double> violation_measures(std::span<const double> x, const ConstraintSet& cs);

/// fp = f + lambda * sum_j violations_j^2. Zero violations leave the
/// conflict untouched.
double penalized_conflict(double f_value, std::span<const double> violations, double lambda);

/// Adaptive penalty multiplier with a sliding window of per-generation
/// "best particle was feasible" flags.
struct PenaltyState {
    double lambda = 1.0;
    double beta1 = 2.0; ///< shrink divisor when the window is all-feasible
    double beta2 = 3.0; ///< growth factor when the window is all-infeasible
    int lookback = 5;   ///< window length in generations
    std::deque<bool> history;

    void validate() const;
};

/// Pushes the flag and, once the window is full, rescales lambda:
/// all feasible -> lambda/beta1, none feasible -> beta2*lambda, mixed ->
/// unchanged.
void update_lambda(PenaltyState& state, bool best_was_feasible);

} // namespace gppso
