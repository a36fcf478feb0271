#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace gppso {

// Anything that hands out uniform draws on [0,1). Lets tests pin the
// stream while the engine uses the real generator.
template <typename R>
concept UniformSource = requires(R& r) {
    { r.uniform01() } -> std::convertible_to<double>;
};

/// Seedable random source used throughout the engine.
///
/// Draws are produced from a Mersenne Twister (mt19937_64) mapped to
/// doubles on [0,1) via the top 53 bits, so a given seed yields the same
/// stream on every platform. All stochastic code consumes draws from one
/// stream per run; the consumption order is documented where it matters
/// (see engine.hpp) so runs are reproducible bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw on [0,1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform draw on [lo,hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 gen_;
};

static_assert(UniformSource<Rng>);

} // namespace gppso
