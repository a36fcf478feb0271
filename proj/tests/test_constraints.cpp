#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "gppso/constraints.hpp"

using namespace gppso;

TEST_CASE("is_feasible: empty set accepts everything") {
    const ConstraintSet cs;
    CHECK(is_feasible(std::vector<double>{1e9, -1e9}, cs));
}

TEST_CASE("is_feasible: box membership") {
    ConstraintSet cs;
    cs.box = uniform_box(2, 50.0, 250.0);
    CHECK(is_feasible(std::vector<double>{100.0, 100.0}, cs));
    CHECK_FALSE(is_feasible(std::vector<double>{0.0, 0.0}, cs));
    // boundary counts as inside
    CHECK(is_feasible(std::vector<double>{50.0, 250.0}, cs));
}

TEST_CASE("is_feasible: inequality boundary counts as feasible") {
    ConstraintSet cs;
    cs.inequalities.push_back([](std::span<const double> x) { return x[0] - 1.0; });
    CHECK(is_feasible(std::vector<double>{1.0, 0.0}, cs, 0.0));
    CHECK_FALSE(is_feasible(std::vector<double>{1.1, 0.0}, cs, 0.0));
    CHECK(is_feasible(std::vector<double>{1.1, 0.0}, cs, 0.2));
}

TEST_CASE("is_feasible: equalities use absolute tolerance") {
    ConstraintSet cs;
    cs.equalities.push_back([](std::span<const double> x) { return x[0] + x[1]; });
    CHECK(is_feasible(std::vector<double>{2.0, -2.0}, cs, 0.0));
    CHECK_FALSE(is_feasible(std::vector<double>{2.0, -1.5}, cs, 0.1));
    CHECK(is_feasible(std::vector<double>{2.0, -1.95}, cs, 0.1));
}

TEST_CASE("cutoff_repair: clips componentwise, leaves in-range untouched") {
    const Box box = uniform_box(2, 50.0, 250.0);
    std::vector<double> x{300.0, 100.0};
    cutoff_repair(std::span<double>(x), box);
    CHECK(x == std::vector<double>{250.0, 100.0});

    std::vector<double> y{-10.0, 260.0};
    cutoff_repair(std::span<double>(y), box);
    CHECK(y == std::vector<double>{50.0, 250.0});
}

TEST_CASE("cutoff_repair: containment and idempotence") {
    const Box box = uniform_box(3, -2.0, 7.0);
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(3);
        for (double& xi : x) xi = rng.uniform(-50.0, 50.0);
        cutoff_repair(std::span<double>(x), box);
        CHECK(box.contains(x));
        std::vector<double> again = x;
        cutoff_repair(std::span<double>(again), box);
        CHECK(again == x);
    }
}

TEST_CASE("feasible_initialize: trivial set returns the first sample") {
    Rng rng(9);
    const Box box = uniform_box(2, -100.0, 100.0);
    const ConstraintSet cs;
    const auto sample = feasible_initialize(rng, box, cs, 0.0, 100);
    CHECK(sample.attempts == 1);
    CHECK(box.contains(sample.position));
}

TEST_CASE("feasible_initialize: rejection sampling is seed-reproducible") {
    ConstraintSet cs;
    cs.box = uniform_box(2, 50.0, 250.0);
    const Box sampling = uniform_box(2, 0.0, 300.0);

    Rng rng_a(1234);
    const auto a = feasible_initialize(rng_a, sampling, cs, 0.0, 1000);
    Rng rng_b(1234);
    const auto b = feasible_initialize(rng_b, sampling, cs, 0.0, 1000);
    CHECK(a.attempts == b.attempts);
    CHECK(a.position == b.position);
    CHECK(is_feasible(a.position, cs));
}

TEST_CASE("feasible_initialize: exhaustion names the attempt count") {
    Rng rng(1);
    const Box box = uniform_box(1, 0.0, 1.0);
    ConstraintSet cs;
    cs.inequalities.push_back([](std::span<const double>) { return 1.0; });
    try {
        feasible_initialize(rng, box, cs, 0.0, 100);
        FAIL("expected an initialization failure");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("100") != std::string::npos);
    }
}

TEST_CASE("violation_measures: clamped inequalities, signed equalities") {
    ConstraintSet cs;
    cs.inequalities.push_back([](std::span<const double>) { return -1.0; });
    cs.inequalities.push_back([](std::span<const double>) { return 2.0; });
    cs.equalities.push_back([](std::span<const double>) { return -3.0; });
    const auto v = violation_measures(std::vector<double>{0.0}, cs);
    CHECK(v == std::vector<double>{0.0, 2.0, -3.0});
}

TEST_CASE("penalized_conflict: neutrality and hand values") {
    const std::vector<double> none;
    CHECK(penalized_conflict(3.75, none, 2.0) == 3.75);
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(penalized_conflict(3.75, zeros, 2.0) == 3.75);

    const std::vector<double> one{3.0};
    CHECK(penalized_conflict(1.0, one, 2.0) == 19.0);

    const std::vector<double> two{1.0, -2.0};
    CHECK(penalized_conflict(0.0, two, 5.0) == 25.0);

    CHECK_THROWS_AS(penalized_conflict(0.0, one, 0.0), std::invalid_argument);
}

TEST_CASE("update_lambda: the three update cases") {
    PenaltyState state;
    state.lambda = 6.0;
    state.beta1 = 2.0;
    state.beta2 = 3.0;
    state.lookback = 3;

    SUBCASE("always feasible halves lambda") {
        update_lambda(state, true);
        CHECK(state.lambda == 6.0); // window not full yet
        update_lambda(state, true);
        CHECK(state.lambda == 6.0);
        update_lambda(state, true);
        CHECK(state.lambda == 3.0);
    }
    SUBCASE("never feasible scales lambda up") {
        update_lambda(state, false);
        update_lambda(state, false);
        update_lambda(state, false);
        CHECK(state.lambda == 18.0);
    }
    SUBCASE("mixed window leaves lambda alone") {
        update_lambda(state, true);
        update_lambda(state, false);
        update_lambda(state, true);
        CHECK(state.lambda == 6.0);
    }
}

TEST_CASE("update_lambda: window slides over the last k flags") {
    PenaltyState state;
    state.lambda = 8.0;
    state.beta1 = 2.0;
    state.beta2 = 3.0;
    state.lookback = 2;
    update_lambda(state, false);
    update_lambda(state, true); // mixed
    CHECK(state.lambda == 8.0);
    update_lambda(state, true); // window now {true,true}
    CHECK(state.lambda == 4.0);
}

TEST_CASE("update_lambda: lambda stays positive under any sequence") {
    Rng rng(17);
    PenaltyState state;
    state.lookback = 4;
    for (int i = 0; i < 2000; ++i) {
        update_lambda(state, rng.uniform01() < 0.5);
        CHECK(state.lambda > 0.0);
    }
}

TEST_CASE("penalty state validation") {
    PenaltyState state;
    state.beta1 = 1.0;
    CHECK_THROWS_AS(state.validate(), std::invalid_argument);
    state.beta1 = 3.0;
    state.beta2 = 3.0;
    CHECK_THROWS_AS(state.validate(), std::invalid_argument);
    state.beta2 = 2.0;
    state.lambda = 0.0;
    CHECK_THROWS_AS(state.validate(), std::invalid_argument);
}
