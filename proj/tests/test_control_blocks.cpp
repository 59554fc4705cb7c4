#include <doctest.h>

#include "pvfreq/control_blocks.hpp"
#include "pvfreq/error.hpp"

#include <cmath>
#include <random>

using namespace pvfreq;

TEST_CASE("deadband examples") {
    const Deadband db{0.0006};
    CHECK(deadband_apply(db, 0.0003) == 0.0);
    CHECK(deadband_apply(db, 0.0006) == 0.0);
    CHECK(deadband_apply(db, -0.002) == doctest::Approx(-0.0014).epsilon(1e-12));
}

TEST_CASE("deadband is odd and continuous") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-0.01, 0.01);
    std::uniform_real_distribution<double> w(0.0, 0.003);
    for (int i = 0; i < 2000; ++i) {
        const Deadband db{w(rng)};
        const double x = u(rng);
        CHECK(db.apply(-x) == -db.apply(x));
        // Offset style: bounded slope of 1 everywhere, so no jump at the edge.
        const double h = 1e-9;
        CHECK(std::abs(db.apply(x + h) - db.apply(x)) <= h * (1 + 1e-6));
    }
    CHECK_THROWS_AS(Deadband{-1e-4}.validate(), ValidationError);
}

TEST_CASE("lag step examples") {
    FirstOrderLag lag(1.0);
    CHECK(lag_step(lag, 1.0, 0.1) == doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-12));
    CHECK(lag.value() == doctest::Approx(0.0951626).epsilon(1e-6));

    FirstOrderLag fixed(0.3, 0.5);
    for (double dt : {0.0, 0.01, 1.0, 100.0}) {
        CHECK(fixed.step(0.5, dt) == 0.5);
    }

    FirstOrderLag fast(0.001);
    CHECK(std::abs(fast.step(1.0, 1.0) - 1.0) < 1e-9);

    CHECK_THROWS_AS(FirstOrderLag(0.0), ValidationError);
    CHECK_THROWS_AS(FirstOrderLag(-1.0), ValidationError);
}

TEST_CASE("lag discretization is exact for constant input") {
    const double y0 = -0.3;
    const double u = 0.7;
    const double T = 0.25;
    const double dt = 0.01;
    FirstOrderLag lag(T, y0);
    for (int n = 1; n <= 500; ++n) {
        lag.step(u, dt);
        const double expected = std::abs(y0 - u) * std::exp(-n * dt / T);
        CHECK(std::abs(std::abs(lag.value() - u) - expected) < 1e-12);
        CHECK(lag.value() >= y0);
        CHECK(lag.value() <= u);
    }
}

TEST_CASE("washout of a constant") {
    Washout w(0.1, 0.4);
    CHECK(w.step(0.4, 0.01) == 0.0);

    Washout fresh(0.1);
    const double dt = 0.005;
    double y = 0.0;
    for (int i = 0; i < static_cast<int>(30 * 0.1 / dt); ++i) {
        y = fresh.step(1.0, dt);
    }
    CHECK(std::abs(y) < 1e-9);
}

TEST_CASE("washout step response decays as (1/T) e^(-t/T)") {
    Washout w(0.1);
    CHECK(w.output(1.0) == doctest::Approx(10.0));
    const double dt = 0.01;
    for (int k = 1; k <= 50; ++k) {
        const double y = w.step(1.0, dt);
        CHECK(y == doctest::Approx(10.0 * std::exp(-k * dt / 0.1)).epsilon(1e-10));
    }
}

TEST_CASE("washout tracks a ramp slope") {
    const double m = -0.00833;
    const double T = 0.1;
    const double dt = 0.001;
    Washout w(T);
    double y = 0.0;
    const int n = static_cast<int>(10 * T / dt) + 200;
    for (int k = 0; k <= n; ++k) {
        y = w.step(m * k * dt, dt);
    }
    CHECK(y == doctest::Approx(m).epsilon(0.01));
}

TEST_CASE("limit examples") {
    const LimitSpec lim{0.1, -0.9, std::nullopt};
    CHECK(limit_apply(lim, 0.05, 0.0, 0.1) == 0.05);
    CHECK(limit_apply(lim, 0.15, 0.0, 0.1) == 0.1);

    const LimitSpec slew{1.0, -1.0, 0.5};
    CHECK(limit_apply(slew, 0.2, 0.0, 0.1) == doctest::Approx(0.05));

    CHECK_THROWS_AS((LimitSpec{-1.0, 1.0, std::nullopt}.validate()), ValidationError);
    CHECK_THROWS_AS((LimitSpec{1.0, -1.0, 0.0}.validate()), ValidationError);
}

TEST_CASE("limit properties") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> r(0.01, 5.0);
    for (int i = 0; i < 2000; ++i) {
        double a = u(rng);
        double b = u(rng);
        const LimitSpec lim{std::max(a, b), std::min(a, b), r(rng)};
        const double dt = 0.01;
        const double prev = lim.clamp(u(rng));
        const double out = lim.apply(u(rng), prev, dt);
        CHECK(out >= lim.down_limit);
        CHECK(out <= lim.up_limit);
        CHECK(std::abs(out - prev) <= *lim.rate_limit * dt + 1e-15);

        const LimitSpec window{lim.up_limit, lim.down_limit, std::nullopt};
        const double feasible = window.clamp(u(rng));
        CHECK(window.apply(feasible, 0.0, dt) == feasible);
        const double once = window.apply(u(rng), 0.0, dt);
        CHECK(window.apply(once, 0.0, dt) == once);
    }
}
