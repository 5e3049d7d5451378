#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "goodwinnet/analysis.hpp"
#include "goodwinnet/errors.hpp"
#include "goodwinnet/model.hpp"
#include "goodwinnet/simulation.hpp"

using namespace goodwinnet;

namespace {

GoodwinParams equal_b(double b, double p = 17.0) { return GoodwinParams{b, b, b, p, {}}; }

// Hand-built trajectory carrying an analytic signal, for exercising the
// measurement routines without an integration run.
Trajectory synthetic_signal(double dt, double t_end, double (*x3)(double)) {
    Trajectory traj;
    traj.n = 1;
    const int steps = static_cast<int>(t_end / dt);
    for (int k = 0; k <= steps; ++k) {
        const double t = k * dt;
        traj.times.push_back(t);
        traj.states.push_back(0.0);
        traj.states.push_back(0.0);
        traj.states.push_back(x3(t));
    }
    return traj;
}

} // namespace

TEST_CASE("sim config validation") {
    SimConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SimConfig{};
    cfg.t_end = cfg.dt * 5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SimConfig{};
    cfg.transient_fraction = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("integrate: equilibrium start stays constant") {
    const GoodwinParams g = equal_b(0.5);
    const EquilibriumPoint e = solve_equilibrium(g);
    const CouplingTopology topo = table1_topology();
    const NetworkState init = NetworkState::consensus(9, e.x1_star, e.x2_star, e.x0);

    SimConfig cfg;
    cfg.t_end = 100.0;
    const Trajectory traj = integrate(g, topo, init, cfg);
    REQUIRE_FALSE(traj.diverged_at.has_value());

    double drift = 0.0;
    const std::size_t last = traj.samples() - 1;
    for (int i = 0; i < 9; ++i) {
        drift = std::max(drift, std::abs(traj.state(last, 0, i) - e.x1_star));
        drift = std::max(drift, std::abs(traj.state(last, 1, i) - e.x2_star));
        drift = std::max(drift, std::abs(traj.state(last, 2, i) - e.x0));
    }
    CHECK(drift < 1e-10);
}

TEST_CASE("integrate: single quiescent cell settles") {
    const GoodwinParams g = equal_b(1.0);  // R < 1
    SimConfig cfg;
    const NetworkState init = default_initial_state(g, single_cell(), cfg);
    const Trajectory traj = integrate(g, single_cell(), init, cfg);

    // final-window peak-to-peak of x3
    double lo = 1e300, hi = -1e300;
    for (std::size_t k = traj.samples() * 9 / 10; k < traj.samples(); ++k) {
        lo = std::min(lo, traj.x3(k, 0));
        hi = std::max(hi, traj.x3(k, 0));
    }
    CHECK(hi - lo < 1e-4);
    CHECK(classify_oscillation(traj, cfg, g) == OscillationClass::Quiescent);
}

TEST_CASE("default initial state: determinism and perturbation contract") {
    const GoodwinParams g = equal_b(0.5);
    const CouplingTopology topo = table1_topology();
    SimConfig cfg;

    const NetworkState a = default_initial_state(g, topo, cfg);
    const NetworkState b = default_initial_state(g, topo, cfg);
    for (int i = 0; i < 9; ++i) {
        CHECK(a.x1[i] == b.x1[i]);
        CHECK(a.x2[i] == b.x2[i]);
        CHECK(a.x3[i] == b.x3[i]);
    }

    cfg.perturbation = 0.0;
    const NetworkState exact = default_initial_state(g, topo, cfg);
    const EquilibriumPoint e = solve_equilibrium(g);
    for (int i = 0; i < 9; ++i) {
        CHECK(exact.x1[i] == doctest::Approx(e.x1_star).epsilon(1e-14));
        CHECK(exact.x3[i] == doctest::Approx(e.x0).epsilon(1e-14));
    }
}

TEST_CASE("period estimate: synthetic sinusoids") {
    static const double period1 = 7.2552;
    Trajectory pure = synthetic_signal(0.01, 500.0, [](double t) {
        return std::sin(2.0 * std::acos(-1.0) * t / period1);
    });
    SimConfig cfg;
    const PeriodEstimate e1 = estimate_period(pure, cfg);
    CHECK(std::abs(e1.period_mean - period1) < 1e-3);
    CHECK(e1.n_cycles >= 25);

    // a second harmonic must not break fundamental detection
    Trajectory mixed = synthetic_signal(0.01, 500.0, [](double t) {
        const double pi = std::acos(-1.0);
        return 3.0 + 0.5 * std::sin(2.0 * pi * t / 5.0) + 0.05 * std::sin(4.0 * pi * t / 5.0);
    });
    const PeriodEstimate e2 = estimate_period(mixed, cfg);
    CHECK(std::abs(e2.period_mean - 5.0) < 5e-3);

    Trajectory flat = synthetic_signal(0.01, 500.0, [](double) { return 1.0; });
    CHECK_THROWS_AS(estimate_period(flat, cfg), NotOscillatoryError);
    CHECK(classify_oscillation(flat, cfg, equal_b(0.5)) == OscillationClass::Quiescent);
}

TEST_CASE("network simulation: benchmark period and sync") {
    const GoodwinParams g = equal_b(0.7);
    const CouplingTopology topo = table1_topology();
    SimConfig cfg;
    const Trajectory traj = integrate(g, topo, default_initial_state(g, topo, cfg), cfg);

    const PeriodEstimate period = estimate_period(traj, cfg);
    CHECK(std::abs(period.period_mean - 5.23) / 5.23 < 0.02);
    CHECK(period.n_cycles >= 3);
    CHECK(period.period_std < 0.01);

    const SyncMetric sync = measure_sync(traj, cfg);
    CHECK(sync.is_synchronized);
    CHECK(classify_oscillation(traj, cfg, g) == OscillationClass::Oscillatory);

    // nonnegativity before clamping
    CHECK(traj.min_unclamped > -1e-9);
}

TEST_CASE("oscillation verdicts at the benchmark boundary") {
    const CouplingTopology topo = table1_topology();
    SimConfig cfg;

    const GoodwinParams osc = equal_b(0.8);
    const Trajectory t1 = integrate(osc, topo, default_initial_state(osc, topo, cfg), cfg);
    CHECK(classify_oscillation(t1, cfg, osc) == OscillationClass::Oscillatory);

    const GoodwinParams quiet = equal_b(0.85);
    const Trajectory t2 = integrate(quiet, topo, default_initial_state(quiet, topo, cfg), cfg);
    CHECK(classify_oscillation(t2, cfg, quiet) == OscillationClass::Quiescent);
}

TEST_CASE("seed independence of the limit-cycle period") {
    const GoodwinParams g = equal_b(0.5);
    const CouplingTopology topo = table1_topology();
    SimConfig cfg;
    cfg.seed = 1;
    const Trajectory t1 = integrate(g, topo, default_initial_state(g, topo, cfg), cfg);
    const double p1 = estimate_period(t1, cfg).period_mean;
    cfg.seed = 2;
    const Trajectory t2 = integrate(g, topo, default_initial_state(g, topo, cfg), cfg);
    const double p2 = estimate_period(t2, cfg).period_mean;
    CHECK(std::abs(p1 - p2) / p1 < 0.005);
}

TEST_CASE("symmetry preservation: identical nodes stay synchronized") {
    const GoodwinParams g = equal_b(0.5);
    const CouplingTopology topo = table1_topology();
    const EquilibriumPoint e = solve_equilibrium(g);
    const NetworkState init =
        NetworkState::consensus(9, e.x1_star * 1.3, e.x2_star * 0.8, e.x0 * 1.1);
    SimConfig cfg;
    const Trajectory traj = integrate(g, topo, init, cfg);
    const SyncMetric sync = measure_sync(traj, cfg);
    CHECK(sync.sync_error < 1e-10);
    CHECK(sync.is_synchronized);
}

TEST_CASE("uncoupled oscillators from different phases do not synchronize") {
    const GoodwinParams g = equal_b(0.5);
    const CouplingTopology uncoupled(2, {0, 0, 0, 0});
    SimConfig cfg;
    const NetworkState init = default_initial_state(g, uncoupled, cfg);
    const Trajectory traj = integrate(g, uncoupled, init, cfg);
    const SyncMetric sync = measure_sync(traj, cfg);
    CHECK_FALSE(sync.is_synchronized);
    CHECK(sync.sync_error > 0.01);
}

TEST_CASE("step-size robustness") {
    const GoodwinParams g = equal_b(0.5);
    const CouplingTopology topo = table1_topology();
    SimConfig coarse;
    coarse.t_end = 200.0;
    const NetworkState init = default_initial_state(g, topo, coarse);
    const Trajectory t1 = integrate(g, topo, init, coarse);

    SimConfig fine = coarse;
    fine.dt = coarse.dt / 2.0;
    const Trajectory t2 = integrate(g, topo, init, fine);

    // sup-norm over matched grid points
    double worst = 0.0;
    for (std::size_t k = 0; k < t1.samples(); ++k)
        for (int comp = 0; comp < 3; ++comp)
            for (int i = 0; i < 9; ++i)
                worst = std::max(worst,
                                 std::abs(t1.state(k, comp, i) - t2.state(2 * k, comp, i)));
    CHECK(worst < 1e-6);

    const double p1 = estimate_period(t1, coarse).period_mean;
    const double p2 = estimate_period(t2, fine).period_mean;
    CHECK(std::abs(p1 - p2) / p1 < 1e-3);
}

TEST_CASE("coupling scale leaves the period unchanged") {
    const GoodwinParams g = equal_b(0.5);
    const CouplingTopology base = table1_topology();
    SimConfig cfg;
    std::vector<double> periods;
    for (double scale : {0.5, 1.0, 2.0, 5.0}) {
        const CouplingTopology topo = base.scaled(scale);
        const Trajectory traj = integrate(g, topo, default_initial_state(g, topo, cfg), cfg);
        periods.push_back(estimate_period(traj, cfg).period_mean);
    }
    for (double p : periods) CHECK(std::abs(p - periods[0]) / periods[0] < 0.01);
}

TEST_CASE("measured period decreases with the degradation rate") {
    const CouplingTopology topo = table1_topology();
    SimConfig cfg;
    double prev = 1e300;
    for (double b : {0.4, 0.5, 0.6, 0.7, 0.8}) {
        const GoodwinParams g = equal_b(b);
        const Trajectory traj = integrate(g, topo, default_initial_state(g, topo, cfg), cfg);
        const double period = estimate_period(traj, cfg).period_mean;
        CHECK(period < prev);
        prev = period;
    }
}
