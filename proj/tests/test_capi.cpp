#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "goodwinnet/goodwinnet.h"

namespace {

gw_params equal_b(double b, double p = 17.0) { return gw_params{b, b, b, p, 0.0, 0}; }

} // namespace

TEST_CASE("status strings and version") {
    CHECK(std::strcmp(gw_status_string(GW_OK), "ok") == 0);
    CHECK(gw_status_string(GW_ERR_DIVERGED) != nullptr);
    CHECK(gw_version() != nullptr);
}

TEST_CASE("null-pointer contract") {
    double r = 0.0;
    CHECK(gw_oscillation_index(nullptr, &r) == GW_ERR_NULL_POINTER);
    const gw_params g = equal_b(0.5);
    CHECK(gw_oscillation_index(&g, nullptr) == GW_ERR_NULL_POINTER);
    CHECK(gw_topology_table1(nullptr) == GW_ERR_NULL_POINTER);
    CHECK(gw_analyze(&g, nullptr, nullptr) == GW_ERR_NULL_POINTER);
}

TEST_CASE("nondimensionalize through the C API") {
    gw_dimensional_params d{1, 1, 1, 1, 1, 1, 8, 17};
    gw_params g{};
    REQUIRE(gw_nondimensionalize(&d, &g) == GW_OK);
    CHECK(g.b1 == doctest::Approx(2.0));
    CHECK(g.has_sigma_time == 1);
    CHECK(g.sigma_time == doctest::Approx(2.0));

    d.v0 = -1.0;
    CHECK(gw_nondimensionalize(&d, &g) == GW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("topology lifecycle and accessors") {
    gw_topology* t = nullptr;
    REQUIRE(gw_topology_table1(&t) == GW_OK);
    CHECK(gw_topology_size(t) == 9);
    CHECK(gw_topology_connected(t) == 1);

    std::vector<double> w(81), lap(81);
    REQUIRE(gw_topology_weights(t, w.data()) == GW_OK);
    REQUIRE(gw_topology_laplacian(t, lap.data()) == GW_OK);
    CHECK(w[1] == doctest::Approx(0.3));  // a_{1,2}
    for (int i = 0; i < 9; ++i) {
        double row = 0.0;
        for (int j = 0; j < 9; ++j) row += lap[static_cast<size_t>(i) * 9 + j];
        CHECK(std::abs(row) < 1e-12);
    }

    double rho = 0.0;
    REQUIRE(gw_topology_algebraic_connectivity(t, &rho) == GW_OK);
    CHECK(rho == doctest::Approx(2.398047290027636).epsilon(1e-10));

    gw_topology* scaled = nullptr;
    REQUIRE(gw_topology_scaled(t, 2.0, &scaled) == GW_OK);
    double rho2 = 0.0;
    REQUIRE(gw_topology_algebraic_connectivity(scaled, &rho2) == GW_OK);
    CHECK(rho2 == doctest::Approx(2.0 * rho).epsilon(1e-10));
    gw_topology_free(scaled);
    gw_topology_free(t);

    const double bad[] = {0, 1, 2, 0};  // asymmetric
    gw_topology* invalid = nullptr;
    CHECK(gw_topology_from_weights(2, bad, &invalid) == GW_ERR_INVALID_TOPOLOGY);
    CHECK(invalid == nullptr);
}

TEST_CASE("analysis report round-trip") {
    gw_topology* t = nullptr;
    REQUIRE(gw_topology_table1(&t) == GW_OK);
    const gw_params g = equal_b(0.5);

    gw_analysis_report rep{};
    REQUIRE(gw_analyze(&g, t, &rep) == GW_OK);
    CHECK(rep.r == doctest::Approx(1.8293174997).epsilon(1e-9));
    CHECK(rep.r_published == doctest::Approx(1.6541).epsilon(1e-3));
    CHECK(rep.oscillation_predicted == 1);
    CHECK(rep.sync_applicable == 1);
    CHECK(rep.sync_condition_met == 0);
    CHECK(rep.t_collective == doctest::Approx(7.2551974569).epsilon(1e-9));
    CHECK(rep.has_t_dimensional == 0);
    CHECK(rep.marginal_stability == 1);

    double w = 0.0, tc = 0.0;
    REQUIRE(gw_predict_period(&g, &w, &tc) == GW_OK);
    CHECK(tc == doctest::Approx(rep.t_collective));

    double gamma = 0.0;
    REQUIRE(gw_gamma_max_slope(17.0, &gamma) == GW_OK);
    CHECK(gamma == doctest::Approx(4.264739876534).epsilon(1e-9));
    CHECK(gw_gamma_max_slope(0.5, &gamma) == GW_ERR_INVALID_ARGUMENT);

    gw_topology_free(t);
}

TEST_CASE("simulation and measurements through the C API") {
    gw_topology* t = nullptr;
    REQUIRE(gw_topology_table1(&t) == GW_OK);
    const gw_params g = equal_b(0.6);
    gw_sim_config cfg{};
    gw_sim_config_default(&cfg);
    CHECK(cfg.dt == 0.01);
    CHECK(cfg.t_end == 500.0);
    CHECK(cfg.seed == 42);

    gw_trajectory* traj = nullptr;
    REQUIRE(gw_simulate(&g, t, &cfg, &traj) == GW_OK);
    CHECK(gw_trajectory_size(traj) == 9);
    CHECK(gw_trajectory_samples(traj) == 50001);
    CHECK(gw_trajectory_diverged(traj, nullptr) == 0);

    std::vector<double> times(gw_trajectory_samples(traj));
    REQUIRE(gw_trajectory_copy_times(traj, times.data()) == GW_OK);
    CHECK(times.front() == 0.0);
    CHECK(times.back() == doctest::Approx(500.0));

    gw_period_estimate pe{};
    REQUIRE(gw_estimate_period(traj, &cfg, &pe) == GW_OK);
    CHECK(std::abs(pe.period_mean - 6.31) / 6.31 < 0.02);

    double per_osc[9];
    REQUIRE(gw_estimate_period_per_oscillator(traj, &cfg, per_osc) == GW_OK);
    for (double p : per_osc) CHECK(std::abs(p - pe.period_mean) < 0.05);

    gw_sync_metric sm{};
    REQUIRE(gw_measure_sync(traj, &cfg, &sm) == GW_OK);
    CHECK(sm.is_synchronized == 1);

    int osc = 0;
    REQUIRE(gw_classify_oscillation(traj, &cfg, &g, &osc) == GW_OK);
    CHECK(osc == 1);
    gw_trajectory_free(traj);

    // a quiescent parameter set reports NOT_OSCILLATORY from the period call
    const gw_params quiet = equal_b(1.0);
    gw_trajectory* tq = nullptr;
    REQUIRE(gw_simulate(&quiet, t, &cfg, &tq) == GW_OK);
    CHECK(gw_estimate_period(tq, &cfg, &pe) == GW_ERR_NOT_OSCILLATORY);
    REQUIRE(gw_classify_oscillation(tq, &cfg, &quiet, &osc) == GW_OK);
    CHECK(osc == 0);
    gw_trajectory_free(tq);

    gw_topology_free(t);
}

TEST_CASE("custom initial state round-trips through gw_simulate_from") {
    gw_topology* t = nullptr;
    REQUIRE(gw_topology_single(&t) == GW_OK);
    const gw_params g = equal_b(0.5);
    gw_sim_config cfg{};
    gw_sim_config_default(&cfg);
    cfg.t_end = 50.0;

    double init[3] = {0.0, 0.0, 0.0};
    REQUIRE(gw_default_initial_state(&g, t, &cfg, init) == GW_OK);
    CHECK(init[0] > 0.0);

    gw_trajectory* traj = nullptr;
    REQUIRE(gw_simulate_from(&g, t, &cfg, init, &traj) == GW_OK);
    std::vector<double> states(gw_trajectory_samples(traj) * 3);
    REQUIRE(gw_trajectory_copy_states(traj, states.data()) == GW_OK);
    CHECK(states[0] == init[0]);
    CHECK(states[1] == init[1]);
    CHECK(states[2] == init[2]);
    gw_trajectory_free(traj);
    gw_topology_free(t);
}
