#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "goodwinnet/analysis.hpp"
#include "goodwinnet/model.hpp"
#include "goodwinnet/simulation.hpp"

using namespace goodwinnet;

TEST_CASE("nondimensionalize: unit scales") {
    DimensionalParams d{1, 1, 1, 1, 1, 1, 1, 2};
    const GoodwinParams g = nondimensionalize(d);
    CHECK(g.b1 == doctest::Approx(1.0));
    CHECK(g.b2 == doctest::Approx(1.0));
    CHECK(g.b3 == doctest::Approx(1.0));
    CHECK(g.p == 2.0);
    REQUIRE(g.sigma_time.has_value());
    CHECK(*g.sigma_time == doctest::Approx(1.0));
}

TEST_CASE("nondimensionalize: cube-root scaling") {
    // sigma = (Km/(v0 v1 v2))^(1/3)
    DimensionalParams d{8, 1, 1, 2, 2, 2, 1, 2};
    const GoodwinParams g = nondimensionalize(d);
    CHECK(*g.sigma_time == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.b1 == doctest::Approx(1.0).epsilon(1e-12));

    DimensionalParams d2{1, 1, 1, 1, 1, 1, 8, 17};
    const GoodwinParams g2 = nondimensionalize(d2);
    CHECK(*g2.sigma_time == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g2.b1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g2.b2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g2.b3 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("nondimensionalize: rejects nonpositive fields") {
    DimensionalParams d{1, 1, 1, 1, 1, 1, 1, 2};
    d.v1 = 0.0;
    CHECK_THROWS_AS(nondimensionalize(d), std::invalid_argument);
    d.v1 = 1.0;
    d.km = -2.0;
    CHECK_THROWS_AS(nondimensionalize(d), std::invalid_argument);
}

TEST_CASE("hill repression: anchor values and monotonicity") {
    for (double p : {1.0, 2.0, 17.0}) {
        CHECK(hill_repression(0.0, p) == doctest::Approx(1.0));
        CHECK(hill_repression(1.0, p) == doctest::Approx(0.5));
    }
    CHECK(hill_repression_slope(1.0, 2.0) == doctest::Approx(-0.5));

    for (double p : {1.0, 3.5, 17.0}) {
        // below x ~ 0.1 with large p, x^p underflows and f plateaus at 1.0 in
        // doubles, so strict decrease is only checkable away from zero
        double prev = hill_repression(0.5, p);
        for (double x = 0.6; x < 5.0; x += 0.1) {
            const double cur = hill_repression(x, p);
            CHECK(cur < prev);
            CHECK(hill_repression_slope(x, p) < 0.0);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(hill_repression(-0.5, 2.0), std::domain_error);
}

TEST_CASE("vector field: vanishes at the single-cell equilibrium") {
    GoodwinParams g{0.5, 0.5, 0.5, 17.0, {}};
    const EquilibriumPoint e = solve_equilibrium(g);
    const CouplingTopology c = single_cell();
    NetworkState s = NetworkState::consensus(1, e.x1_star, e.x2_star, e.x0);
    const NetworkState d = vector_field(s, g, c);
    CHECK(std::abs(d.x1[0]) < 1e-12);
    CHECK(std::abs(d.x2[0]) < 1e-12);
    CHECK(std::abs(d.x3[0]) < 1e-12);
}

TEST_CASE("vector field: coupling vanishes at consensus") {
    GoodwinParams g{1, 1, 1, 2, {}};
    const CouplingTopology pair(2, {0, 1, 1, 0});
    NetworkState s = NetworkState::consensus(2, 0.3, 0.7, 0.2);
    const NetworkState coupled = vector_field(s, g, pair);

    const CouplingTopology solo = single_cell();
    NetworkState s1 = NetworkState::consensus(1, 0.3, 0.7, 0.2);
    const NetworkState uncoupled = vector_field(s1, g, solo);
    for (int i = 0; i < 2; ++i) {
        CHECK(coupled.x1[i] == doctest::Approx(uncoupled.x1[0]));
        CHECK(coupled.x2[i] == doctest::Approx(uncoupled.x2[0]));
        CHECK(coupled.x3[i] == doctest::Approx(uncoupled.x3[0]));
    }
}

TEST_CASE("vector field: hand-evaluated two-node coupling") {
    GoodwinParams g{1, 1, 1, 2, {}};
    const CouplingTopology pair(2, {0, 1, 1, 0});
    NetworkState s = NetworkState::zero(2);
    s.x2 = {1.0, 0.0};
    const NetworkState d = vector_field(s, g, pair);
    // dx2_i = x1_i - b2 x2_i - a12 (x2_i - x2_j)
    CHECK(d.x2[0] == doctest::Approx(-2.0));
    CHECK(d.x2[1] == doctest::Approx(1.0));
}

TEST_CASE("vector field: dimension mismatch is rejected") {
    GoodwinParams g{1, 1, 1, 2, {}};
    const CouplingTopology pair(2, {0, 1, 1, 0});
    NetworkState s = NetworkState::zero(3);
    CHECK_THROWS_AS(vector_field(s, g, pair), std::invalid_argument);
}

TEST_CASE("laplacian: small examples") {
    const CouplingTopology pair(2, {0, 1, 1, 0});
    const std::vector<double> expected2{1, -1, -1, 1};
    for (size_t k = 0; k < 4; ++k) CHECK(pair.laplacian()[k] == doctest::Approx(expected2[k]));
    CHECK(pair.connected());

    const CouplingTopology path(3, {0, 1, 0, 1, 0, 1, 0, 1, 0});
    const std::vector<double> expected3{1, -1, 0, -1, 2, -1, 0, -1, 1};
    for (size_t k = 0; k < 9; ++k) CHECK(path.laplacian()[k] == doctest::Approx(expected3[k]));
    CHECK(path.connected());
}

TEST_CASE("laplacian: row sums vanish and table1 is connected") {
    const CouplingTopology t = table1_topology();
    REQUIRE(t.size() == 9);
    CHECK(t.connected());
    for (int i = 0; i < 9; ++i) {
        double row = 0.0;
        for (int j = 0; j < 9; ++j) row += t.laplacian()[static_cast<size_t>(i) * 9 + j];
        CHECK(std::abs(row) < 1e-12);
    }
}

TEST_CASE("topology validation") {
    CHECK_THROWS_AS(CouplingTopology(2, {0, 1, 2, 0}), std::invalid_argument);  // asymmetric
    CHECK_THROWS_AS(CouplingTopology(2, {0, -1, -1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(CouplingTopology(2, {1, 0, 0, 1}), std::invalid_argument);  // diagonal
    CHECK_THROWS_AS(CouplingTopology(2, {0, 1, 1}), std::invalid_argument);     // not square

    const CouplingTopology disconnected(4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    CHECK_FALSE(disconnected.connected());
}

TEST_CASE("builders: complete and ring") {
    const CouplingTopology k3 = complete_topology(3, 2.0);
    CHECK(k3.weight(0, 1) == 2.0);
    CHECK(k3.weight(0, 0) == 0.0);
    CHECK(k3.connected());

    const CouplingTopology ring = ring_topology(5, 1.0);
    CHECK(ring.weight(0, 1) == 1.0);
    CHECK(ring.weight(0, 4) == 1.0);
    CHECK(ring.weight(0, 2) == 0.0);
    CHECK(ring.connected());

    const CouplingTopology doubled = ring.scaled(2.0);
    CHECK(doubled.weight(0, 1) == 2.0);
    CHECK_THROWS_AS(ring.scaled(-1.0), std::invalid_argument);
}

namespace {

// Test-local RK4 on the dimensional form
//   dX1/dT = v0/(1+(X3/Km)^p) - k1 X1, dX2/dT = v1 X1 - k2 X2,
//   dX3/dT = v2 X2 - k3 X3,
// used to confirm the change of variables behind nondimensionalize.
std::vector<std::vector<double>> integrate_dimensional(const DimensionalParams& d,
                                                       std::vector<double> y, double dt,
                                                       int steps) {
    auto f = [&](const std::vector<double>& s) {
        return std::vector<double>{
            d.v0 / (1.0 + std::pow(std::max(s[2], 0.0) / d.km, d.p)) - d.k1 * s[0],
            d.v1 * s[0] - d.k2 * s[1], d.v2 * s[1] - d.k3 * s[2]};
    };
    std::vector<std::vector<double>> out{y};
    for (int s = 0; s < steps; ++s) {
        const auto k1 = f(y);
        std::vector<double> t(3);
        for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * dt * k1[i];
        const auto k2 = f(t);
        for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * dt * k2[i];
        const auto k3 = f(t);
        for (int i = 0; i < 3; ++i) t[i] = y[i] + dt * k3[i];
        const auto k4 = f(t);
        for (int i = 0; i < 3; ++i) y[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        out.push_back(y);
    }
    return out;
}

} // namespace

TEST_CASE("nondimensionalization matches a rescaled dimensional simulation") {
    // X1 = c1 x1, X2 = c2 x2, X3 = c3 x3 with t = T/varsigma and
    // c1 = Km/(varsigma^2 v1 v2), c2 = Km/(varsigma v2), c3 = Km.
    DimensionalParams d{2.0, 0.5, 1.5, 0.8, 1.1, 0.9, 2.0, 4.0};
    const GoodwinParams g = nondimensionalize(d);
    const double vs = *g.sigma_time;

    const double c1 = d.km / (vs * vs * d.v1 * d.v2);
    const double c2 = d.km / (vs * d.v2);
    const double c3 = d.km;

    NetworkState init = NetworkState::zero(1);
    init.x1 = {0.2};
    init.x2 = {0.4};
    init.x3 = {0.1};

    SimConfig cfg;
    cfg.dt = 0.001;
    cfg.t_end = 20.0;
    const Trajectory dimless = integrate(g, single_cell(), init, cfg);

    const int steps = static_cast<int>(cfg.t_end / cfg.dt);
    const auto dim = integrate_dimensional(d, {0.2 * c1, 0.4 * c2, 0.1 * c3}, cfg.dt * vs, steps);

    double worst = 0.0;
    for (int k = 0; k <= steps; k += 100) {
        worst = std::max(worst, std::abs(dimless.state(k, 0, 0) - dim[k][0] / c1));
        worst = std::max(worst, std::abs(dimless.state(k, 1, 0) - dim[k][1] / c2));
        worst = std::max(worst, std::abs(dimless.state(k, 2, 0) - dim[k][2] / c3));
    }
    CHECK(worst < 1e-6);
}
