#include "goodwinnet/model.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace goodwinnet {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

void DimensionalParams::validate() const {
    require(positive_finite(v0) && positive_finite(v1) && positive_finite(v2),
            "dimensional params: v0, v1, v2 must be positive");
    require(positive_finite(k1) && positive_finite(k2) && positive_finite(k3),
            "dimensional params: k1, k2, k3 must be positive");
    require(positive_finite(km), "dimensional params: Km must be positive");
    require(std::isfinite(p) && p >= 1.0, "dimensional params: p must be >= 1");
}

void GoodwinParams::validate() const {
    require(positive_finite(b1) && positive_finite(b2) && positive_finite(b3),
            "params: b1, b2, b3 must be positive");
    require(std::isfinite(p) && p >= 1.0, "params: p must be >= 1");
    if (sigma_time) require(positive_finite(*sigma_time), "params: sigma_time must be positive");
}

GoodwinParams nondimensionalize(const DimensionalParams& d) {
    d.validate();
    const double sigma_time = std::cbrt(d.km / (d.v0 * d.v1 * d.v2));
    GoodwinParams g;
    g.b1 = d.k1 * sigma_time;
    g.b2 = d.k2 * sigma_time;
    g.b3 = d.k3 * sigma_time;
    g.p = d.p;
    g.sigma_time = sigma_time;
    return g;
}

double hill_repression(double x, double p) {
    if (!(x >= 0.0)) throw std::domain_error("hill_repression: x must be >= 0");
    return 1.0 / (1.0 + std::pow(x, p));
}

double hill_repression_slope(double x, double p) {
    if (!(x >= 0.0)) throw std::domain_error("hill_repression_slope: x must be >= 0");
    const double denom = 1.0 + std::pow(x, p);
    return -p * std::pow(x, p - 1.0) / (denom * denom);
}

CouplingTopology::CouplingTopology(int n, std::vector<double> weights)
    : n_(n), weights_(std::move(weights)) {
    require(n >= 1, "topology: need at least one oscillator");
    require(weights_.size() == static_cast<size_t>(n) * n,
            "topology: weight matrix must be n x n");
    for (int i = 0; i < n; ++i) {
        require(weights_[static_cast<size_t>(i) * n + i] == 0.0,
                "topology: diagonal weights must be zero");
        for (int j = 0; j < n; ++j) {
            const double w = weights_[static_cast<size_t>(i) * n + j];
            require(std::isfinite(w) && w >= 0.0, "topology: weights must be nonnegative");
            require(w == weights_[static_cast<size_t>(j) * n + i],
                    "topology: weights must be symmetric");
        }
    }

    laplacian_.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double degree = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double w = weight(i, j);
            degree += w;
            laplacian_[static_cast<size_t>(i) * n + j] = -w;
        }
        laplacian_[static_cast<size_t>(i) * n + i] = degree;
    }

    // breadth-first reachability over nonzero weights
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int i = frontier.front();
        frontier.pop();
        for (int j = 0; j < n; ++j) {
            if (!seen[j] && weight(i, j) > 0.0) {
                seen[j] = 1;
                ++reached;
                frontier.push(j);
            }
        }
    }
    connected_ = (reached == n);
}

CouplingTopology CouplingTopology::scaled(double factor) const {
    require(std::isfinite(factor) && factor > 0.0, "topology: scale factor must be positive");
    std::vector<double> w = weights_;
    for (double& v : w) v *= factor;
    return CouplingTopology(n_, std::move(w));
}

CouplingTopology table1_topology() {
    // clang-format off
    static const double w[81] = {
        0.0, 0.3, 0.5, 0.0, 0.6, 0.2, 0.0, 0.7, 0.8,
        0.3, 0.0, 0.7, 0.2, 0.1, 0.8, 0.3, 0.1, 0.5,
        0.5, 0.7, 0.0, 0.3, 0.6, 0.2, 0.6, 0.0, 0.8,
        0.0, 0.2, 0.3, 0.0, 0.4, 0.6, 0.2, 0.9, 0.1,
        0.6, 0.1, 0.6, 0.4, 0.0, 0.2, 0.7, 0.3, 0.8,
        0.2, 0.8, 0.2, 0.6, 0.2, 0.0, 0.1, 0.9, 0.3,
        0.0, 0.3, 0.6, 0.2, 0.7, 0.1, 0.0, 0.4, 0.5,
        0.7, 0.1, 0.0, 0.9, 0.3, 0.9, 0.4, 0.0, 0.8,
        0.8, 0.5, 0.8, 0.1, 0.8, 0.3, 0.5, 0.8, 0.0,
    };
    // clang-format on
    return CouplingTopology(9, std::vector<double>(w, w + 81));
}

CouplingTopology complete_topology(int n, double weight) {
    require(n >= 2, "complete topology: need n >= 2");
    require(std::isfinite(weight) && weight >= 0.0, "complete topology: weight must be >= 0");
    std::vector<double> w(static_cast<size_t>(n) * n, weight);
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i) * n + i] = 0.0;
    return CouplingTopology(n, std::move(w));
}

CouplingTopology ring_topology(int n, double weight) {
    require(n >= 3, "ring topology: need n >= 3");
    require(std::isfinite(weight) && weight >= 0.0, "ring topology: weight must be >= 0");
    std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        w[static_cast<size_t>(i) * n + j] = weight;
        w[static_cast<size_t>(j) * n + i] = weight;
    }
    return CouplingTopology(n, std::move(w));
}

CouplingTopology single_cell() { return CouplingTopology(1, {0.0}); }

NetworkState NetworkState::zero(int n) {
    NetworkState s;
    s.x1.assign(n, 0.0);
    s.x2.assign(n, 0.0);
    s.x3.assign(n, 0.0);
    return s;
}

NetworkState NetworkState::consensus(int n, double x1v, double x2v, double x3v) {
    NetworkState s;
    s.x1.assign(n, x1v);
    s.x2.assign(n, x2v);
    s.x3.assign(n, x3v);
    return s;
}

NetworkState vector_field(const NetworkState& s, const GoodwinParams& g,
                          const CouplingTopology& c) {
    g.validate();
    const int n = c.size();
    require(s.size() == n && static_cast<int>(s.x2.size()) == n &&
                static_cast<int>(s.x3.size()) == n,
            "vector_field: state and topology dimensions disagree");

    NetworkState d = NetworkState::zero(n);
    for (int i = 0; i < n; ++i) {
        const double x3 = std::max(s.x3[i], 0.0);
        d.x1[i] = hill_repression(x3, g.p) - g.b1 * s.x1[i];
        double coupling = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            coupling += c.weight(i, j) * (s.x2[i] - s.x2[j]);
        }
        d.x2[i] = s.x1[i] - g.b2 * s.x2[i] - coupling;
        d.x3[i] = s.x2[i] - g.b3 * s.x3[i];
    }
    return d;
}

} // namespace goodwinnet
