#include "goodwinnet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "goodwinnet/analysis.hpp"
#include "goodwinnet/errors.hpp"

namespace goodwinnet {

void SimConfig::validate() const {
    if (!(std::isfinite(dt) && dt > 0.0)) throw std::invalid_argument("sim: dt must be > 0");
    if (!(std::isfinite(t_end) && t_end > 10.0 * dt))
        throw std::invalid_argument("sim: t_end must exceed 10*dt");
    if (!(transient_fraction >= 0.0 && transient_fraction < 1.0))
        throw std::invalid_argument("sim: transient_fraction must be in [0, 1)");
    if (!(std::isfinite(perturbation) && perturbation >= 0.0))
        throw std::invalid_argument("sim: perturbation must be >= 0");
}

NetworkState Trajectory::state_at(std::size_t sample) const {
    NetworkState s = NetworkState::zero(n);
    for (int i = 0; i < n; ++i) {
        s.x1[i] = state(sample, 0, i);
        s.x2[i] = state(sample, 1, i);
        s.x3[i] = state(sample, 2, i);
    }
    return s;
}

NetworkState default_initial_state(const GoodwinParams& g, const CouplingTopology& c,
                                   const SimConfig& cfg) {
    cfg.validate();
    const EquilibriumPoint e = solve_equilibrium(g);
    const int n = c.size();

    std::mt19937_64 rng(cfg.seed);
    // explicit 53-bit mapping so the draw sequence is platform-independent
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto offset = [&]() { return -cfg.perturbation + 2.0 * cfg.perturbation * uniform(); };

    NetworkState s = NetworkState::zero(n);
    for (int i = 0; i < n; ++i) s.x1[i] = e.x1_star * (1.0 + offset());
    for (int i = 0; i < n; ++i) s.x2[i] = e.x2_star * (1.0 + offset());
    for (int i = 0; i < n; ++i) s.x3[i] = e.x0 * (1.0 + offset());
    return s;
}

namespace {

// flat-array RHS, same dynamics as vector_field but without per-step allocation
void rhs(const double* y, double* dy, int n, const GoodwinParams& g,
         const std::vector<double>& weights) {
    const double* x1 = y;
    const double* x2 = y + n;
    const double* x3 = y + 2 * n;
    for (int i = 0; i < n; ++i) {
        const double x3c = std::max(x3[i], 0.0);
        dy[i] = 1.0 / (1.0 + std::pow(x3c, g.p)) - g.b1 * x1[i];
        double coupling = 0.0;
        const double* wrow = weights.data() + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) coupling += wrow[j] * (x2[i] - x2[j]);
        dy[n + i] = x1[i] - g.b2 * x2[i] - coupling;
        dy[2 * n + i] = x2[i] - g.b3 * x3[i];
    }
}

} // namespace

Trajectory integrate(const GoodwinParams& g, const CouplingTopology& c,
                     const NetworkState& init, const SimConfig& cfg) {
    g.validate();
    cfg.validate();
    const int n = c.size();
    if (init.size() != n || static_cast<int>(init.x2.size()) != n ||
        static_cast<int>(init.x3.size()) != n)
        throw std::invalid_argument("integrate: initial state and topology dimensions disagree");

    const std::size_t steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
    const std::size_t dim = static_cast<std::size_t>(3) * n;

    Trajectory traj;
    traj.n = n;
    traj.times.reserve(steps + 1);
    traj.states.reserve((steps + 1) * dim);

    std::vector<double> y(dim), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    std::copy(init.x1.begin(), init.x1.end(), y.begin());
    std::copy(init.x2.begin(), init.x2.end(), y.begin() + n);
    std::copy(init.x3.begin(), init.x3.end(), y.begin() + 2 * n);

    auto push_sample = [&](double t) {
        traj.times.push_back(t);
        traj.states.insert(traj.states.end(), y.begin(), y.end());
    };
    push_sample(0.0);

    const double dt = cfg.dt;
    for (std::size_t s = 0; s < steps; ++s) {
        rhs(y.data(), k1.data(), n, g, c.weights());
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        rhs(tmp.data(), k2.data(), n, g, c.weights());
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        rhs(tmp.data(), k3.data(), n, g, c.weights());
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + dt * k3[i];
        rhs(tmp.data(), k4.data(), n, g, c.weights());

        bool finite = true;
        for (std::size_t i = 0; i < dim; ++i) {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(y[i])) finite = false;
            if (y[i] < traj.min_unclamped) traj.min_unclamped = y[i];
            if (y[i] < 0.0) y[i] = 0.0;
        }
        const double t = static_cast<double>(s + 1) * dt;
        if (!finite) {
            traj.diverged_at = t;
            return traj;
        }
        push_sample(t);
    }
    return traj;
}

namespace {

std::size_t window_start(const Trajectory& traj, const SimConfig& cfg) {
    if (traj.samples() < 2) throw NotOscillatoryError("trajectory too short to measure");
    const double t_cut = cfg.transient_fraction * traj.times.back();
    std::size_t k = 0;
    while (k < traj.samples() && traj.times[k] < t_cut) ++k;
    if (traj.samples() - k < 2)
        throw NotOscillatoryError("trajectory shorter than the transient window");
    return k;
}

// Upward zero-crossing times of the mean-removed signal, linearly
// interpolated between samples.
std::vector<double> upward_crossings(const Trajectory& traj, int osc, std::size_t start) {
    double mean = 0.0;
    for (std::size_t k = start; k < traj.samples(); ++k) mean += traj.x3(k, osc);
    mean /= static_cast<double>(traj.samples() - start);

    std::vector<double> crossings;
    for (std::size_t k = start; k + 1 < traj.samples(); ++k) {
        const double a = traj.x3(k, osc) - mean;
        const double b = traj.x3(k + 1, osc) - mean;
        if (a < 0.0 && b >= 0.0) {
            const double frac = (b == a) ? 0.0 : -a / (b - a);
            crossings.push_back(traj.times[k] + frac * (traj.times[k + 1] - traj.times[k]));
        }
    }
    return crossings;
}

} // namespace

PeriodEstimate estimate_period(const Trajectory& traj, const SimConfig& cfg) {
    cfg.validate();
    const std::size_t start = window_start(traj, cfg);

    PeriodEstimate est;
    est.per_oscillator.reserve(traj.n);
    std::vector<double> all_gaps;
    int min_cycles = -1;

    for (int i = 0; i < traj.n; ++i) {
        const std::vector<double> crossings = upward_crossings(traj, i, start);
        if (crossings.size() < 4)
            throw NotOscillatoryError("fewer than 3 cycles detected; signal not oscillatory");
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < crossings.size(); ++k) {
            const double gap = crossings[k + 1] - crossings[k];
            all_gaps.push_back(gap);
            sum += gap;
        }
        const int cycles = static_cast<int>(crossings.size()) - 1;
        est.per_oscillator.push_back(sum / cycles);
        min_cycles = (min_cycles < 0) ? cycles : std::min(min_cycles, cycles);
    }

    double mean = 0.0;
    for (double p : est.per_oscillator) mean += p;
    est.period_mean = mean / static_cast<double>(traj.n);

    double var = 0.0;
    for (double gap : all_gaps) var += (gap - est.period_mean) * (gap - est.period_mean);
    est.period_std = std::sqrt(var / static_cast<double>(all_gaps.size()));
    est.n_cycles = min_cycles;
    return est;
}

SyncMetric measure_sync(const Trajectory& traj, const SimConfig& cfg) {
    cfg.validate();
    const std::size_t start = window_start(traj, cfg);

    SyncMetric m;
    std::vector<double> lo(traj.n, std::numeric_limits<double>::infinity());
    std::vector<double> hi(traj.n, -std::numeric_limits<double>::infinity());
    for (std::size_t k = start; k < traj.samples(); ++k) {
        double vmin = std::numeric_limits<double>::infinity();
        double vmax = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < traj.n; ++i) {
            const double v = traj.x3(k, i);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
            lo[i] = std::min(lo[i], v);
            hi[i] = std::max(hi[i], v);
        }
        m.sync_error = std::max(m.sync_error, vmax - vmin);
    }
    for (int i = 0; i < traj.n; ++i) m.amplitude = std::max(m.amplitude, hi[i] - lo[i]);
    m.is_synchronized = m.sync_error <= sync_relative_tolerance * m.amplitude;
    return m;
}

OscillationClass classify_oscillation(const Trajectory& traj, const SimConfig& cfg,
                                      const GoodwinParams& g) {
    cfg.validate();
    const std::size_t start = window_start(traj, cfg);
    const EquilibriumPoint e = solve_equilibrium(g);
    const double threshold = oscillation_amplitude_tolerance * std::max(1.0, e.x0);

    for (int i = 0; i < traj.n; ++i) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t k = start; k < traj.samples(); ++k) {
            const double v = traj.x3(k, i);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (!(hi - lo > threshold)) return OscillationClass::Quiescent;
    }
    try {
        estimate_period(traj, cfg);
    } catch (const NotOscillatoryError&) {
        return OscillationClass::Quiescent;
    }
    return OscillationClass::Oscillatory;
}

} // namespace goodwinnet
