#include "goodwinnet/goodwinnet.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <stdexcept>

#include "goodwinnet/analysis.hpp"
#include "goodwinnet/errors.hpp"
#include "goodwinnet/model.hpp"
#include "goodwinnet/simulation.hpp"

using namespace goodwinnet;

struct gw_topology {
    CouplingTopology impl;
};

struct gw_trajectory {
    Trajectory impl;
};

namespace {

constexpr const char* kVersion = "0.1.0";

GoodwinParams to_params(const gw_params& g) {
    GoodwinParams out;
    out.b1 = g.b1;
    out.b2 = g.b2;
    out.b3 = g.b3;
    out.p = g.p;
    if (g.has_sigma_time) out.sigma_time = g.sigma_time;
    return out;
}

SimConfig to_config(const gw_sim_config& cfg) {
    SimConfig out;
    out.dt = cfg.dt;
    out.t_end = cfg.t_end;
    out.transient_fraction = cfg.transient_fraction;
    out.seed = cfg.seed;
    out.perturbation = cfg.perturbation;
    return out;
}

// Maps C++ failures onto status codes; GW_ERR_INVALID_TOPOLOGY is handled at
// the call sites that construct topologies.
template <typename Fn>
gw_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const DisconnectedTopologyError&) {
        return GW_ERR_DISCONNECTED;
    } catch (const NotOscillatoryError&) {
        return GW_ERR_NOT_OSCILLATORY;
    } catch (const NoBalanceSolutionError&) {
        return GW_ERR_NO_CONVERGENCE;
    } catch (const std::domain_error&) {
        return GW_ERR_INVALID_ARGUMENT;
    } catch (const std::invalid_argument&) {
        return GW_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        return GW_ERR_INTERNAL;
    } catch (...) {
        return GW_ERR_INTERNAL;
    }
}

template <typename Build>
gw_status make_topology(gw_topology** out, Build&& build) {
    if (!out) return GW_ERR_NULL_POINTER;
    *out = nullptr;
    try {
        *out = new gw_topology{build()};
        return GW_OK;
    } catch (const std::invalid_argument&) {
        return GW_ERR_INVALID_TOPOLOGY;
    } catch (const std::bad_alloc&) {
        return GW_ERR_INTERNAL;
    } catch (...) {
        return GW_ERR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char* gw_status_string(gw_status status) {
    switch (status) {
        case GW_OK: return "ok";
        case GW_ERR_NULL_POINTER: return "null pointer argument";
        case GW_ERR_INVALID_ARGUMENT: return "invalid argument";
        case GW_ERR_INVALID_TOPOLOGY: return "invalid coupling topology";
        case GW_ERR_DISCONNECTED: return "topology is not connected";
        case GW_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
        case GW_ERR_NOT_OSCILLATORY: return "signal is not oscillatory";
        case GW_ERR_NO_CONVERGENCE: return "iteration did not converge";
        case GW_ERR_DIVERGED: return "integration diverged";
        case GW_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* gw_version(void) { return kVersion; }

gw_status gw_nondimensionalize(const gw_dimensional_params* d, gw_params* out) {
    if (!d || !out) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        DimensionalParams dim{d->v0, d->v1, d->v2, d->k1, d->k2, d->k3, d->km, d->p};
        const GoodwinParams g = nondimensionalize(dim);
        *out = gw_params{g.b1, g.b2, g.b3, g.p, g.sigma_time.value(), 1};
        return GW_OK;
    });
}

gw_status gw_topology_from_weights(int n, const double* weights, gw_topology** out) {
    if (!weights) return GW_ERR_NULL_POINTER;
    if (n < 1) return GW_ERR_INVALID_TOPOLOGY;
    return make_topology(out, [&] {
        return CouplingTopology(
            n, std::vector<double>(weights, weights + static_cast<size_t>(n) * n));
    });
}

gw_status gw_topology_table1(gw_topology** out) {
    return make_topology(out, [] { return table1_topology(); });
}

gw_status gw_topology_complete(int n, double weight, gw_topology** out) {
    return make_topology(out, [&] { return complete_topology(n, weight); });
}

gw_status gw_topology_ring(int n, double weight, gw_topology** out) {
    return make_topology(out, [&] { return ring_topology(n, weight); });
}

gw_status gw_topology_single(gw_topology** out) {
    return make_topology(out, [] { return single_cell(); });
}

gw_status gw_topology_scaled(const gw_topology* t, double factor, gw_topology** out) {
    if (!t) return GW_ERR_NULL_POINTER;
    return make_topology(out, [&] { return t->impl.scaled(factor); });
}

void gw_topology_free(gw_topology* t) { delete t; }

int gw_topology_size(const gw_topology* t) { return t ? t->impl.size() : 0; }

int gw_topology_connected(const gw_topology* t) { return t && t->impl.connected() ? 1 : 0; }

gw_status gw_topology_weights(const gw_topology* t, double* out) {
    if (!t || !out) return GW_ERR_NULL_POINTER;
    std::copy(t->impl.weights().begin(), t->impl.weights().end(), out);
    return GW_OK;
}

gw_status gw_topology_laplacian(const gw_topology* t, double* out) {
    if (!t || !out) return GW_ERR_NULL_POINTER;
    std::copy(t->impl.laplacian().begin(), t->impl.laplacian().end(), out);
    return GW_OK;
}

gw_status gw_topology_algebraic_connectivity(const gw_topology* t, double* rho) {
    if (!t || !rho) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        *rho = spectral_decompose(t->impl).algebraic_connectivity;
        return GW_OK;
    });
}

gw_status gw_analyze(const gw_params* g, const gw_topology* t, gw_analysis_report* out) {
    if (!g || !t || !out) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        const AnalysisReport rep = analyze(to_params(*g), t->impl);
        gw_analysis_report r{};
        r.x0 = rep.equilibrium.x0;
        r.x1_star = rep.equilibrium.x1_star;
        r.x2_star = rep.equilibrium.x2_star;
        r.equilibrium_residual = rep.equilibrium.residual;
        r.sigma = rep.sigma;
        r.r = rep.r;
        r.r_published = rep.r_published;
        r.gamma = rep.gamma;
        r.rho = rep.rho;
        r.sync_threshold = rep.sync_threshold;
        r.oscillation_predicted = rep.oscillation_predicted ? 1 : 0;
        r.sync_condition_met = rep.sync_condition_met ? 1 : 0;
        r.sync_applicable = rep.sync_applicable ? 1 : 0;
        r.w = rep.w;
        r.t_collective = rep.t_collective;
        r.has_t_dimensional = rep.t_dimensional.has_value() ? 1 : 0;
        r.t_dimensional = rep.t_dimensional.value_or(0.0);
        r.xi_star = rep.xi_star;
        r.eta_star = rep.eta_star;
        r.marginal_stability =
            rep.marginal_stability ? (rep.marginal_stability->passed ? 1 : 0) : -1;
        *out = r;
        return GW_OK;
    });
}

gw_status gw_oscillation_index(const gw_params* g, double* r) {
    if (!g || !r) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        const GoodwinParams params = to_params(*g);
        *r = oscillation_index(params, solve_equilibrium(params));
        return GW_OK;
    });
}

gw_status gw_published_oscillation_index(const gw_params* g, double* r) {
    if (!g || !r) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        *r = published_oscillation_index(to_params(*g));
        return GW_OK;
    });
}

gw_status gw_predict_period(const gw_params* g, double* w, double* t_collective) {
    if (!g || !w || !t_collective) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        const PeriodPrediction pred = predict_period(to_params(*g));
        *w = pred.w;
        *t_collective = pred.t_collective;
        return GW_OK;
    });
}

gw_status gw_gamma_max_slope(double p, double* gamma) {
    if (!gamma) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        *gamma = gamma_max_slope(p);
        return GW_OK;
    });
}

void gw_sim_config_default(gw_sim_config* cfg) {
    if (!cfg) return;
    const SimConfig d;
    *cfg = gw_sim_config{d.dt, d.t_end, d.transient_fraction, d.seed, d.perturbation};
}

gw_status gw_simulate(const gw_params* g, const gw_topology* t, const gw_sim_config* cfg,
                      gw_trajectory** out) {
    if (!g || !t || !cfg || !out) return GW_ERR_NULL_POINTER;
    *out = nullptr;
    return guarded([&] {
        const GoodwinParams params = to_params(*g);
        const SimConfig config = to_config(*cfg);
        const NetworkState init = default_initial_state(params, t->impl, config);
        Trajectory traj = integrate(params, t->impl, init, config);
        const bool diverged = traj.diverged_at.has_value();
        *out = new gw_trajectory{std::move(traj)};
        return diverged ? GW_ERR_DIVERGED : GW_OK;
    });
}

gw_status gw_simulate_from(const gw_params* g, const gw_topology* t, const gw_sim_config* cfg,
                           const double* init, gw_trajectory** out) {
    if (!g || !t || !cfg || !init || !out) return GW_ERR_NULL_POINTER;
    *out = nullptr;
    return guarded([&] {
        const int n = t->impl.size();
        NetworkState state = NetworkState::zero(n);
        std::copy(init, init + n, state.x1.begin());
        std::copy(init + n, init + 2 * n, state.x2.begin());
        std::copy(init + 2 * n, init + 3 * n, state.x3.begin());
        Trajectory traj = integrate(to_params(*g), t->impl, state, to_config(*cfg));
        const bool diverged = traj.diverged_at.has_value();
        *out = new gw_trajectory{std::move(traj)};
        return diverged ? GW_ERR_DIVERGED : GW_OK;
    });
}

gw_status gw_default_initial_state(const gw_params* g, const gw_topology* t,
                                   const gw_sim_config* cfg, double* out) {
    if (!g || !t || !cfg || !out) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        const NetworkState s = default_initial_state(to_params(*g), t->impl, to_config(*cfg));
        const int n = t->impl.size();
        std::copy(s.x1.begin(), s.x1.end(), out);
        std::copy(s.x2.begin(), s.x2.end(), out + n);
        std::copy(s.x3.begin(), s.x3.end(), out + 2 * n);
        return GW_OK;
    });
}

void gw_trajectory_free(gw_trajectory* traj) { delete traj; }

int gw_trajectory_size(const gw_trajectory* traj) { return traj ? traj->impl.n : 0; }

size_t gw_trajectory_samples(const gw_trajectory* traj) {
    return traj ? traj->impl.samples() : 0;
}

int gw_trajectory_diverged(const gw_trajectory* traj, double* t_diverged) {
    if (!traj || !traj->impl.diverged_at) return 0;
    if (t_diverged) *t_diverged = *traj->impl.diverged_at;
    return 1;
}

gw_status gw_trajectory_copy_times(const gw_trajectory* traj, double* out) {
    if (!traj || !out) return GW_ERR_NULL_POINTER;
    std::copy(traj->impl.times.begin(), traj->impl.times.end(), out);
    return GW_OK;
}

gw_status gw_trajectory_copy_states(const gw_trajectory* traj, double* out) {
    if (!traj || !out) return GW_ERR_NULL_POINTER;
    std::copy(traj->impl.states.begin(), traj->impl.states.end(), out);
    return GW_OK;
}

gw_status gw_estimate_period(const gw_trajectory* traj, const gw_sim_config* cfg,
                             gw_period_estimate* out) {
    if (!traj || !cfg || !out) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        const PeriodEstimate est = estimate_period(traj->impl, to_config(*cfg));
        *out = gw_period_estimate{est.period_mean, est.period_std, est.n_cycles};
        return GW_OK;
    });
}

gw_status gw_estimate_period_per_oscillator(const gw_trajectory* traj,
                                            const gw_sim_config* cfg, double* out) {
    if (!traj || !cfg || !out) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        const PeriodEstimate est = estimate_period(traj->impl, to_config(*cfg));
        std::copy(est.per_oscillator.begin(), est.per_oscillator.end(), out);
        return GW_OK;
    });
}

gw_status gw_measure_sync(const gw_trajectory* traj, const gw_sim_config* cfg,
                          gw_sync_metric* out) {
    if (!traj || !cfg || !out) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        const SyncMetric m = measure_sync(traj->impl, to_config(*cfg));
        *out = gw_sync_metric{m.sync_error, m.amplitude, m.is_synchronized ? 1 : 0};
        return GW_OK;
    });
}

gw_status gw_classify_oscillation(const gw_trajectory* traj, const gw_sim_config* cfg,
                                  const gw_params* g, int* oscillatory) {
    if (!traj || !cfg || !g || !oscillatory) return GW_ERR_NULL_POINTER;
    return guarded([&] {
        const OscillationClass cls =
            classify_oscillation(traj->impl, to_config(*cfg), to_params(*g));
        *oscillatory = (cls == OscillationClass::Oscillatory) ? 1 : 0;
        return GW_OK;
    });
}

} // extern "C"
