#include "goodwinnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "goodwinnet/errors.hpp"

namespace goodwinnet {

namespace {

// Unique root of 1/(1+x^q) = k*x on (0, 1/k]; the left side is decreasing
// and the right side increasing, so bisection cannot fail.
double bisect_equilibrium(double k, double q) {
    auto h = [&](double x) { return 1.0 / (1.0 + std::pow(x, q)) - k * x; };
    double lo = 0.0;
    double hi = 1.0 / k;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14 * (1.0 + mid)) break;
    }
    return 0.5 * (lo + hi);
}

double oscillation_denominator(const GoodwinParams& g) {
    // positive for all positive b by AM-GM
    return g.b_sum() * g.b_pair_sum() - g.b_product();
}

} // namespace

EquilibriumPoint solve_equilibrium(const GoodwinParams& g) {
    g.validate();
    const double k = g.b_product();
    EquilibriumPoint e;
    e.x0 = bisect_equilibrium(k, g.p);
    e.x1_star = g.b2 * g.b3 * e.x0;
    e.x2_star = g.b3 * e.x0;
    e.residual = std::abs(hill_repression(e.x0, g.p) - k * e.x0);
    return e;
}

double linearization_gain(const GoodwinParams& g, const EquilibriumPoint& e) {
    const double fx0 = g.b_product() * e.x0;  // = f(x0) at the equilibrium
    return -g.p * std::pow(e.x0, g.p - 1.0) * fx0 * fx0;
}

double oscillation_index(const GoodwinParams& g, const EquilibriumPoint& e) {
    return -linearization_gain(g, e) / oscillation_denominator(g);
}

double published_oscillation_index(const GoodwinParams& g) {
    g.validate();
    const double k = g.b_product();
    const double x0 = bisect_equilibrium(k, g.p + 1.0);
    return g.p * k * k * std::pow(x0, g.p + 1.0) / oscillation_denominator(g);
}

double gamma_max_slope(double p) {
    if (!(std::isfinite(p)) || p < 1.0)
        throw std::invalid_argument("gamma_max_slope: p must be >= 1 (the slope is unbounded below)");
    if (p == 1.0) return 1.0;  // 1/(1+x)^2 is maximal at x = 0
    const double ratio = (p - 1.0) / (p + 1.0);
    return std::pow(ratio, (p - 1.0) / p) * (p + 1.0) * (p + 1.0) / (4.0 * p);
}

SpectralDecomposition spectral_decompose(const CouplingTopology& c) {
    const int n = c.size();
    std::vector<double> a = c.laplacian();  // working copy, row-major
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    auto at = [&](std::vector<double>& m, int i, int j) -> double& {
        return m[static_cast<size_t>(i) * n + j];
    };

    double frob = 0.0;
    for (double x : a) frob += x * x;
    const double tol = 1e-12 * std::max(1.0, std::sqrt(frob));

    // cyclic Jacobi sweeps until the off-diagonal mass is negligible
    for (int sweep = 0; sweep < 100 && n > 1; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * at(a, i, j) * at(a, i, j);
        if (std::sqrt(off) < tol) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(a, p, q);
                if (apq == 0.0) continue;
                const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;

                for (int k = 0; k < n; ++k) {
                    const double akp = at(a, k, p);
                    const double akq = at(a, k, q);
                    at(a, k, p) = cs * akp - sn * akq;
                    at(a, k, q) = sn * akp + cs * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(a, p, k);
                    const double aqk = at(a, q, k);
                    at(a, p, k) = cs * apk - sn * aqk;
                    at(a, q, k) = sn * apk + cs * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = at(v, k, p);
                    const double vkq = at(v, k, q);
                    at(v, k, p) = cs * vkp - sn * vkq;
                    at(v, k, q) = sn * vkp + cs * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return a[static_cast<size_t>(i) * n + i] < a[static_cast<size_t>(j) * n + j];
    });

    SpectralDecomposition out;
    out.n = n;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(static_cast<size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a[static_cast<size_t>(order[k]) * n + order[k]];
        for (int i = 0; i < n; ++i)
            out.eigenvectors[static_cast<size_t>(k) * n + i] =
                v[static_cast<size_t>(i) * n + order[k]];
    }
    out.algebraic_connectivity = n > 1 ? out.eigenvalues[1] : 0.0;
    return out;
}

SyncConditionCheck check_sync_condition(const GoodwinParams& g, double gamma, double rho,
                                        bool topology_connected) {
    if (!topology_connected)
        throw DisconnectedTopologyError(
            "check_sync_condition: the threshold is meaningless for a disconnected topology");
    SyncConditionCheck out;
    out.threshold = -g.b1 + gamma / (4.0 * g.b2 * g.b3);
    out.satisfied = rho > out.threshold;
    return out;
}

std::vector<Cubic> mode_pole_polynomials(const GoodwinParams& g, double kappa,
                                         const SpectralDecomposition& spec) {
    std::vector<Cubic> out;
    out.reserve(spec.n);
    // mode 1: (s+b1)(s+b2)(s+b3) - kappa
    out.push_back({g.b_sum(), g.b_pair_sum(), g.b_product() - kappa});
    for (int j = 1; j < spec.n; ++j) {
        const double b2j = g.b2 + spec.eigenvalues[j];
        out.push_back({g.b1 + b2j + g.b3,
                       g.b1 * b2j + g.b1 * g.b3 + b2j * g.b3,
                       g.b1 * b2j * g.b3 - kappa});
    }
    return out;
}

Stability routh_hurwitz_cubic(double c2, double c1, double c0) {
    constexpr double tol = 1e-9;
    const double q1 = c2;
    const double q2 = c0;
    const double q3 = c2 * c1 - c0;
    if (q1 > tol && q2 > tol && q3 > tol) return Stability::StrictlyStable;
    if (q1 >= -tol && q2 >= -tol && q3 >= -tol) return Stability::Marginal;
    return Stability::Unstable;
}

std::array<std::complex<double>, 3> cubic_roots(const Cubic& c) {
    auto eval = [&](double s) { return ((s + c.c2) * s + c.c1) * s + c.c0; };

    // Every monic cubic has a real root inside the Cauchy bound.
    double bound = 1.0 + std::max({std::abs(c.c2), std::abs(c.c1), std::abs(c.c0)});
    double lo = -bound, hi = bound;
    // eval(lo) < 0 <= eval(hi) by the leading term
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eval(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double r = 0.5 * (lo + hi);
    // Newton polish
    for (int it = 0; it < 4; ++it) {
        const double f = eval(r);
        const double df = (3.0 * r + 2.0 * c.c2) * r + c.c1;
        if (df == 0.0) break;
        const double step = f / df;
        r -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
    }

    // deflate: s^3 + c2 s^2 + c1 s + c0 = (s - r)(s^2 + ps + q)
    const double p = c.c2 + r;
    const double q = c.c1 + r * p;
    const std::complex<double> disc(p * p - 4.0 * q, 0.0);
    const std::complex<double> sq = std::sqrt(disc);
    return {std::complex<double>(r, 0.0), (-p + sq) / 2.0, (-p - sq) / 2.0};
}

PeriodPrediction predict_period(const GoodwinParams& g) {
    g.validate();
    PeriodPrediction out;
    out.w = std::sqrt(g.b_pair_sum());
    out.t_collective = 2.0 * std::numbers::pi / out.w;
    if (g.sigma_time) out.t_dimensional = *g.sigma_time * out.t_collective;
    return out;
}

ClosedFormGains closed_form_gains(const GoodwinParams& g) {
    g.validate();
    return {g.b_product(), g.b_product() - g.b_pair_sum() * g.b_sum()};
}

DescribingGains describing_functions(double alpha, double beta, double p, int intervals) {
    if (!(alpha > 0.0)) throw std::invalid_argument("describing_functions: alpha must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("describing_functions: beta must be >= 0");
    if (intervals < 2 || intervals % 2 != 0)
        throw std::invalid_argument("describing_functions: intervals must be even and >= 2");

    const double pi = std::numbers::pi;
    const double h = 2.0 * pi / intervals;
    auto f = [&](double t) {
        return hill_repression(std::max(alpha + beta * std::sin(t), 0.0), p);
    };

    // composite Simpson over [-pi, pi]
    double s0 = f(-pi) + f(pi);
    double s0_sin = f(-pi) * std::sin(-pi) + f(pi) * std::sin(pi);
    for (int k = 1; k < intervals; ++k) {
        const double t = -pi + k * h;
        const double wgt = (k % 2 == 1) ? 4.0 : 2.0;
        const double ft = f(t);
        s0 += wgt * ft;
        s0_sin += wgt * ft * std::sin(t);
    }
    const double i0 = s0 * h / 3.0;
    const double i1 = s0_sin * h / 3.0;
    return {i0 / (2.0 * pi * alpha), i1 / (2.0 * pi * alpha)};
}

HarmonicBalanceSolution solve_hb_amplitudes(const GoodwinParams& g) {
    const EquilibriumPoint e = solve_equilibrium(g);
    if (!(oscillation_index(g, e) > 1.0))
        throw std::invalid_argument("solve_hb_amplitudes: requires R > 1 (no oscillatory balance expected)");

    const ClosedFormGains target = closed_form_gains(g);
    double alpha = e.x0;
    double beta = e.x0 / 2.0;

    auto residual = [&](double a, double b, DescribingGains& gains) {
        gains = describing_functions(a, b, g.p);
        return std::array<double, 2>{gains.xi - target.xi, gains.eta - target.eta};
    };
    auto norm2 = [](const std::array<double, 2>& r) { return r[0] * r[0] + r[1] * r[1]; };

    DescribingGains gains{};
    std::array<double, 2> res = residual(alpha, beta, gains);
    int iterations = 0;

    for (; iterations < 200; ++iterations) {
        if (std::max(std::abs(res[0]), std::abs(res[1])) < 1e-8) {
            return {alpha, beta, gains.xi, gains.eta, res[0], res[1], iterations};
        }

        // finite-difference Jacobian
        const double ha = 1e-6 * std::max(1.0, std::abs(alpha));
        const double hb = 1e-6 * std::max(1.0, std::abs(beta));
        DescribingGains tmp{};
        const auto ra = residual(alpha + ha, beta, tmp);
        const auto rb = residual(alpha, beta + hb, tmp);
        const double j00 = (ra[0] - res[0]) / ha, j01 = (rb[0] - res[0]) / hb;
        const double j10 = (ra[1] - res[1]) / ha, j11 = (rb[1] - res[1]) / hb;
        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || std::abs(det) < 1e-300) break;
        const double da = (-res[0] * j11 + res[1] * j01) / det;
        const double db = (-res[1] * j00 + res[0] * j10) / det;

        // damped step; keep the iterate in the admissible quadrant
        double lambda = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 30; ++halving, lambda *= 0.5) {
            const double na = std::max(alpha + lambda * da, 1e-8);
            const double nb = std::max(beta + lambda * db, 0.0);
            DescribingGains ng{};
            const auto nr = residual(na, nb, ng);
            if (norm2(nr) < norm2(res)) {
                alpha = na;
                beta = nb;
                res = nr;
                gains = ng;
                improved = true;
                break;
            }
        }
        if (!improved) break;  // stagnated; no descent direction left
    }

    throw NoBalanceSolutionError(
        "solve_hb_amplitudes: gain-matching equations have no solution "
        "(for a nonnegative nonlinearity |eta| <= xi, but the required gains "
        "satisfy |eta*| > xi*); best residuals reported",
        alpha, beta, res[0], res[1]);
}

MarginalStabilityReport verify_marginal_stability(const GoodwinParams& g,
                                                  const SpectralDecomposition& spec) {
    const ClosedFormGains gains = closed_form_gains(g);
    const double w = std::sqrt(g.b_pair_sum());
    MarginalStabilityReport rep;

    // loop gain xi*: the synchronized mode carries one pole at the origin
    {
        const auto cubics = mode_pole_polynomials(g, gains.xi, spec);
        const auto roots = cubic_roots(cubics[0]);
        int zero_count = 0;
        bool rest_stable = true;
        double zero_abs = std::numeric_limits<double>::infinity();
        for (const auto& root : roots) {
            if (std::abs(root) < 1e-7) {
                ++zero_count;
                zero_abs = std::min(zero_abs, std::abs(root));
            } else if (!(root.real() < -1e-9)) {
                rest_stable = false;
            }
        }
        rep.g0_zero_pole = (zero_count == 1);
        rep.g0_zero_root_abs = zero_count > 0 ? zero_abs : -1.0;
        rep.g0_rest_stable = rest_stable;
        rep.g0_modes_stable = true;
        for (size_t j = 1; j < cubics.size(); ++j)
            if (routh_hurwitz_cubic(cubics[j].c2, cubics[j].c1, cubics[j].c0) !=
                Stability::StrictlyStable)
                rep.g0_modes_stable = false;
    }

    // loop gain eta*: the synchronized mode carries the +/- jw pair
    {
        const auto cubics = mode_pole_polynomials(g, gains.eta, spec);
        const auto roots = cubic_roots(cubics[0]);
        double best_pos = std::numeric_limits<double>::infinity();
        double best_neg = std::numeric_limits<double>::infinity();
        bool third_stable = false;
        for (const auto& root : roots) {
            best_pos = std::min(best_pos, std::abs(root - std::complex<double>(0.0, w)));
            best_neg = std::min(best_neg, std::abs(root + std::complex<double>(0.0, w)));
            if (root.imag() == 0.0 && root.real() < -1e-9) third_stable = true;
        }
        rep.g1_pair_deviation = std::max(best_pos, best_neg);
        rep.g1_imaginary_pair = rep.g1_pair_deviation < 1e-7;
        rep.g1_third_stable = third_stable;
        rep.g1_modes_stable = true;
        for (size_t j = 1; j < cubics.size(); ++j)
            if (routh_hurwitz_cubic(cubics[j].c2, cubics[j].c1, cubics[j].c0) !=
                Stability::StrictlyStable)
                rep.g1_modes_stable = false;
    }

    rep.passed = rep.g0_zero_pole && rep.g0_rest_stable && rep.g0_modes_stable &&
                 rep.g1_imaginary_pair && rep.g1_third_stable && rep.g1_modes_stable;
    return rep;
}

AnalysisReport analyze(const GoodwinParams& g, const CouplingTopology& c) {
    g.validate();
    AnalysisReport rep;
    rep.equilibrium = solve_equilibrium(g);
    rep.sigma = linearization_gain(g, rep.equilibrium);
    rep.r = oscillation_index(g, rep.equilibrium);
    rep.r_published = published_oscillation_index(g);
    rep.oscillation_predicted = rep.r > 1.0;
    rep.gamma = gamma_max_slope(g.p);

    const SpectralDecomposition spec = spectral_decompose(c);
    rep.rho = spec.algebraic_connectivity;
    rep.sync_applicable = c.connected();
    if (rep.sync_applicable) {
        const SyncConditionCheck sync = check_sync_condition(g, rep.gamma, rep.rho, true);
        rep.sync_threshold = sync.threshold;
        rep.sync_condition_met = sync.satisfied;
    } else {
        rep.sync_threshold = -g.b1 + rep.gamma / (4.0 * g.b2 * g.b3);
        rep.sync_condition_met = false;
    }

    const PeriodPrediction period = predict_period(g);
    rep.w = period.w;
    rep.t_collective = period.t_collective;
    rep.t_dimensional = period.t_dimensional;

    const ClosedFormGains gains = closed_form_gains(g);
    rep.xi_star = gains.xi;
    rep.eta_star = gains.eta;

    if (rep.oscillation_predicted && rep.sync_applicable)
        rep.marginal_stability = verify_marginal_stability(g, spec);
    return rep;
}

} // namespace goodwinnet
