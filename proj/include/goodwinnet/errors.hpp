#pragma once

#include <stdexcept>
#include <string>

namespace goodwinnet {

// Thrown by period estimation when the signal has too few cycles to measure.
struct NotOscillatoryError : std::runtime_error {
    explicit NotOscillatoryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when the harmonic-balance amplitude solve fails to converge.
// Carries the final iterate and gain-matching residuals.
struct NoBalanceSolutionError : std::runtime_error {
    NoBalanceSolutionError(const std::string& msg, double alpha_, double beta_,
                           double xi_residual_, double eta_residual_)
        : std::runtime_error(msg),
          alpha(alpha_), beta(beta_),
          xi_residual(xi_residual_), eta_residual(eta_residual_) {}
    double alpha;
    double beta;
    double xi_residual;
    double eta_residual;
};

// Thrown by operations that require a connected coupling topology.
struct DisconnectedTopologyError : std::invalid_argument {
    explicit DisconnectedTopologyError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace goodwinnet
