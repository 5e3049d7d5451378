#pragma once

// Parameter records, the network vector field, and Laplacian construction.
//
// The model is a network of three-state negative-feedback oscillators
// (mRNA -> protein -> inhibitor, with Hill-type repression closing the loop)
// coupled diffusively through the protein variable x2:
//
//   dx1_i/dt = 1/(1 + x3_i^p) - b1*x1_i
//   dx2_i/dt = x1_i - b2*x2_i - sum_j a_ij (x2_i - x2_j)
//   dx3_i/dt = x2_i - b3*x3_i

#include <cstddef>
#include <optional>
#include <vector>

namespace goodwinnet {

// Rates of the dimensional model: d[X1]/dT = v0/(1+([X3]/Km)^p) - k1[X1], etc.
struct DimensionalParams {
    double v0 = 1.0;  // transcription rate
    double v1 = 1.0;  // translation rate
    double v2 = 1.0;  // catalysis rate
    double k1 = 1.0;  // degradation rate constants
    double k2 = 1.0;
    double k3 = 1.0;
    double km = 1.0;  // binding-scale concentration
    double p = 2.0;   // Hill coefficient

    // Throws std::invalid_argument unless all fields positive and p >= 1.
    void validate() const;
};

// Dimensionless parameters b_i = k_i * sigma_time of the rescaled model.
struct GoodwinParams {
    double b1 = 1.0;
    double b2 = 1.0;
    double b3 = 1.0;
    double p = 2.0;
    // Time scale (in the dimensional model's time units) when the record was
    // derived from DimensionalParams; empty for directly specified parameters.
    std::optional<double> sigma_time;

    void validate() const;

    double b_product() const { return b1 * b2 * b3; }
    double b_sum() const { return b1 + b2 + b3; }
    double b_pair_sum() const { return b1 * b2 + b1 * b3 + b2 * b3; }
};

// Rescale the dimensional model to the dimensionless form.
// sigma_time = (Km/(v0*v1*v2))^(1/3), b_i = k_i * sigma_time.
GoodwinParams nondimensionalize(const DimensionalParams& d);

// Repression nonlinearity f(x) = 1/(1+x^p). Domain x >= 0 (throws
// std::domain_error off the nonnegative axis).
double hill_repression(double x, double p);

// f'(x) = -p x^(p-1) / (1+x^p)^2.
double hill_repression_slope(double x, double p);

// Symmetric nonnegative coupling weights and the derived graph Laplacian
//   A[i][i] = sum_{j != i} a_ij,  A[i][j] = -a_ij.
// Immutable after construction.
class CouplingTopology {
public:
    // weights is row-major n x n; must be symmetric with zero diagonal and
    // nonnegative entries, otherwise throws std::invalid_argument.
    CouplingTopology(int n, std::vector<double> weights);

    int size() const { return n_; }
    bool connected() const { return connected_; }

    double weight(int i, int j) const { return weights_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<double>& weights() const { return weights_; }

    // Row-major n x n Laplacian.
    const std::vector<double>& laplacian() const { return laplacian_; }
    double laplacian_at(int i, int j) const { return laplacian_[static_cast<size_t>(i) * n_ + j]; }

    // Same graph with every weight multiplied by factor (> 0 required).
    CouplingTopology scaled(double factor) const;

private:
    int n_;
    std::vector<double> weights_;
    std::vector<double> laplacian_;
    bool connected_;
};

// The nine-oscillator benchmark network used by the reproduce commands.
CouplingTopology table1_topology();

CouplingTopology complete_topology(int n, double weight);
CouplingTopology ring_topology(int n, double weight);
// A single oscillator with no coupling.
CouplingTopology single_cell();

// Stacked network state; each vector has one entry per oscillator.
struct NetworkState {
    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<double> x3;

    int size() const { return static_cast<int>(x1.size()); }
    static NetworkState zero(int n);
    // All oscillators set to the same (x1, x2, x3).
    static NetworkState consensus(int n, double x1v, double x2v, double x3v);
};

// Right-hand side of the network ODE. x3 is clamped at 0 before evaluating
// the repression term (concentrations are nonnegative; stray negative values
// can only come from floating-point underflow during integration).
// Throws std::invalid_argument on dimension mismatch.
NetworkState vector_field(const NetworkState& s, const GoodwinParams& g,
                          const CouplingTopology& c);

} // namespace goodwinnet
