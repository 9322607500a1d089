#ifndef QCHD_DIVERGENCES_H
#define QCHD_DIVERGENCES_H

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qchd/linalg.h"

namespace qchd {

// All logarithms are base 2.

/// A divergence in [0, +inf].
struct DivergenceValue {
    double value = 0.0;
    bool finite = true;

    static DivergenceValue infinite() {
        return {INFINITY, false};
    }
    static DivergenceValue of(double v) {
        return std::isfinite(v) ? DivergenceValue{v, true} : infinite();
    }
};

/// Nonnegative weights (i, j) summing to 1.
struct JointDistribution {
    Eigen::MatrixXd weights;

    double total() const {
        return weights.sum();
    }
};

/// Tr rho^alpha sigma^(1-alpha) for alpha in [0, 1]; at the endpoints the zero
/// power is the support projector.
double renyi_trace_term(const DensityMatrix &rho, const DensityMatrix &sigma, double alpha);

/// D_alpha(rho||sigma) = log2(Tr rho^alpha sigma^(1-alpha)) / (alpha - 1), alpha in (0, 1).
/// Infinite exactly when the trace term vanishes.
DivergenceValue renyi_divergence(const DensityMatrix &rho, const DensityMatrix &sigma, double alpha);

/// alpha -> 0 endpoint: -log2 Tr(Pi_rho sigma).
DivergenceValue renyi_divergence_zero(const DensityMatrix &rho, const DensityMatrix &sigma);

/// D(rho||sigma) = Tr rho (log rho - log sigma); infinite unless supp rho is in supp sigma.
DivergenceValue relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Gamma(i,j) = lambda_i |<v_j|u_i>|^2 and Gamma_bar(i,j) = mu_j |<v_j|u_i>|^2 from the
/// eigensystems (lambda, u) of rho and (mu, v) of sigma.
std::pair<JointDistribution, JointDistribution> nussbaum_szkola(const DensityMatrix &rho, const DensityMatrix &sigma);

/// log2(sum p^alpha q^(1-alpha)) / (alpha - 1) over matched indices; alpha in (0, 1).
DivergenceValue classical_renyi(const JointDistribution &p, const JointDistribution &q, double alpha);

DivergenceValue classical_relative_entropy(const JointDistribution &p, const JointDistribution &q);

/// A state pair reduced to its nonzero Nussbaum-Szkola weights, for evaluating the
/// Renyi family at many alpha without further eigendecompositions.
class SpectralPair {
   public:
    SpectralPair(const DensityMatrix &rho, const DensityMatrix &sigma);
    SpectralPair(const JointDistribution &p, const JointDistribution &q);
    /// From precomputed eigensystems of rho and sigma (skips the two eigensolves).
    SpectralPair(const EigenDecomposition &rho_eig, const EigenDecomposition &sigma_eig);

    /// Tr rho^alpha sigma^(1-alpha), alpha in [0, 1] (endpoints as support limits).
    double overlap(double alpha) const;

    /// -log2 overlap(alpha) = (1 - alpha) D_alpha(rho||sigma); +inf on orthogonal supports.
    double chernoff_function(double alpha) const;

    /// Right derivative of chernoff_function at 0 when it is finite there.
    double chernoff_slope_at_zero() const;

    DivergenceValue renyi(double alpha) const;
    DivergenceValue forward_relative_entropy() const;   // D(rho||sigma)
    DivergenceValue backward_relative_entropy() const;  // D(sigma||rho)

    /// Pair with the roles of rho and sigma exchanged.
    SpectralPair swapped() const;

   private:
    SpectralPair() = default;
    void add(double p, double q);

    std::vector<double> p_;
    std::vector<double> q_;
};

}  // namespace qchd

#endif
