#include "qchd/divergences.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qchd/errors.h"

namespace qchd {

namespace {

// Weights and eigenvalues at or below this are treated as exact zeros when
// deciding supports.
constexpr double kZeroWeight = 1e-15;
constexpr double kZeroOverlap = 1e-14;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << "AlphaOutOfRange: alpha = " << alpha << " not in (0, 1)";
        throw AlphaOutOfRange(msg.str());
    }
}

void check_dims(const DensityMatrix &rho, const DensityMatrix &sigma, const char *where) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch(std::string(where) + ": states of different dimensions");
    }
}

RealVector clamped(RealVector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) <= kZeroWeight) {
            v(i) = 0.0;
        }
    }
    return v;
}

}  // namespace

double renyi_trace_term(const DensityMatrix &rho, const DensityMatrix &sigma, double alpha) {
    check_dims(rho, sigma, "renyi_trace_term");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw AlphaOutOfRange("renyi_trace_term: alpha not in [0, 1]");
    }
    ComplexMatrix a = matrix_power(rho.op(), alpha);
    ComplexMatrix b = matrix_power(sigma.op(), 1.0 - alpha);
    return std::max(0.0, (a * b).trace().real());
}

DivergenceValue renyi_divergence(const DensityMatrix &rho, const DensityMatrix &sigma, double alpha) {
    check_alpha(alpha);
    double t = renyi_trace_term(rho, sigma, alpha);
    if (t <= kZeroOverlap) {
        return DivergenceValue::infinite();
    }
    return {std::max(0.0, std::log2(t) / (alpha - 1.0)), true};
}

DivergenceValue renyi_divergence_zero(const DensityMatrix &rho, const DensityMatrix &sigma) {
    double t = renyi_trace_term(rho, sigma, 0.0);
    if (t <= kZeroOverlap) {
        return DivergenceValue::infinite();
    }
    return {std::max(0.0, -std::log2(t)), true};
}

DivergenceValue relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma) {
    check_dims(rho, sigma, "relative_entropy");
    auto er = hermitian_eig(rho.op());
    auto es = hermitian_eig(sigma.op());
    RealVector lam = clamped(er.eigenvalues);
    RealVector mu = clamped(es.eigenvalues);
    // |<v_j|u_i>|^2
    Eigen::MatrixXd overlaps = (es.eigenvectors.adjoint() * er.eigenvectors).cwiseAbs2().transpose();

    double value = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) == 0.0) {
            continue;
        }
        value += lam(i) * std::log2(lam(i));
        for (Eigen::Index j = 0; j < mu.size(); ++j) {
            double w = lam(i) * overlaps(i, j);
            if (w <= kZeroWeight) {
                continue;
            }
            if (mu(j) == 0.0) {
                return DivergenceValue::infinite();
            }
            value -= w * std::log2(mu(j));
        }
    }
    return {std::max(0.0, value), true};
}

namespace {

std::pair<JointDistribution, JointDistribution> weights_from_eig(const EigenDecomposition &er,
                                                                 const EigenDecomposition &es) {
    if (er.eigenvalues.size() != es.eigenvalues.size()) {
        throw DimensionMismatch("nussbaum_szkola: eigensystems of different dimensions");
    }
    RealVector lam = er.eigenvalues.cwiseMax(0.0);
    RealVector mu = es.eigenvalues.cwiseMax(0.0);
    lam /= lam.sum();
    mu /= mu.sum();
    Eigen::MatrixXd overlaps = (es.eigenvectors.adjoint() * er.eigenvectors).cwiseAbs2().transpose();

    JointDistribution gamma{lam.asDiagonal() * overlaps};
    JointDistribution gamma_bar{overlaps * mu.asDiagonal()};
    return {gamma, gamma_bar};
}

}  // namespace

std::pair<JointDistribution, JointDistribution> nussbaum_szkola(const DensityMatrix &rho, const DensityMatrix &sigma) {
    check_dims(rho, sigma, "nussbaum_szkola");
    return weights_from_eig(hermitian_eig(rho.op()), hermitian_eig(sigma.op()));
}

DivergenceValue classical_renyi(const JointDistribution &p, const JointDistribution &q, double alpha) {
    check_alpha(alpha);
    return SpectralPair(p, q).renyi(alpha);
}

DivergenceValue classical_relative_entropy(const JointDistribution &p, const JointDistribution &q) {
    return SpectralPair(p, q).forward_relative_entropy();
}

SpectralPair::SpectralPair(const DensityMatrix &rho, const DensityMatrix &sigma) {
    auto [gamma, gamma_bar] = nussbaum_szkola(rho, sigma);
    for (Eigen::Index k = 0; k < gamma.weights.size(); ++k) {
        add(gamma.weights.data()[k], gamma_bar.weights.data()[k]);
    }
}

SpectralPair::SpectralPair(const JointDistribution &p, const JointDistribution &q) {
    if (p.weights.rows() != q.weights.rows() || p.weights.cols() != q.weights.cols()) {
        throw DimensionMismatch("SpectralPair: distributions over different index sets");
    }
    for (Eigen::Index k = 0; k < p.weights.size(); ++k) {
        double pk = p.weights.data()[k];
        double qk = q.weights.data()[k];
        if (pk < -kZeroWeight || qk < -kZeroWeight) {
            throw ParameterOutOfRange("SpectralPair: negative weight");
        }
        add(pk, qk);
    }
}

SpectralPair::SpectralPair(const EigenDecomposition &rho_eig, const EigenDecomposition &sigma_eig) {
    auto [gamma, gamma_bar] = weights_from_eig(rho_eig, sigma_eig);
    for (Eigen::Index k = 0; k < gamma.weights.size(); ++k) {
        add(gamma.weights.data()[k], gamma_bar.weights.data()[k]);
    }
}

void SpectralPair::add(double p, double q) {
    p = p <= kZeroWeight ? 0.0 : p;
    q = q <= kZeroWeight ? 0.0 : q;
    if (p > 0.0 || q > 0.0) {
        p_.push_back(p);
        q_.push_back(q);
    }
}

double SpectralPair::overlap(double alpha) const {
    double s = 0.0;
    if (alpha <= 0.0) {
        for (std::size_t k = 0; k < p_.size(); ++k) {
            if (p_[k] > 0.0) {
                s += q_[k];
            }
        }
        return s;
    }
    if (alpha >= 1.0) {
        for (std::size_t k = 0; k < p_.size(); ++k) {
            if (q_[k] > 0.0) {
                s += p_[k];
            }
        }
        return s;
    }
    for (std::size_t k = 0; k < p_.size(); ++k) {
        if (p_[k] > 0.0 && q_[k] > 0.0) {
            s += std::pow(p_[k], alpha) * std::pow(q_[k], 1.0 - alpha);
        }
    }
    return s;
}

double SpectralPair::chernoff_function(double alpha) const {
    double s = overlap(alpha);
    if (s <= kZeroOverlap) {
        return INFINITY;
    }
    return std::max(0.0, -std::log2(s));
}

double SpectralPair::chernoff_slope_at_zero() const {
    double s0 = overlap(0.0);
    if (s0 <= kZeroOverlap) {
        return INFINITY;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < p_.size(); ++k) {
        if (p_[k] > 0.0 && q_[k] > 0.0) {
            acc += q_[k] * std::log2(q_[k] / p_[k]);
        }
    }
    return acc / s0;
}

DivergenceValue SpectralPair::renyi(double alpha) const {
    check_alpha(alpha);
    return DivergenceValue::of(chernoff_function(alpha) / (1.0 - alpha));
}

DivergenceValue SpectralPair::forward_relative_entropy() const {
    double value = 0.0;
    for (std::size_t k = 0; k < p_.size(); ++k) {
        if (p_[k] == 0.0) {
            continue;
        }
        if (q_[k] == 0.0) {
            return DivergenceValue::infinite();
        }
        value += p_[k] * std::log2(p_[k] / q_[k]);
    }
    return {std::max(0.0, value), true};
}

DivergenceValue SpectralPair::backward_relative_entropy() const {
    return swapped().forward_relative_entropy();
}

SpectralPair SpectralPair::swapped() const {
    SpectralPair out;
    out.p_ = q_;
    out.q_ = p_;
    return out;
}

}  // namespace qchd
