#include "qchd/divergences.h"

#include <cmath>

#include "gtest/gtest.h"
#include "qchd/channels.h"
#include "qchd/errors.h"
#include "qchd/random.h"

namespace qchd {
namespace {

DensityMatrix plus_state() {
    return DensityMatrix::pure(ComplexVector::Constant(2, 1.0 / std::sqrt(2.0)));
}

DensityMatrix diagonal(std::initializer_list<double> weights) {
    RealVector w(static_cast<Eigen::Index>(weights.size()));
    Eigen::Index i = 0;
    for (double x : weights) {
        w(i++) = x;
    }
    return DensityMatrix(ComplexMatrix(w.cast<Complex>().asDiagonal()));
}

TEST(renyi_divergence, self_is_zero) {
    Rng rng = derived_rng(1, 0);
    DensityMatrix rho = random_density_matrix(3, rng);
    for (double a : {0.1, 0.5, 0.9}) {
        EXPECT_NEAR(renyi_divergence(rho, rho, a).value, 0.0, 1e-12);
    }
}

TEST(renyi_divergence, pure_pair_gives_one_bit) {
    DensityMatrix zero = DensityMatrix::basis_state(2, 0);
    for (int k = 1; k < 100; ++k) {
        double a = k / 100.0;
        EXPECT_NEAR((1.0 - a) * renyi_divergence(zero, plus_state(), a).value, 1.0, 1e-10);
    }
}

TEST(renyi_divergence, depolarized_antipodal_outputs) {
    for (double q : {0.2, 0.5, 0.8}) {
        DensityMatrix rho = diagonal({1.0 - q / 2.0, q / 2.0});
        DensityMatrix sigma = diagonal({q / 2.0, 1.0 - q / 2.0});
        for (double a : {0.1, 0.3, 0.7, 0.9}) {
            double overlap = std::pow(1.0 - q / 2.0, a) * std::pow(q / 2.0, 1.0 - a) +
                             std::pow(1.0 - q / 2.0, 1.0 - a) * std::pow(q / 2.0, a);
            EXPECT_NEAR(renyi_divergence(rho, sigma, a).value, std::log2(overlap) / (a - 1.0), 1e-12);
        }
    }
}

TEST(renyi_divergence, orthogonal_supports_are_infinite) {
    auto d = renyi_divergence(DensityMatrix::basis_state(2, 0), DensityMatrix::basis_state(2, 1), 0.5);
    EXPECT_FALSE(d.finite);
    EXPECT_TRUE(std::isinf(d.value));
    EXPECT_THROW(renyi_divergence(plus_state(), plus_state(), 1.0), AlphaOutOfRange);
}

TEST(relative_entropy, values) {
    Rng rng = derived_rng(2, 0);
    DensityMatrix rho = random_density_matrix(3, rng);
    EXPECT_NEAR(relative_entropy(rho, rho).value, 0.0, 1e-12);
    EXPECT_FALSE(relative_entropy(DensityMatrix::basis_state(2, 0), DensityMatrix::basis_state(2, 1)).finite);
    // Commuting case by hand.
    DensityMatrix p = diagonal({0.75, 0.25}), q = diagonal({0.5, 0.5});
    double expect = 0.75 * std::log2(1.5) + 0.25 * std::log2(0.5);
    EXPECT_NEAR(relative_entropy(p, q).value, expect, 1e-12);
}

TEST(relative_entropy, is_limit_of_renyi) {
    for (std::uint64_t k = 0; k < 10; ++k) {
        Rng rng = derived_rng(3, k);
        DensityMatrix rho = random_density_matrix(3, rng), sigma = random_density_matrix(3, rng);
        double d1 = renyi_divergence(rho, sigma, 0.999).value;
        double d2 = renyi_divergence(rho, sigma, 0.9999).value;
        // D_alpha is smooth at 1: linear extrapolation in (1 - alpha).
        double extrapolated = d2 + (d2 - d1) / 9.0;
        EXPECT_NEAR(extrapolated, relative_entropy(rho, sigma).value, 1e-6);
    }
}

TEST(nussbaum_szkola, commuting_pair_is_diagonal) {
    // Each state sorts its own eigenvalues, so the shared eigenbasis shows up as a
    // permutation pattern: one nonzero overlap per row and column.
    DensityMatrix rho = diagonal({0.6, 0.3, 0.1}), sigma = diagonal({0.2, 0.5, 0.3});
    auto [p, q] = nussbaum_szkola(rho, sigma);
    std::vector<std::pair<double, double>> matched;
    for (int i = 0; i < 3; ++i) {
        int nonzero = 0;
        for (int j = 0; j < 3; ++j) {
            if (p.weights(i, j) > 1e-12) {
                ++nonzero;
                matched.emplace_back(p.weights(i, j), q.weights(i, j));
            }
        }
        EXPECT_EQ(nonzero, 1);
    }
    std::sort(matched.begin(), matched.end());
    EXPECT_NEAR(matched[0].first, 0.1, 1e-12);
    EXPECT_NEAR(matched[0].second, 0.3, 1e-12);
    EXPECT_NEAR(matched[1].first, 0.3, 1e-12);
    EXPECT_NEAR(matched[1].second, 0.5, 1e-12);
    EXPECT_NEAR(matched[2].first, 0.6, 1e-12);
    EXPECT_NEAR(matched[2].second, 0.2, 1e-12);
}

TEST(nussbaum_szkola, preserves_renyi_divergence) {
    for (std::uint64_t k = 0; k < 20; ++k) {
        Rng rng = derived_rng(4, k);
        DensityMatrix rho = random_density_matrix(3, rng), sigma = random_density_matrix(3, rng);
        auto [p, q] = nussbaum_szkola(rho, sigma);
        EXPECT_NEAR(p.total(), 1.0, 1e-10);
        EXPECT_NEAR(q.total(), 1.0, 1e-10);
        EXPECT_GE(p.weights.minCoeff(), 0.0);
        for (int i = 1; i <= 9; ++i) {
            double a = i / 10.0;
            EXPECT_NEAR(renyi_divergence(rho, sigma, a).value, classical_renyi(p, q, a).value, 1e-8);
        }
        EXPECT_NEAR(relative_entropy(rho, sigma).value, classical_relative_entropy(p, q).value, 1e-8);
    }
}

TEST(nussbaum_szkola, equal_states_give_equal_distributions) {
    Rng rng = derived_rng(5, 0);
    DensityMatrix rho = random_density_matrix(4, rng);
    auto [p, q] = nussbaum_szkola(rho, rho);
    EXPECT_LE((p.weights - q.weights).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(classical_renyi, bernoulli_spot_value) {
    const double p = 0.3, q = 0.8;
    JointDistribution a{Eigen::MatrixXd(1, 2)}, b{Eigen::MatrixXd(1, 2)};
    a.weights << p, 1.0 - p;
    b.weights << q, 1.0 - q;
    double expect = -2.0 * std::log2(std::sqrt(p * q) + std::sqrt((1.0 - p) * (1.0 - q)));
    EXPECT_NEAR(classical_renyi(a, b, 0.5).value, expect, 1e-14);
    EXPECT_NEAR(classical_renyi(a, a, 0.5).value, 0.0, 1e-14);
}

TEST(spectral_pair, agrees_with_matrix_functions) {
    Rng rng = derived_rng(6, 0);
    DensityMatrix rho = random_density_matrix(3, rng), sigma = random_density_matrix(3, rng);
    SpectralPair pair(rho, sigma);
    for (double a : {0.0, 0.25, 0.5, 1.0}) {
        EXPECT_NEAR(pair.overlap(a), renyi_trace_term(rho, sigma, a), 1e-12);
    }
    EXPECT_NEAR(pair.forward_relative_entropy().value, relative_entropy(rho, sigma).value, 1e-10);
    EXPECT_NEAR(pair.backward_relative_entropy().value, relative_entropy(sigma, rho).value, 1e-10);
    EXPECT_NEAR(pair.swapped().chernoff_function(0.3), pair.chernoff_function(0.7), 1e-12);
    // Slope at zero by finite differences.
    double h = 1e-6;
    EXPECT_NEAR(pair.chernoff_slope_at_zero(), (pair.chernoff_function(h) - pair.chernoff_function(0.0)) / h, 1e-4);
}

TEST(renyi_divergence_zero, support_projection) {
    DensityMatrix zero = DensityMatrix::basis_state(2, 0);
    EXPECT_NEAR(renyi_divergence_zero(zero, plus_state()).value, 1.0, 1e-12);
    EXPECT_NEAR(renyi_divergence_zero(DensityMatrix::maximally_mixed(2), zero).value, 0.0, 1e-12);
}

}  // namespace
}  // namespace qchd
