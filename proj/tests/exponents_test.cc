#include "qchd/exponents.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "qchd/errors.h"
#include "qchd/random.h"

namespace qchd {
namespace {

using Letter = std::pair<std::vector<double>, std::vector<double>>;

DensityMatrix diagonal(const std::vector<double> &w) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(w.size()), static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = w[i];
    }
    return DensityMatrix(m);
}

// Two-letter classical channels written as diagonal cq-channels.
const std::vector<Letter> kLetters{{{0.7, 0.2, 0.1}, {0.2, 0.3, 0.5}}, {{0.5, 0.4, 0.1}, {0.1, 0.1, 0.8}}};

CqChannel first_channel() {
    return CqChannel({"x0", "x1"}, {diagonal(kLetters[0].first), diagonal(kLetters[1].first)});
}
CqChannel second_channel() {
    return CqChannel({"x0", "x1"}, {diagonal(kLetters[0].second), diagonal(kLetters[1].second)});
}

// Scalar brute force over a dense alpha grid.
double phi(double a) {
    double best = -INFINITY;
    for (const auto &[p, q] : kLetters) {
        double s = 0.0;
        for (std::size_t y = 0; y < p.size(); ++y) {
            s += std::pow(p[y], a) * std::pow(q[y], 1.0 - a);
        }
        best = std::max(best, -std::log2(s));
    }
    return best;
}

double kl(const std::vector<double> &p, const std::vector<double> &q) {
    double s = 0.0;
    for (std::size_t y = 0; y < p.size(); ++y) {
        s += p[y] * std::log2(p[y] / q[y]);
    }
    return s;
}

double brute_B(double r) {
    double best = -INFINITY;
    for (int k = 1; k <= 200000; ++k) {
        double a = k / 200000.0;
        best = std::max(best, (phi(a) - (1.0 - a) * r) / a);
    }
    return best;
}

double brute_C(double a, double b) {
    double best = -INFINITY;
    for (int k = 0; k <= 200000; ++k) {
        double s = k / 200000.0;
        best = std::max(best, phi(s) - s * a - (1.0 - s) * b);
    }
    return best;
}

double forward_D() {
    return std::max(kl(kLetters[0].first, kLetters[0].second), kl(kLetters[1].first, kLetters[1].second));
}
double reverse_D() {
    return std::max(kl(kLetters[0].second, kLetters[0].first), kl(kLetters[1].second, kLetters[1].first));
}

TEST(divergence_profile, stein_values) {
    DivergenceProfile profile = cq_profile(first_channel(), second_channel());
    EXPECT_NEAR(profile.stein().value, forward_D(), 1e-12);
    EXPECT_NEAR(profile.reverse_stein().value, reverse_D(), 1e-12);
    EXPECT_NEAR(profile.swapped().stein().value, reverse_D(), 1e-12);
    EXPECT_NEAR(profile.chernoff_function(0.4), phi(0.4), 1e-12);
    EXPECT_THROW(DivergenceProfile({}), ParameterOutOfRange);
}

TEST(hoeffding_B, matches_brute_force) {
    CqChannel n = first_channel(), n_bar = second_channel();
    for (double r : {0.05, 0.2, 0.4, 0.6}) {
        auto opt = hoeffding_B(n, n_bar, r);
        EXPECT_NEAR(opt.value, brute_B(r), 1e-6) << "r=" << r;
        EXPECT_TRUE(opt.finite);
    }
}

TEST(hoeffding_B, endpoints) {
    CqChannel n = first_channel(), n_bar = second_channel();
    EXPECT_NEAR(hoeffding_B(n, n_bar, forward_D()).value, 0.0, 1e-9);
    EXPECT_NEAR(hoeffding_B(n, n_bar, 0.0).value, reverse_D(), 1e-9);
    auto above = hoeffding_B(n, n_bar, forward_D() + 0.5);
    EXPECT_TRUE(above.above_stein);
    EXPECT_EQ(above.value, 0.0);
    EXPECT_THROW(hoeffding_B(n, n_bar, -0.1), ROutOfRange);
}

TEST(hoeffding_B, optimum_dominates_grid) {
    DivergenceProfile profile = cq_profile(first_channel(), second_channel());
    const double r = 0.3;
    auto opt = hoeffding_B(profile, r);
    for (int k = 1; k < 100; ++k) {
        double a = k / 100.0;
        EXPECT_GE(opt.value + 1e-12, (profile.chernoff_function(a) - (1.0 - a) * r) / a);
    }
}

TEST(hoeffding_B, support_mismatch_is_infinite) {
    // phi(0) > 0 when the supports differ, so small r gives an infinite exponent.
    SpectralPair pair(diagonal({1.0, 0.0}), diagonal({0.5, 0.5}));
    auto opt = hoeffding_B(DivergenceProfile({pair}), 0.5);
    EXPECT_FALSE(opt.finite);
}

TEST(chernoff_C, matches_brute_force_and_symmetric_value) {
    CqChannel n = first_channel(), n_bar = second_channel();
    EXPECT_NEAR(chernoff_C(n, n_bar, 0.0, 0.0).value, brute_C(0.0, 0.0), 1e-9);
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0.1, 0.3}, {0.4, 0.1}, {-0.2, 0.0}}) {
        EXPECT_NEAR(chernoff_C(n, n_bar, a, b).value, brute_C(a, b), 1e-9);
    }
}

TEST(chernoff_C, shift_identity) {
    DivergenceProfile profile = cq_profile(first_channel(), second_channel());
    for (double c : {-0.3, 0.1, 0.7}) {
        EXPECT_NEAR(chernoff_C(profile, 0.2 - c, 0.1 - c).value, chernoff_C(profile, 0.2, 0.1).value + c, 1e-10);
    }
}

TEST(chernoff_C, identical_letter_and_band) {
    SpectralPair same(diagonal({0.3, 0.7}), diagonal({0.3, 0.7}));
    EXPECT_NEAR(chernoff_C(DivergenceProfile({same}), 0.0, 0.0).value, 0.0, 1e-12);
    DivergenceProfile profile = cq_profile(first_channel(), second_channel());
    EXPECT_THROW(chernoff_C(profile, 0.0, forward_D() + 0.1), ABOutOfRange);
    EXPECT_THROW(chernoff_C(profile, reverse_D() + 0.1, 0.0), ABOutOfRange);
}

TEST(solve_r_ab, band_edges_and_identity) {
    DivergenceProfile profile = cq_profile(first_channel(), second_channel());
    const double d = forward_D(), d_rev = reverse_D();
    EXPECT_NEAR(solve_r_ab(profile, 0.0, d), d, 1e-9);
    EXPECT_NEAR(solve_r_ab(profile, d_rev, 0.0), 0.0, 1e-9);
    for (double t : {-0.8 * d, -0.2 * d, 0.0, 0.5 * d_rev}) {
        const double b = 0.25, a = b + t;
        double r = solve_r_ab(profile, a, b);
        double c = chernoff_C(profile, a, b).value;
        EXPECT_NEAR(c, r - b, 1e-6);
        EXPECT_NEAR(c, hoeffding_B(profile, r).value - a, 1e-6);
    }
}

TEST(hoeffding_B, random_quantum_letters_vs_grid) {
    Rng rng = derived_rng(9, 0);
    std::vector<SpectralPair> letters;
    for (int k = 0; k < 3; ++k) {
        letters.emplace_back(random_density_matrix(3, rng), random_density_matrix(3, rng));
    }
    DivergenceProfile profile(letters);
    const double r = 0.5 * profile.stein().value;
    double grid = -INFINITY;
    for (int k = 1; k <= 100000; ++k) {
        double a = k / 100000.0;
        grid = std::max(grid, (profile.chernoff_function(a) - (1.0 - a) * r) / a);
    }
    EXPECT_NEAR(hoeffding_B(profile, r).value, grid, 1e-6);
}

}  // namespace
}  // namespace qchd
