#include "qchd/strategies.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "qchd/errors.h"
#include "qchd/random.h"

namespace qchd {
namespace {

DensityMatrix plus_state() {
    return DensityMatrix::pure(ComplexVector::Constant(2, std::sqrt(0.5)));
}

TEST(helstrom_error, spot_values) {
    DensityMatrix zero = DensityMatrix::basis_state(2, 0), one = DensityMatrix::basis_state(2, 1);
    EXPECT_NEAR(helstrom_error(zero, zero), 0.5, 1e-15);
    EXPECT_NEAR(helstrom_error(zero, one), 0.0, 1e-15);
    EXPECT_NEAR(helstrom_error(zero, plus_state()), 0.5 * (1.0 - std::sqrt(0.5)), 1e-14);
}

TEST(helstrom_report, error_types_sum) {
    Rng rng = derived_rng(3, 0);
    DensityMatrix rho = random_density_matrix(3, rng), sigma = random_density_matrix(3, rng);
    auto r = helstrom_report(rho, sigma, 1);
    EXPECT_NEAR(r.bayes, 0.5 * (r.type1 + r.type2), 1e-15);
    EXPECT_NEAR(r.bayes, helstrom_error(rho, sigma), 1e-12);
    EXPECT_GE(r.type1, 0.0);
    EXPECT_GE(r.type2, 0.0);
}

TEST(parallel_error, single_use_is_helstrom_of_outputs) {
    auto [m, m_bar] = harrow_channels();
    DensityMatrix in = DensityMatrix::basis_state(4, 0);
    auto r = parallel_error(m, m_bar, {{in}});
    EXPECT_EQ(r.n, 1u);
    EXPECT_NEAR(r.bayes, helstrom_error(apply(m, in), apply(m_bar, in)), 1e-14);
    EXPECT_GT(r.bayes, 0.0);
}

TEST(parallel_error, identical_channels_and_monotone_in_n) {
    KrausChannel ch = depolarizing(0.3);
    EXPECT_NEAR(parallel_error(ch, ch, {{plus_state(), plus_state()}}).bayes, 0.5, 1e-12);

    KrausChannel a = depolarizing(0.2);
    KrausChannel b = mix_with_completely_depolarizing(unitary_channel(pauli_matrices()[0]), 0.2);
    double previous = 1.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<DensityMatrix> inputs(n, DensityMatrix::basis_state(2, 0));
        double e = parallel_error(a, b, {inputs}).bayes;
        EXPECT_LE(e, previous + 1e-12) << "n=" << n;
        previous = e;
    }
    std::vector<DensityMatrix> many(7, DensityMatrix::basis_state(2, 0));
    EXPECT_THROW(parallel_error(a, b, {many}), BudgetExceeded);
}

TEST(run_adaptive_script, harrow_protocol_is_perfect) {
    auto [m, m_bar] = harrow_channels();
    auto r = run_adaptive_script(m, m_bar, harrow_adaptive_script());
    EXPECT_EQ(r.n, 2u);
    EXPECT_LE(r.bayes, 1e-12);
    EXPECT_LE(r.type1, 1e-12);
    EXPECT_LE(r.type2, 1e-12);
}

TEST(run_adaptive_script, noise_removes_perfect_separation) {
    auto [m, m_bar] = harrow_channels();
    auto r = run_adaptive_script(mix_with_completely_depolarizing(m, 0.05),
                                 mix_with_completely_depolarizing(m_bar, 0.05), harrow_adaptive_script());
    EXPECT_GT(r.bayes, 1e-6);
    EXPECT_LT(r.bayes, 0.5);
}

TEST(run_adaptive_script, fixed_inputs_reduce_to_parallel) {
    KrausChannel a = amplitude_damping(0.3), b = depolarizing(0.4);
    AdaptiveScript script{plus_state(), {fixed_input(DensityMatrix::basis_state(2, 1))}, std::nullopt};
    double adaptive = run_adaptive_script(a, b, script).bayes;
    double parallel = parallel_error(a, b, {{plus_state(), DensityMatrix::basis_state(2, 1)}}).bayes;
    EXPECT_NEAR(adaptive, parallel, 1e-12);
}

TEST(run_adaptive_script, explicit_measurement) {
    // Measuring |0><0| after one use of identity vs bit flip on |0>.
    AdaptiveScript script{
        DensityMatrix::basis_state(2, 0), {}, ComplexMatrix(DensityMatrix::basis_state(2, 0).matrix())};
    auto r = run_adaptive_script(identity_channel(2), unitary_channel(pauli_matrices()[0]), script);
    EXPECT_NEAR(r.bayes, 0.0, 1e-15);
    // A useless measurement (identity) always says M.
    AdaptiveScript blind{DensityMatrix::basis_state(2, 0), {}, ComplexMatrix(ComplexMatrix::Identity(2, 2))};
    auto rb = run_adaptive_script(identity_channel(2), unitary_channel(pauli_matrices()[0]), blind);
    EXPECT_NEAR(rb.type1, 0.0, 1e-15);
    EXPECT_NEAR(rb.type2, 1.0, 1e-15);
}

// Direct enumeration for n = 1: min over x of sum_y min(2^a W, 2^b W').
double one_shot(const ClassicalChannelPair &pair, double a, double b) {
    double best = INFINITY;
    for (Eigen::Index x = 0; x < pair.w().rows(); ++x) {
        double s = 0.0;
        for (Eigen::Index y = 0; y < pair.w().cols(); ++y) {
            s += std::min(std::exp2(a) * pair.w()(x, y), std::exp2(b) * pair.w_bar()(x, y));
        }
        best = std::min(best, s);
    }
    return best;
}

ClassicalChannelPair random_pair(std::uint64_t seed, int inputs, int outputs) {
    Rng rng = derived_rng(seed, 0);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Eigen::MatrixXd w(inputs, outputs), wb(inputs, outputs);
    for (int x = 0; x < inputs; ++x) {
        for (int y = 0; y < outputs; ++y) {
            w(x, y) = u(rng);
            wb(x, y) = u(rng);
        }
        w.row(x) /= w.row(x).sum();
        wb.row(x) /= wb.row(x).sum();
    }
    return ClassicalChannelPair(w, wb);
}

TEST(classical_adaptive_optimum, single_use_enumeration) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto pair = random_pair(s, 2, 3);
        for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.3, -0.2}}) {
            EXPECT_NEAR(classical_adaptive_optimum(pair, 1, a, b), one_shot(pair, a, b), 1e-14);
            EXPECT_NEAR(classical_parallel_optimum(pair, 1, a, b), one_shot(pair, a, b), 1e-14);
        }
    }
}

TEST(classical_adaptive_optimum, never_worse_than_parallel) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto pair = random_pair(10 + s, 2, 2);
        for (std::size_t n = 1; n <= 5; ++n) {
            EXPECT_LE(classical_adaptive_optimum(pair, n, 0.0, 0.0),
                      classical_parallel_optimum(pair, n, 0.0, 0.0) + 1e-14);
        }
    }
}

TEST(classical_adaptive_optimum, degenerate_pairs) {
    Eigen::MatrixXd w(2, 2);
    w << 0.3, 0.7, 0.6, 0.4;
    ClassicalChannelPair same(w, w);
    EXPECT_NEAR(classical_adaptive_optimum(same, 3, 0.0, 0.0), 1.0, 1e-14);

    Eigen::MatrixXd p(1, 2), q(1, 2);
    p << 0.2, 0.8;
    q << 0.6, 0.4;
    ClassicalChannelPair single(p, q);
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_NEAR(classical_adaptive_optimum(single, n, 0.0, 0.0), classical_parallel_optimum(single, n, 0.0, 0.0),
                    1e-14);
    }
}

TEST(classical_adaptive_optimum, rate_approaches_chernoff) {
    auto pair = random_pair(31, 2, 2);
    const double c = classical_chernoff_exponent(pair);
    double first = -std::log2(classical_adaptive_optimum(pair, 1, 0.0, 0.0));
    double sixth = -std::log2(classical_adaptive_optimum(pair, 6, 0.0, 0.0)) / 6.0;
    EXPECT_LT(std::abs(sixth - c), std::abs(first - c));
}

TEST(classical_adaptive_optimum, budget_and_validation) {
    auto pair = random_pair(40, 3, 3);
    EXPECT_THROW(classical_adaptive_optimum(pair, 10, 0.0, 0.0), BudgetExceeded);
    Eigen::MatrixXd bad(1, 2), ok(1, 2);
    bad << 0.5, 0.6;
    ok << 0.5, 0.5;
    EXPECT_THROW(ClassicalChannelPair(bad, ok), InvalidChannel);
    EXPECT_THROW(ClassicalChannelPair(ok, Eigen::MatrixXd::Constant(2, 2, 0.5)), DimensionMismatch);
}

TEST(classical_chernoff_exponent, bernoulli_pair) {
    Eigen::MatrixXd p(1, 2), q(1, 2);
    p << 0.5, 0.5;
    q << 0.5, 0.5;
    EXPECT_NEAR(classical_chernoff_exponent(ClassicalChannelPair(p, q)), 0.0, 1e-12);
    // Symmetric pair: optimum at alpha = 1/2.
    p << 0.9, 0.1;
    q << 0.1, 0.9;
    EXPECT_NEAR(classical_chernoff_exponent(ClassicalChannelPair(p, q)), -std::log2(2.0 * std::sqrt(0.09)), 1e-9);
}

TEST(nonadaptive_floor_check, harrow_ansatz_floor_holds) {
    auto [m, m_bar] = harrow_channels();
    auto pc = evaluate_combination(kraus_product_span(m, m_bar), harrow_ansatz_coefficients());
    auto one = nonadaptive_floor_check(m, m_bar, pc, 1, 100, 5);
    EXPECT_TRUE(one.ok());
    EXPECT_EQ(one.samples, 100u);
    EXPECT_NEAR(one.floor, 0.25 * std::pow(harrow_ansatz_lambda_min(), 4), 1e-18);
    EXPECT_GE(one.min_error, one.floor);
    auto two = nonadaptive_floor_check(m, m_bar, pc, 2, 20, 6);
    EXPECT_TRUE(two.ok());
}

TEST(nonadaptive_floor_check, identical_channels_stay_at_half) {
    KrausChannel ch = depolarizing(0.3);
    auto span = kraus_product_span(ch, ch);
    std::vector<Complex> c(span.basis.size(), 0.0);
    for (std::size_t i = 0; i < span.left_count; ++i) {
        c[span.index(i, i)] = 1.0;
    }
    auto pc = evaluate_combination(span, c);
    ASSERT_TRUE(pc.positive());
    auto report = nonadaptive_floor_check(ch, ch, pc, 1, 50, 7);
    EXPECT_TRUE(report.ok());
    EXPECT_NEAR(report.min_error, 0.5, 1e-12);
}

}  // namespace
}  // namespace qchd
