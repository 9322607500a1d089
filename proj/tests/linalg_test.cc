#include "qchd/linalg.h"

#include <cmath>

#include "gtest/gtest.h"
#include "qchd/bounds.h"
#include "qchd/channels.h"
#include "qchd/errors.h"
#include "qchd/random.h"

namespace qchd {
namespace {

ComplexMatrix pauli_z() {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

ComplexVector plus_vector() {
    return ComplexVector::Constant(2, 1.0 / std::sqrt(2.0));
}

TEST(hermitian_operator, rejects_non_hermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(HermitianOperator{m}, NonHermitian);
    EXPECT_THROW(HermitianOperator{ComplexMatrix::Zero(2, 3)}, DimensionMismatch);
}

TEST(density_matrix, invariants) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix{m}, NotDensityMatrix);
    EXPECT_THROW(DensityMatrix{pauli_z()}, NotDensityMatrix);
    DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
    EXPECT_NEAR(mixed.matrix().trace().real(), 1.0, 1e-15);
    DensityMatrix p = DensityMatrix::pure(ComplexVector::Constant(2, 3.0));
    EXPECT_NEAR(p.matrix()(0, 1).real(), 0.5, 1e-15);
}

TEST(hermitian_eig, identity_and_pauli_z) {
    auto id = hermitian_eig(HermitianOperator(ComplexMatrix::Identity(2, 2)));
    EXPECT_NEAR(id.eigenvalues(0), 1.0, 1e-15);
    EXPECT_NEAR(id.eigenvalues(1), 1.0, 1e-15);
    EXPECT_NEAR((id.eigenvectors.adjoint() * id.eigenvectors - ComplexMatrix::Identity(2, 2)).norm(), 0.0, 1e-12);

    auto z = hermitian_eig(HermitianOperator(pauli_z()));
    EXPECT_NEAR(z.eigenvalues(0), -1.0, 1e-15);
    EXPECT_NEAR(z.eigenvalues(1), 1.0, 1e-15);
}

TEST(hermitian_eig, random_reconstruction) {
    Rng rng = derived_rng(7, 0);
    for (int trial = 0; trial < 20; ++trial) {
        HermitianOperator h = random_hermitian(4, rng);
        auto e = hermitian_eig(h);
        ComplexMatrix v = e.eigenvectors;
        ComplexMatrix rebuilt = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
        EXPECT_LE((rebuilt - h.matrix()).norm(), 1e-10 * std::max(1.0, h.matrix().norm()));
        EXPECT_LE((v.adjoint() * v - ComplexMatrix::Identity(4, 4)).norm(), 1e-10);
        for (int i = 0; i + 1 < 4; ++i) {
            EXPECT_LE(e.eigenvalues(i), e.eigenvalues(i + 1));
        }
    }
}

TEST(kron, identities_and_eigenvector) {
    EXPECT_TRUE(
        kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)).isApprox(ComplexMatrix::Identity(4, 4)));
    ComplexVector k00 = ComplexVector::Zero(4);
    k00(0) = 1.0;
    ComplexMatrix zz = kron(pauli_z(), pauli_z());
    EXPECT_NEAR((zz * k00 - k00).norm(), 0.0, 1e-15);
}

TEST(kron, lambda_min_of_tensor_square) {
    auto [m, m_bar] = harrow_channels();
    auto pc = evaluate_combination(kraus_product_span(m, m_bar), harrow_ansatz_coefficients());
    ComplexMatrix pp = kron(pc.P, pc.P);
    // Independent oracle: Eigen's general solver on the explicit 16x16 product.
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(pp);
    double smallest = solver.eigenvalues().real().minCoeff();
    EXPECT_NEAR(smallest, pc.lambda_min * pc.lambda_min, 1e-12);
    EXPECT_NEAR(lambda_min(HermitianOperator::hermitian_part(pp)), pc.lambda_min * pc.lambda_min, 1e-12);
}

TEST(partial_trace, product_and_bell) {
    Rng rng = derived_rng(3, 0);
    DensityMatrix a = random_density_matrix(2, rng), b = random_density_matrix(3, rng);
    const std::size_t dims[] = {2, 3};
    const std::size_t keep_a[] = {0};
    const std::size_t keep_b[] = {1};
    DensityMatrix ab(kron(a.matrix(), b.matrix()));
    EXPECT_LE((partial_trace(ab, dims, keep_a).matrix() - a.matrix()).norm(), 1e-12);
    EXPECT_LE((partial_trace(ab, dims, keep_b).matrix() - b.matrix()).norm(), 1e-12);

    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const std::size_t qubits[] = {2, 2};
    EXPECT_LE((partial_trace(DensityMatrix::pure(bell), qubits, keep_a).matrix() - 0.5 * ComplexMatrix::Identity(2, 2))
                  .norm(),
              1e-12);
}

TEST(partial_trace, tripartite_matches_double_sum) {
    Rng rng = derived_rng(4, 0);
    DensityMatrix rho = random_density_matrix(12, rng);
    const std::size_t dims[] = {2, 3, 2};
    const std::size_t keep_c[] = {2};
    ComplexMatrix direct = ComplexMatrix::Zero(2, 2);
    for (int c = 0; c < 2; ++c) {
        for (int c2 = 0; c2 < 2; ++c2) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 3; ++b) {
                    direct(c, c2) += rho.matrix()(a * 6 + b * 2 + c, a * 6 + b * 2 + c2);
                }
            }
        }
    }
    EXPECT_LE((partial_trace(rho, dims, keep_c).matrix() - direct).norm(), 1e-12);

    const std::size_t keep_bc[] = {1, 2};
    const std::size_t inner_dims[] = {3, 2};
    const std::size_t inner_keep[] = {1};
    DensityMatrix two_step = partial_trace(partial_trace(rho, dims, keep_bc), inner_dims, inner_keep);
    EXPECT_LE((two_step.matrix() - direct).norm(), 1e-12);
}

TEST(trace_norm, values) {
    EXPECT_NEAR(trace_norm(ComplexMatrix::Identity(2, 2)), 2.0, 1e-14);
    ComplexMatrix diff = DensityMatrix::basis_state(2, 0).matrix() - DensityMatrix::pure(plus_vector()).matrix();
    EXPECT_NEAR(trace_norm(diff), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(trace_norm(diff - diff), 0.0, 1e-15);
}

TEST(fidelity, values) {
    Rng rng = derived_rng(5, 0);
    DensityMatrix rho = random_density_matrix(3, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
    EXPECT_NEAR(fidelity(DensityMatrix::basis_state(2, 0), DensityMatrix::pure(plus_vector())), 1.0 / std::sqrt(2.0),
                1e-9);
}

TEST(fidelity, dominates_certificate_on_single_use_outputs) {
    auto [m, m_bar] = harrow_channels();
    auto pc = evaluate_combination(kraus_product_span(m, m_bar), harrow_ansatz_coefficients());
    double floor = std::pow(pc.lambda_min, 4);
    for (std::uint64_t k = 0; k < 200; ++k) {
        Rng rng = derived_rng(11, k);
        ComplexVector psi = haar_pure_vector(16, rng);
        double f = fidelity(apply_extended_pure(m, psi, 4), apply_extended_pure(m_bar, psi, 4));
        EXPECT_GE(f * f, floor - 1e-12);
    }
}

TEST(matrix_power, support_projector_and_square_root) {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 0.25;
    HermitianOperator h(d);
    ComplexMatrix proj = matrix_power(h, 0.0);
    EXPECT_NEAR(proj(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(proj(1, 1).real(), 0.0, 1e-15);
    EXPECT_NEAR(sqrt_psd(h)(0, 0).real(), 0.5, 1e-15);
}

TEST(hermiticity_residual, measures_asymmetry) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    EXPECT_EQ(hermiticity_residual(m), 0.0);
    m(0, 1) = 1.0;
    EXPECT_GT(hermiticity_residual(m), 0.1);
}

}  // namespace
}  // namespace qchd
