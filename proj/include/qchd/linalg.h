#ifndef QCHD_LINALG_H
#define QCHD_LINALG_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qchd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;

/// Square complex matrix equal to its conjugate transpose (entrywise, 1e-12).
///
/// The stored matrix is the exact Hermitian part of the input, so downstream
/// eigensolvers never see the roundoff asymmetry that passed the check.
class HermitianOperator {
   public:
    explicit HermitianOperator(const ComplexMatrix &m);

    /// (m + m^dagger) / 2 without a Hermiticity check.
    static HermitianOperator hermitian_part(const ComplexMatrix &m);

    const ComplexMatrix &matrix() const {
        return m_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(m_.rows());
    }

   private:
    struct Unchecked {};
    HermitianOperator(ComplexMatrix m, Unchecked) : m_(std::move(m)) {
    }
    ComplexMatrix m_;
};

/// Positive semidefinite (eigenvalues >= -1e-10) operator of unit trace (1e-10).
class DensityMatrix {
   public:
    explicit DensityMatrix(const ComplexMatrix &m);
    explicit DensityMatrix(HermitianOperator op);

    /// |psi><psi| for a vector normalised internally.
    static DensityMatrix pure(const ComplexVector &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);
    /// |k><k| in the computational basis.
    static DensityMatrix basis_state(std::size_t dim, std::size_t k);

    const HermitianOperator &op() const {
        return op_;
    }
    const ComplexMatrix &matrix() const {
        return op_.matrix();
    }
    std::size_t dim() const {
        return op_.dim();
    }

   private:
    HermitianOperator op_;
};

/// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

EigenDecomposition hermitian_eig(const HermitianOperator &h);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

/// Partial trace keeping the subsystems listed in `keep` (in ascending order of
/// their position in `dims`). Subsystem 0 is the most significant tensor factor.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Partial transpose of the subsystem `which` in a bipartite-or-larger operator.
ComplexMatrix partial_transpose(const ComplexMatrix &m, std::span<const std::size_t> dims, std::size_t which);

/// Sum of singular values.
double trace_norm(const ComplexMatrix &a);

/// F(rho, sigma) = || sqrt(rho) sqrt(sigma) ||_1.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// h^p through the eigendecomposition with negative eigenvalues clamped to 0.
/// For p > 0, 0^p = 0; for p == 0 the result is the support projector.
ComplexMatrix matrix_power(const HermitianOperator &h, double p);

/// Principal square root of a positive semidefinite operator (clamped).
ComplexMatrix sqrt_psd(const HermitianOperator &h);

/// Smallest eigenvalue of a Hermitian operator.
double lambda_min(const HermitianOperator &h);

double hermiticity_residual(const ComplexMatrix &m);

}  // namespace qchd

#endif
