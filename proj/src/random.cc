#include "qchd/random.h"

namespace qchd {

Rng derived_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            double re = normal(rng);
            double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

}  // namespace

ComplexVector haar_pure_vector(std::size_t dim, Rng &rng) {
    ComplexVector v = ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

DensityMatrix haar_pure_state(std::size_t dim, Rng &rng) {
    return DensityMatrix::pure(haar_pure_vector(dim, rng));
}

DensityMatrix random_density_matrix(std::size_t dim, Rng &rng) {
    ComplexMatrix g = ginibre(dim, dim, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(HermitianOperator::hermitian_part(rho));
}

HermitianOperator random_hermitian(std::size_t dim, Rng &rng) {
    return HermitianOperator::hermitian_part(ginibre(dim, dim, rng));
}

ComplexMatrix haar_unitary(std::size_t dim, Rng &rng) {
    ComplexMatrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        Complex d = r(k, k);
        if (std::abs(d) > 0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

}  // namespace qchd
