#include "qchd/linalg.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qchd/errors.h"

namespace qchd {

double hermiticity_residual(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("HermitianOperator: matrix is not square");
    }
    if (m.size() > 0) {
        double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        double residual = hermiticity_residual(m);
        if (residual > kHermitianTol * scale) {
            std::ostringstream msg;
            msg << "NonHermitian: max |H - H^dagger| entry = " << residual;
            throw NonHermitian(msg.str());
        }
    }
    m_ = (m + m.adjoint()) / 2.0;
}

HermitianOperator HermitianOperator::hermitian_part(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("hermitian_part: matrix is not square");
    }
    return HermitianOperator((m + m.adjoint()) / 2.0, Unchecked{});
}

namespace {

HermitianOperator validated_density(HermitianOperator op) {
    if (op.dim() == 0) {
        throw NotDensityMatrix("DensityMatrix: empty matrix");
    }
    double tr = op.matrix().trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace == 1 violated, residual " << std::abs(tr - 1.0);
        throw NotDensityMatrix(msg.str());
    }
    double lo = lambda_min(op);
    if (lo < -kPsdTol) {
        std::ostringstream msg;
        msg << "DensityMatrix: positivity violated, smallest eigenvalue " << lo;
        throw NotDensityMatrix(msg.str());
    }
    return op;
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix &m) : op_(validated_density(HermitianOperator(m))) {
}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(validated_density(std::move(op))) {
}

DensityMatrix DensityMatrix::pure(const ComplexVector &psi) {
    double n = psi.norm();
    if (n == 0) {
        throw ParameterOutOfRange("DensityMatrix::pure: zero vector");
    }
    ComplexVector v = psi / n;
    return DensityMatrix(HermitianOperator::hermitian_part(v * v.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw ParameterOutOfRange("basis_state: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return pure(v);
}

EigenDecomposition hermitian_eig(const HermitianOperator &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double lambda_min(const HermitianOperator &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    for (const auto &f : factors) {
        out = kron(out, f);
    }
    return out;
}

namespace {

std::size_t product(std::span<const std::size_t> dims) {
    std::size_t p = 1;
    for (auto d : dims) {
        p *= d;
    }
    return p;
}

// Mixed-radix digits of `index`, most significant first.
void digits_of(std::size_t index, std::span<const std::size_t> dims, std::vector<std::size_t> &out) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    if (product(dims) != rho.dim()) {
        throw DimensionMismatch("partial_trace: product of subsystem dims != state dim");
    }
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) {
            throw DimensionMismatch("partial_trace: kept subsystem index out of range");
        }
        kept[k] = true;
    }
    std::size_t out_dim = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (kept[k]) {
            out_dim *= dims[k];
        }
    }

    auto n = static_cast<Eigen::Index>(out_dim);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    std::vector<std::size_t> rd(dims.size()), cd(dims.size());
    const ComplexMatrix &m = rho.matrix();
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        digits_of(r, dims, rd);
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            digits_of(c, dims, cd);
            bool diagonal_in_traced = true;
            std::size_t ro = 0, co = 0;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                if (kept[k]) {
                    ro = ro * dims[k] + rd[k];
                    co = co * dims[k] + cd[k];
                } else if (rd[k] != cd[k]) {
                    diagonal_in_traced = false;
                    break;
                }
            }
            if (diagonal_in_traced) {
                out(static_cast<Eigen::Index>(ro), static_cast<Eigen::Index>(co)) +=
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return DensityMatrix(HermitianOperator::hermitian_part(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, std::span<const std::size_t> dims, std::size_t which) {
    std::size_t total = product(dims);
    if (total != static_cast<std::size_t>(m.rows()) || m.rows() != m.cols()) {
        throw DimensionMismatch("partial_transpose: dims do not match matrix");
    }
    if (which >= dims.size()) {
        throw DimensionMismatch("partial_transpose: subsystem index out of range");
    }
    ComplexMatrix out(m.rows(), m.cols());
    std::vector<std::size_t> rd(dims.size()), cd(dims.size());
    for (std::size_t r = 0; r < total; ++r) {
        digits_of(r, dims, rd);
        for (std::size_t c = 0; c < total; ++c) {
            digits_of(c, dims, cd);
            std::swap(rd[which], cd[which]);
            std::size_t r2 = 0, c2 = 0;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                r2 = r2 * dims[k] + rd[k];
                c2 = c2 * dims[k] + cd[k];
            }
            std::swap(rd[which], cd[which]);
            out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) =
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

double trace_norm(const ComplexMatrix &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    if (a.rows() == a.cols() && hermiticity_residual(a) <= 1e-14 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((a + a.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().sum();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues().sum();
}

ComplexMatrix matrix_power(const HermitianOperator &h, double p) {
    auto eig = hermitian_eig(h);
    RealVector powered(eig.eigenvalues.size());
    double scale = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < powered.size(); ++i) {
        double lam = eig.eigenvalues(i);
        if (lam <= 1e-14 * scale) {
            powered(i) = 0.0;
        } else {
            powered(i) = p == 0.0 ? 1.0 : std::pow(lam, p);
        }
    }
    return eig.eigenvectors * powered.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix sqrt_psd(const HermitianOperator &h) {
    return matrix_power(h, 0.5);
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch("fidelity: dimension mismatch");
    }
    double f = trace_norm(sqrt_psd(rho.op()) * sqrt_psd(sigma.op()));
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace qchd
