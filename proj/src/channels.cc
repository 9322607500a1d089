#include "qchd/channels.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qchd/errors.h"

namespace qchd {

namespace {

Eigen::Index idx(std::size_t n) {
    return static_cast<Eigen::Index>(n);
}

ComplexMatrix ket_bra(const ComplexVector &ket, const ComplexVector &bra) {
    return ket * bra.adjoint();
}

ComplexVector basis(std::size_t dim, std::size_t k) {
    ComplexVector v = ComplexVector::Zero(idx(dim));
    v(idx(k)) = 1.0;
    return v;
}

void check_probability(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << what << " = " << p << " outside [0, 1]";
        throw ParameterOutOfRange(msg.str());
    }
}

}  // namespace

KrausChannel::KrausChannel(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
    if (in_dim_ == 0 || out_dim_ == 0 || kraus_.empty()) {
        throw InvalidChannel("KrausChannel: empty dimensions or Kraus set");
    }
    for (const auto &e : kraus_) {
        if (e.rows() != idx(out_dim_) || e.cols() != idx(in_dim_)) {
            throw DimensionMismatch("KrausChannel: Kraus operator is not out_dim x in_dim");
        }
    }
    double residual = completeness_residual();
    if (residual > kCompletenessTol) {
        std::ostringstream msg;
        msg << "KrausChannel: completeness sum E^dagger E == I violated, residual " << residual;
        throw InvalidChannel(msg.str());
    }
}

double KrausChannel::completeness_residual() const {
    ComplexMatrix sum = ComplexMatrix::Zero(idx(in_dim_), idx(in_dim_));
    for (const auto &e : kraus_) {
        sum.noalias() += e.adjoint() * e;
    }
    sum -= ComplexMatrix::Identity(idx(in_dim_), idx(in_dim_));
    return sum.cwiseAbs().maxCoeff();
}

ComplexMatrix KrausChannel::apply_matrix(const ComplexMatrix &x) const {
    ComplexMatrix out = ComplexMatrix::Zero(idx(out_dim_), idx(out_dim_));
    for (const auto &e : kraus_) {
        out.noalias() += e * x * e.adjoint();
    }
    return out;
}

DensityMatrix apply(const KrausChannel &ch, const DensityMatrix &rho) {
    if (rho.dim() != ch.in_dim()) {
        throw DimensionMismatch("apply: state dimension != channel input dimension");
    }
    return DensityMatrix(HermitianOperator::hermitian_part(ch.apply_matrix(rho.matrix())));
}

DensityMatrix apply_extended(const KrausChannel &ch, const DensityMatrix &rho, std::size_t ref_dim) {
    if (rho.dim() != ref_dim * ch.in_dim()) {
        throw DimensionMismatch("apply_extended: state dimension != ref_dim * in_dim");
    }
    ComplexMatrix id = ComplexMatrix::Identity(idx(ref_dim), idx(ref_dim));
    auto n = idx(ref_dim * ch.out_dim());
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (const auto &e : ch.kraus()) {
        ComplexMatrix k = kron(id, e);
        out.noalias() += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix(HermitianOperator::hermitian_part(out));
}

DensityMatrix apply_extended_pure(const KrausChannel &ch, const ComplexVector &psi, std::size_t ref_dim) {
    if (static_cast<std::size_t>(psi.size()) != ref_dim * ch.in_dim()) {
        throw DimensionMismatch("apply_extended_pure: vector length != ref_dim * in_dim");
    }
    // psi indexed r * in_dim + a, viewed as a ref_dim x in_dim matrix; (I (x) E) psi = Psi E^T.
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    ComplexVector unit = psi / psi.norm();
    Eigen::Map<const RowMajor> PsiUnit(unit.data(), idx(ref_dim), idx(ch.in_dim()));
    auto out_len = idx(ref_dim * ch.out_dim());
    ComplexMatrix branches(out_len, static_cast<Eigen::Index>(ch.kraus().size()));
    for (std::size_t k = 0; k < ch.kraus().size(); ++k) {
        RowMajor w = PsiUnit * ch.kraus()[k].transpose();
        branches.col(idx(k)) = Eigen::Map<const ComplexVector>(w.data(), out_len);
    }
    return DensityMatrix(HermitianOperator::hermitian_part(branches * branches.adjoint()));
}

KrausChannel tensor_product(const KrausChannel &a, const KrausChannel &b) {
    std::vector<ComplexMatrix> ks;
    ks.reserve(a.kraus().size() * b.kraus().size());
    for (const auto &ea : a.kraus()) {
        for (const auto &eb : b.kraus()) {
            ks.push_back(kron(ea, eb));
        }
    }
    return KrausChannel(a.in_dim() * b.in_dim(), a.out_dim() * b.out_dim(), std::move(ks));
}

KrausChannel tensor_power(const KrausChannel &ch, std::size_t n, std::size_t dimension_cap) {
    if (n == 0) {
        throw ParameterOutOfRange("tensor_power: n must be >= 1");
    }
    double in_total = std::pow(static_cast<double>(ch.in_dim()), static_cast<double>(n));
    double out_total = std::pow(static_cast<double>(ch.out_dim()), static_cast<double>(n));
    if (std::max(in_total, out_total) > static_cast<double>(dimension_cap)) {
        std::ostringstream msg;
        msg << "tensor_power: dimension " << std::max(in_total, out_total) << " exceeds cap " << dimension_cap;
        throw BudgetExceeded(msg.str());
    }
    KrausChannel out = ch;
    for (std::size_t k = 1; k < n; ++k) {
        out = tensor_product(out, ch);
    }
    return out;
}

KrausChannel identity_channel(std::size_t dim) {
    return KrausChannel(dim, dim, {ComplexMatrix::Identity(idx(dim), idx(dim))});
}

KrausChannel unitary_channel(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        throw DimensionMismatch("unitary_channel: matrix is not square");
    }
    auto d = static_cast<std::size_t>(u.rows());
    return KrausChannel(d, d, {u});
}

const std::array<ComplexMatrix, 3> &pauli_matrices() {
    static const std::array<ComplexMatrix, 3> sigma = [] {
        const Complex i(0.0, 1.0);
        ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
        x << 0.0, 1.0, 1.0, 0.0;
        y << 0.0, -i, i, 0.0;
        z << 1.0, 0.0, 0.0, -1.0;
        return std::array<ComplexMatrix, 3>{x, y, z};
    }();
    return sigma;
}

KrausChannel depolarizing(double q) {
    check_probability(q, "depolarizing: q");
    return mix_with_completely_depolarizing(identity_channel(2), q);
}

KrausChannel pauli(const std::array<double, 4> &p) {
    double total = 0.0;
    for (double pk : p) {
        check_probability(pk, "pauli: probability");
        total += pk;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "pauli: probabilities sum to " << total << ", not 1";
        throw ParameterOutOfRange(msg.str());
    }
    std::vector<ComplexMatrix> ks;
    ks.push_back(std::sqrt(p[0]) * ComplexMatrix::Identity(2, 2));
    for (int k = 0; k < 3; ++k) {
        ks.push_back(std::sqrt(p[static_cast<std::size_t>(k + 1)]) * pauli_matrices()[static_cast<std::size_t>(k)]);
    }
    return KrausChannel(2, 2, std::move(ks));
}

KrausChannel amplitude_damping(double gamma) {
    check_probability(gamma, "amplitude_damping: gamma");
    ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
    a0(0, 1) = std::sqrt(gamma);
    a1(0, 0) = 1.0;
    a1(1, 1) = std::sqrt(1.0 - gamma);
    return KrausChannel(2, 2, {a0, a1});
}

KrausChannel mix_with_completely_depolarizing(const KrausChannel &ch, double eps) {
    check_probability(eps, "mix_with_completely_depolarizing: eps");
    std::vector<ComplexMatrix> ks;
    for (const auto &e : ch.kraus()) {
        ks.push_back(std::sqrt(1.0 - eps) * e);
    }
    double w = std::sqrt(eps / static_cast<double>(ch.out_dim()));
    for (std::size_t k = 0; k < ch.out_dim(); ++k) {
        for (std::size_t j = 0; j < ch.in_dim(); ++j) {
            ks.push_back(w * ket_bra(basis(ch.out_dim(), k), basis(ch.in_dim(), j)));
        }
    }
    return KrausChannel(ch.in_dim(), ch.out_dim(), std::move(ks));
}

std::pair<KrausChannel, KrausChannel> harrow_channels() {
    const double r = std::sqrt(0.5);
    ComplexVector k0 = basis(2, 0), k1 = basis(2, 1);
    ComplexVector plus = (k0 + k1) * r, minus = (k0 - k1) * r;
    // Input kets on A (x) C, |a c> at index 2a + c.
    auto ac = [](const ComplexVector &a, const ComplexVector &c) { return ComplexVector(kron(a, c)); };

    std::vector<ComplexMatrix> e{
        ket_bra(k0, ac(k0, k0)),     ket_bra(k0, ac(k1, k0)),     ket_bra(k0, ac(k0, k1)),
        ket_bra(k0, ac(k1, k1)) * r, ket_bra(k1, ac(k1, k1)) * r,
    };
    std::vector<ComplexMatrix> f{
        ket_bra(plus, ac(k0, k0)),      ket_bra(plus, ac(k1, k0)),      ket_bra(k1, ac(plus, k1)),
        ket_bra(k0, ac(minus, k1)) * r, ket_bra(k1, ac(minus, k1)) * r,
    };
    return {KrausChannel(4, 2, std::move(e)), KrausChannel(4, 2, std::move(f))};
}

ComplexMatrix choi_matrix(const KrausChannel &ch) {
    auto din = ch.in_dim(), dout = ch.out_dim();
    ComplexMatrix choi = ComplexMatrix::Zero(idx(din * dout), idx(din * dout));
    for (std::size_t i = 0; i < din; ++i) {
        for (std::size_t j = 0; j < din; ++j) {
            ComplexMatrix unit = ket_bra(basis(din, i), basis(din, j));
            choi.block(idx(i * dout), idx(j * dout), idx(dout), idx(dout)) = ch.apply_matrix(unit);
        }
    }
    return choi;
}

bool choi_is_ppt(const KrausChannel &ch, double tol) {
    std::array<std::size_t, 2> dims{ch.in_dim(), ch.out_dim()};
    ComplexMatrix pt = partial_transpose(choi_matrix(ch), dims, 1);
    return lambda_min(HermitianOperator::hermitian_part(pt)) >= -tol;
}

Vec3 bloch_vector(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw DimensionMismatch("bloch_vector: not a qubit state");
    }
    Vec3 r;
    for (int k = 0; k < 3; ++k) {
        r(k) = (pauli_matrices()[static_cast<std::size_t>(k)] * rho.matrix()).trace().real();
    }
    return r;
}

DensityMatrix state_from_bloch(const Vec3 &r) {
    if (r.norm() > 1.0 + 1e-12) {
        throw ParameterOutOfRange("state_from_bloch: |r| > 1");
    }
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    for (int k = 0; k < 3; ++k) {
        m += r(k) * pauli_matrices()[static_cast<std::size_t>(k)];
    }
    return DensityMatrix(HermitianOperator::hermitian_part(m / 2.0));
}

ComplexVector qubit_vector(double theta, double phi) {
    ComplexVector v(2);
    v(0) = std::cos(theta / 2.0);
    v(1) = std::polar(std::sin(theta / 2.0), phi);
    return v;
}

BlochAffine bloch_affine_of(const KrausChannel &ch) {
    if (ch.in_dim() != 2 || ch.out_dim() != 2) {
        throw DimensionMismatch("bloch_affine_of: channel is not qubit -> qubit");
    }
    const auto &s = pauli_matrices();
    BlochAffine b;
    ComplexMatrix image_of_identity = ch.apply_matrix(ComplexMatrix::Identity(2, 2));
    for (std::size_t k = 0; k < 3; ++k) {
        b.t(idx(k)) = 0.5 * (s[k] * image_of_identity).trace().real();
        for (std::size_t j = 0; j < 3; ++j) {
            b.T(idx(k), idx(j)) = 0.5 * (s[k] * ch.apply_matrix(s[j])).trace().real();
        }
    }
    return b;
}

ComplexMatrix BlochAffine::apply_matrix(const ComplexMatrix &x) const {
    const auto &s = pauli_matrices();
    Complex x0 = x.trace();
    Eigen::Vector3cd xv;
    for (std::size_t k = 0; k < 3; ++k) {
        xv(idx(k)) = (s[k] * x).trace();
    }
    Eigen::Vector3cd yv = x0 * t.cast<Complex>() + T.cast<Complex>() * xv;
    ComplexMatrix out = x0 * ComplexMatrix::Identity(2, 2);
    for (std::size_t k = 0; k < 3; ++k) {
        out += yv(idx(k)) * s[k];
    }
    return out / 2.0;
}

ComplexMatrix BlochAffine::choi_matrix() const {
    ComplexMatrix choi = ComplexMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            choi.block(idx(2 * i), idx(2 * j), 2, 2) = apply_matrix(ket_bra(basis(2, i), basis(2, j)));
        }
    }
    return choi;
}

bool BlochAffine::is_completely_positive(double tol) const {
    return lambda_min(HermitianOperator::hermitian_part(choi_matrix())) >= -tol;
}

CqChannel::CqChannel(std::vector<std::string> alphabet, std::vector<DensityMatrix> outputs)
    : alphabet_(std::move(alphabet)), outputs_(std::move(outputs)) {
    if (alphabet_.empty() || alphabet_.size() != outputs_.size()) {
        throw InvalidChannel("CqChannel: alphabet and outputs must be nonempty and of equal length");
    }
    for (const auto &rho : outputs_) {
        if (rho.dim() != outputs_.front().dim()) {
            throw DimensionMismatch("CqChannel: outputs have different dimensions");
        }
    }
    auto sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidChannel("CqChannel: duplicate alphabet label");
    }
}

const DensityMatrix &CqChannel::output(const std::string &label) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
    if (it == alphabet_.end()) {
        throw InvalidChannel("CqChannel: unknown label '" + label + "'");
    }
    return outputs_[static_cast<std::size_t>(it - alphabet_.begin())];
}

namespace {

// sqrt(lambda_k) |u_k> for the nonzero spectrum of rho.
std::vector<ComplexVector> weighted_eigenvectors(const DensityMatrix &rho) {
    auto eig = hermitian_eig(rho.op());
    std::vector<ComplexVector> out;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
        double lam = eig.eigenvalues(k);
        if (lam > 1e-15) {
            out.emplace_back(std::sqrt(lam) * eig.eigenvectors.col(k));
        }
    }
    return out;
}

}  // namespace

KrausChannel cq_as_qq(const CqChannel &n) {
    std::size_t in_dim = n.size();
    std::vector<ComplexMatrix> ks;
    for (std::size_t x = 0; x < in_dim; ++x) {
        for (const auto &u : weighted_eigenvectors(n.outputs()[x])) {
            ks.push_back(ket_bra(u, basis(in_dim, x)));
        }
    }
    // Renormalise roundoff in the eigenvalue sums so completeness holds to 1e-15.
    for (std::size_t x = 0; x < in_dim; ++x) {
        double w = 0.0;
        for (const auto &k : ks) {
            w += k.col(idx(x)).squaredNorm();
        }
        for (auto &k : ks) {
            k.col(idx(x)) /= std::sqrt(w);
        }
    }
    return KrausChannel(in_dim, n.out_dim(), std::move(ks));
}

PvmStatePreparer::PvmStatePreparer(std::vector<ComplexMatrix> pvm, std::vector<DensityMatrix> prepared)
    : pvm_(std::move(pvm)), prepared_(std::move(prepared)) {
    if (pvm_.empty() || pvm_.size() != prepared_.size()) {
        throw InvalidChannel("PvmStatePreparer: need one prepared state per projector");
    }
    auto d = pvm_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t x = 0; x < pvm_.size(); ++x) {
        if (pvm_[x].rows() != d || pvm_[x].cols() != d) {
            throw DimensionMismatch("PvmStatePreparer: projectors of different sizes");
        }
        sum += pvm_[x];
        for (std::size_t y = 0; y < pvm_.size(); ++y) {
            ComplexMatrix expected = x == y ? pvm_[x] : ComplexMatrix::Zero(d, d);
            double residual = (pvm_[x] * pvm_[y] - expected).cwiseAbs().maxCoeff();
            if (residual > kCompletenessTol) {
                std::ostringstream msg;
                msg << "PvmStatePreparer: orthogonality E_x E_y == delta_xy E_x violated, residual " << residual;
                throw InvalidChannel(msg.str());
            }
        }
    }
    double residual = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (residual > kCompletenessTol) {
        std::ostringstream msg;
        msg << "PvmStatePreparer: completeness sum E_x == I violated, residual " << residual;
        throw InvalidChannel(msg.str());
    }
    for (const auto &rho : prepared_) {
        if (rho.dim() != prepared_.front().dim()) {
            throw DimensionMismatch("PvmStatePreparer: prepared states of different sizes");
        }
    }
}

KrausChannel PvmStatePreparer::to_channel() const {
    auto in_dim = static_cast<std::size_t>(pvm_.front().rows());
    std::vector<ComplexMatrix> ks;
    for (std::size_t x = 0; x < pvm_.size(); ++x) {
        auto eig = hermitian_eig(HermitianOperator::hermitian_part(pvm_[x]));
        auto prep = weighted_eigenvectors(prepared_[x]);
        for (Eigen::Index m = 0; m < eig.eigenvalues.size(); ++m) {
            if (eig.eigenvalues(m) < 0.5) {
                continue;
            }
            for (const auto &u : prep) {
                ks.push_back(ket_bra(u, eig.eigenvectors.col(m)));
            }
        }
    }
    return KrausChannel(in_dim, prepared_.front().dim(), std::move(ks));
}

}  // namespace qchd
