#ifndef QCHD_CHANNELS_H
#define QCHD_CHANNELS_H

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qchd/linalg.h"

namespace qchd {

inline constexpr double kCompletenessTol = 1e-10;
inline constexpr std::size_t kDefaultDimensionCap = 64;

/// Completely positive trace-preserving map in Kraus form, rho -> sum_i E_i rho E_i^dagger.
/// Each E_i is out_dim x in_dim; sum_i E_i^dagger E_i = I within 1e-10.
class KrausChannel {
   public:
    KrausChannel(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus);

    std::size_t in_dim() const {
        return in_dim_;
    }
    std::size_t out_dim() const {
        return out_dim_;
    }
    const std::vector<ComplexMatrix> &kraus() const {
        return kraus_;
    }

    /// Kraus action on an arbitrary (not necessarily positive) in_dim x in_dim matrix.
    ComplexMatrix apply_matrix(const ComplexMatrix &x) const;

    /// max |sum E^dagger E - I| entry.
    double completeness_residual() const;

   private:
    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<ComplexMatrix> kraus_;
};

DensityMatrix apply(const KrausChannel &ch, const DensityMatrix &rho);

/// (id_R (x) ch)(rho) for rho on R (x) A with dim R = ref_dim.
DensityMatrix apply_extended(const KrausChannel &ch, const DensityMatrix &rho, std::size_t ref_dim);

/// Output of (id_R (x) ch) on a pure input given as a vector on R (x) A.
DensityMatrix apply_extended_pure(const KrausChannel &ch, const ComplexVector &psi, std::size_t ref_dim);

/// ch^{(x) n}; throws BudgetExceeded if in or out dimension exceeds `dimension_cap`.
KrausChannel tensor_power(const KrausChannel &ch, std::size_t n, std::size_t dimension_cap = kDefaultDimensionCap);

/// Channel-wise tensor product of two channels.
KrausChannel tensor_product(const KrausChannel &a, const KrausChannel &b);

KrausChannel identity_channel(std::size_t dim);
KrausChannel unitary_channel(const ComplexMatrix &u);

/// rho -> (1-q) rho + q I/2.
KrausChannel depolarizing(double q);
/// rho -> p_I rho + p_x X rho X + p_y Y rho Y + p_z Z rho Z.
KrausChannel pauli(const std::array<double, 4> &p);
/// Kraus A0 = sqrt(gamma)|0><1|, A1 = |0><0| + sqrt(1-gamma)|1><1|.
KrausChannel amplitude_damping(double gamma);

/// (1 - eps) ch + eps * (replace by I/d_out).
KrausChannel mix_with_completely_depolarizing(const KrausChannel &ch, double eps);

/// The two entanglement-breaking channels C^2 (x) C^2 -> C^2 of Harrow et al.,
/// input ordered A (x) C, with five Kraus operators each.
std::pair<KrausChannel, KrausChannel> harrow_channels();

/// Choi matrix sum_{ij} |i><j| (x) ch(|i><j|) (input factor first).
ComplexMatrix choi_matrix(const KrausChannel &ch);

/// True when the Choi matrix has a positive partial transpose (smallest
/// eigenvalue of the output-transposed Choi >= -tol).
bool choi_is_ppt(const KrausChannel &ch, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Qubit Bloch geometry.

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pauli matrices X, Y, Z.
const std::array<ComplexMatrix, 3> &pauli_matrices();

Vec3 bloch_vector(const DensityMatrix &rho);
/// (I + r.sigma)/2; |r| <= 1 (+1e-12).
DensityMatrix state_from_bloch(const Vec3 &r);
/// Pure qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
ComplexVector qubit_vector(double theta, double phi);

/// Qubit channel as the affine map r -> t + T r on Bloch vectors.
struct BlochAffine {
    Vec3 t = Vec3::Zero();
    Mat3 T = Mat3::Zero();

    Vec3 map(const Vec3 &r) const {
        return t + T * r;
    }
    /// Linear extension to all 2x2 matrices.
    ComplexMatrix apply_matrix(const ComplexMatrix &x) const;
    ComplexMatrix choi_matrix() const;
    bool is_completely_positive(double tol = 1e-9) const;
};

BlochAffine bloch_affine_of(const KrausChannel &ch);

// ---------------------------------------------------------------------------
// Classical-quantum channels.

/// Finite map x -> rho_x with a common output dimension.
class CqChannel {
   public:
    CqChannel(std::vector<std::string> alphabet, std::vector<DensityMatrix> outputs);

    const std::vector<std::string> &alphabet() const {
        return alphabet_;
    }
    const std::vector<DensityMatrix> &outputs() const {
        return outputs_;
    }
    std::size_t size() const {
        return alphabet_.size();
    }
    std::size_t out_dim() const {
        return outputs_.front().dim();
    }
    const DensityMatrix &output(const std::string &label) const;

   private:
    std::vector<std::string> alphabet_;
    std::vector<DensityMatrix> outputs_;
};

/// xi -> sum_x rho_x <x|xi|x>: the cq-channel as an entanglement-breaking
/// qq-channel on C^{|X|}.
KrausChannel cq_as_qq(const CqChannel &n);

/// Measure with a PVM {E_x}, prepare rho_x.
class PvmStatePreparer {
   public:
    PvmStatePreparer(std::vector<ComplexMatrix> pvm, std::vector<DensityMatrix> prepared);

    const std::vector<ComplexMatrix> &pvm() const {
        return pvm_;
    }
    const std::vector<DensityMatrix> &prepared() const {
        return prepared_;
    }
    KrausChannel to_channel() const;

   private:
    std::vector<ComplexMatrix> pvm_;
    std::vector<DensityMatrix> prepared_;
};

}  // namespace qchd

#endif
