#ifndef QCHD_RANDOM_H
#define QCHD_RANDOM_H

#include <cstdint>
#include <random>

#include "qchd/linalg.h"

namespace qchd {

using Rng = std::mt19937_64;

/// Independent stream for work item `index` under a master seed. Streams depend
/// only on (seed, index), so parallel loops reproduce serial results.
Rng derived_rng(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed unit vector (normalised complex Gaussian).
ComplexVector haar_pure_vector(std::size_t dim, Rng &rng);
DensityMatrix haar_pure_state(std::size_t dim, Rng &rng);

/// Hilbert-Schmidt random mixed state (Ginibre G G^dagger / Tr).
DensityMatrix random_density_matrix(std::size_t dim, Rng &rng);

/// Hermitian matrix with i.i.d. complex Gaussian entries above the diagonal.
HermitianOperator random_hermitian(std::size_t dim, Rng &rng);

/// Haar unitary via QR of a Ginibre matrix with phase correction.
ComplexMatrix haar_unitary(std::size_t dim, Rng &rng);

}  // namespace qchd

#endif
