#ifndef QCHD_BOUNDS_H
#define QCHD_BOUNDS_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qchd/channels.h"
#include "qchd/linalg.h"

namespace qchd {

/// Smallest eigenvalue below which a combination does not count as positive.
inline constexpr double kPositivityThreshold = 1e-9;

/// All products E_i^dagger F_j of the Kraus operators of M and M', at index
/// i * right_count + j.
struct KrausProductSpan {
    std::vector<ComplexMatrix> basis;
    std::size_t in_dim = 0;
    std::size_t left_count = 0;
    std::size_t right_count = 0;

    std::size_t index(std::size_t i, std::size_t j) const {
        return i * right_count + j;
    }
};

KrausProductSpan kraus_product_span(const KrausChannel &m, const KrausChannel &m_bar);

/// P = sum_k c_k basis_k for unit-norm c, with the smallest eigenvalue of its
/// Hermitian part. Any input state tau has |Tr tau P| >= Tr tau (P + P^dagger)/2
/// >= lambda_min, which is all the error floor needs.
struct PositiveCombination {
    std::vector<Complex> coefficients;
    ComplexMatrix P;
    double hermiticity_residual = 0.0;
    double lambda_min = 0.0;

    bool positive() const {
        return lambda_min > kPositivityThreshold;
    }
};

/// Assembles P from `coefficients` (normalised here, and rotated by the global
/// phase that maximises lambda_min, so the result does not depend on the phase
/// of the input). Non-positivity is reported through positive(), not thrown.
PositiveCombination evaluate_combination(const KrausProductSpan &span, std::vector<Complex> coefficients);

/// Upper bound 4 log2(1/lambda_min) on the product-input Chernoff exponent.
/// Throws NotPositive unless pc.positive().
double chernoff_upper_bound(const PositiveCombination &pc);

/// Floor (1/4) lambda_min^(4n) on the n-use parallel error. Throws NotPositive
/// unless pc.positive(); n >= 1.
double error_lower_bound(const PositiveCombination &pc, std::size_t n);

struct CombinationSearch {
    std::size_t restarts = 64;
    std::uint64_t seed = 0;
    /// Search complex coefficients; otherwise real ones only.
    bool complex_coefficients = true;
    std::size_t iterations_per_stage = 400;
};

/// Maximises lambda_min of the Hermitian part over unit coefficient vectors by
/// projected ascent on a softmin-smoothed objective, from random starts.
/// Empty when the best lambda_min is at most kPositivityThreshold.
std::optional<PositiveCombination> search_positive_combination(const KrausProductSpan &span,
                                                               const CombinationSearch &search = {});

/// The real combination for harrow_channels(): weight a on E1'F1 and E2'F2,
/// b/sqrt2 on E5'F3 and E3'F4, -2b on E5'F5, with a = 2b sin^2(pi/8) and
/// b^2 = 1/(8 sin^4(pi/8) + 5) (E' the adjoint, 1-based labels).
std::vector<Complex> harrow_ansatz_coefficients();

/// (2 - sqrt2) / (4 sqrt(4 - sqrt2)): lambda_min of the ansatz in closed form.
double harrow_ansatz_lambda_min();

}  // namespace qchd

#endif
