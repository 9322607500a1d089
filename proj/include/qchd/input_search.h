#ifndef QCHD_INPUT_SEARCH_H
#define QCHD_INPUT_SEARCH_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qchd/channels.h"
#include "qchd/divergences.h"
#include "qchd/exponents.h"

namespace qchd {

// Channel-level quantities are suprema over input states. Pure inputs suffice:
// Tr rho^a sigma^(1-a) is jointly concave, so its minimum over a convex set of
// inputs sits at an extreme point.

enum class SearchMethod {
    kBlochGrid,      // qubit inputs: (theta, phi) grid, then Nelder-Mead
    kRandomRestart,  // higher dimensions: Haar seeds, then Nelder-Mead
};

std::string to_string(SearchMethod m);

struct InputSearch {
    /// Bloch grid for single-input searches; theta includes both poles.
    std::size_t theta_points = 64;
    std::size_t phi_points = 128;
    /// Per-state Bloch grid for pair searches (all ordered pairs are scanned).
    std::size_t pair_theta_points = 16;
    std::size_t pair_phi_points = 32;
    /// Haar seeds for inputs of dimension > 2.
    std::size_t restarts = 32;
    /// Simplex-size stopping tolerance of the refinement.
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    /// Alpha grid at which profiles sample optimal inputs.
    AlphaSearch alpha;
};

/// Best input found by a search. `partner` is set for pair searches, where the
/// two inputs are fed to the same channel.
struct InputOptimum {
    DivergenceValue value;
    DensityMatrix argmax_state;
    std::optional<DensityMatrix> partner;
    SearchMethod method;
};

/// sup over pure inputs rho of D_alpha(M(rho)||M'(rho)), alpha in (0, 1).
InputOptimum channel_renyi_sup(const KrausChannel &m, const KrausChannel &m_bar, double alpha,
                               const InputSearch &search = {});

/// sup over pure inputs rho of D(M(rho)||M'(rho)).
InputOptimum channel_relative_entropy_sup(const KrausChannel &m, const KrausChannel &m_bar,
                                          const InputSearch &search = {});

/// sup over pure input pairs (rho, sigma) of D_alpha(M(rho)||M(sigma)).
InputOptimum pair_renyi_sup(const KrausChannel &m, double alpha, const InputSearch &search = {});

/// D(M) = sup over pure input pairs of D(M(rho)||M(sigma)): the discrimination power.
InputOptimum pair_relative_entropy_sup(const KrausChannel &m, const InputSearch &search = {});

/// Inputs behind one letter of a channel profile.
struct InputLetter {
    ComplexVector first;
    /// Second input of a pair letter; empty when both hypotheses receive `first`.
    std::optional<ComplexVector> second;
};

/// A profile whose letters are optimal inputs found on the alpha grid, plus the
/// maximisers of the relative entropy in both orders.
struct ChannelProfile {
    DivergenceProfile profile;
    std::vector<InputLetter> inputs;
    SearchMethod method;
};

/// Letters rho -> (M(rho), M'(rho)) for qq-channels under product inputs.
ChannelProfile qq_profile(const KrausChannel &m, const KrausChannel &m_bar, const InputSearch &search = {});

/// Letters (rho, sigma) -> (M(rho), M(sigma)) for the discrimination power of M.
ChannelProfile power_profile(const KrausChannel &m, const InputSearch &search = {});

/// B(r) and C(a, b) for qq-channels with product inputs and classical memory.
AlphaOptimum qq_hoeffding_B(const KrausChannel &m, const KrausChannel &m_bar, double r, const InputSearch &search = {});
AlphaOptimum qq_chernoff_C(const KrausChannel &m, const KrausChannel &m_bar, double a, double b,
                           const InputSearch &search = {});

/// Hoeffding and Chernoff exponents for discriminating two states sent through M,
/// optimised over the state pair.
AlphaOptimum discrimination_power_B(const KrausChannel &m, double r, const InputSearch &search = {});
AlphaOptimum discrimination_power_C(const KrausChannel &m, double a, double b, const InputSearch &search = {});

}  // namespace qchd

#endif
