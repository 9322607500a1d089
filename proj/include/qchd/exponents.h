#ifndef QCHD_EXPONENTS_H
#define QCHD_EXPONENTS_H

#include <cstddef>
#include <string>
#include <vector>

#include "qchd/channels.h"
#include "qchd/divergences.h"

namespace qchd {

/// A finite family of state pairs (rho_x, sigma_x). Channel-level quantities are
/// suprema over the family:
///   phi(alpha) = sup_x -log2 Tr rho_x^alpha sigma_x^(1-alpha) = sup_x (1-alpha) D_alpha,
/// which is all the exponent formulas below need.
class DivergenceProfile {
   public:
    explicit DivergenceProfile(std::vector<SpectralPair> letters, std::vector<std::string> labels = {});

    const std::vector<SpectralPair> &letters() const {
        return letters_;
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    std::size_t size() const {
        return letters_.size();
    }

    /// sup_x (1-alpha) D_alpha(rho_x||sigma_x) for alpha in [0, 1]; `argmax` receives the letter.
    double chernoff_function(double alpha, std::size_t *argmax = nullptr) const;

    /// sup_x D_alpha(rho_x||sigma_x), alpha in (0, 1).
    DivergenceValue renyi(double alpha) const;

    /// D(N||N') = sup_x D(rho_x||sigma_x).
    DivergenceValue stein() const;
    /// D(N'||N) = sup_x D(sigma_x||rho_x).
    DivergenceValue reverse_stein() const;

    /// The family with rho and sigma exchanged in every letter.
    DivergenceProfile swapped() const;

   private:
    std::vector<SpectralPair> letters_;
    std::vector<std::string> labels_;
};

/// Profile of the pair of cq-channels x -> rho_x, x -> sigma_x over a common alphabet.
DivergenceProfile cq_profile(const CqChannel &n, const CqChannel &n_bar);

/// Result of the one-dimensional supremum over alpha.
struct AlphaOptimum {
    double value = 0.0;
    double alpha_star = 0.0;
    /// Spacing of the coarse alpha grid that localised the optimum.
    double grid_resolution = 0.0;
    bool finite = true;
    /// Set by hoeffding_B when r exceeds the Stein threshold (value reported as 0).
    bool above_stein = false;
    /// Letter of the profile attaining the supremum at alpha_star.
    std::size_t letter = 0;
};

/// Coarse grid and refinement settings for the alpha supremum.
struct AlphaSearch {
    std::size_t grid_points = 99;
    double epsilon = 1e-6;
};

/// B(r) = sup_{0 < alpha <= 1} ((alpha-1)/alpha) (r - D_alpha(N||N')).
/// r < 0 throws ROutOfRange; r above D(N||N') returns 0 with above_stein set.
AlphaOptimum hoeffding_B(const DivergenceProfile &profile, double r, const AlphaSearch &search = {});
AlphaOptimum hoeffding_B(const CqChannel &n, const CqChannel &n_bar, double r, const AlphaSearch &search = {});

/// C(a, b) = sup_{0 <= alpha <= 1} (1-alpha) D_alpha(N||N') - alpha a - (1-alpha) b,
/// defined for -D(N||N') <= a - b <= D(N'||N) (ABOutOfRange otherwise).
AlphaOptimum chernoff_C(const DivergenceProfile &profile, double a, double b, const AlphaSearch &search = {});
AlphaOptimum chernoff_C(const CqChannel &n, const CqChannel &n_bar, double a, double b, const AlphaSearch &search = {});

/// The r in [0, D(N||N')] with B(r) - r = a - b, by bisection.
double solve_r_ab(const DivergenceProfile &profile, double a, double b, const AlphaSearch &search = {});
double solve_r_ab(const CqChannel &n, const CqChannel &n_bar, double a, double b, const AlphaSearch &search = {});

}  // namespace qchd

#endif
