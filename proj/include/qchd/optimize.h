#ifndef QCHD_OPTIMIZE_H
#define QCHD_OPTIMIZE_H

#include <functional>
#include <span>
#include <vector>

namespace qchd {

struct ScalarOptimum {
    double x = 0.0;
    double value = 0.0;
};

/// Maximum of a unimodal f on [lo, hi] (golden-section with parabolic steps).
/// Converges to an endpoint when f is monotone.
ScalarOptimum maximize_unimodal(const std::function<double(double)> &f, double lo, double hi);

struct SimplexOptimum {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

/// Nelder-Mead minimisation from x0 with initial simplex step `step`; stops when
/// the simplex size drops below `tol` or after `max_iterations`.
SimplexOptimum nelder_mead_minimize(const std::function<double(std::span<const double>)> &f, std::vector<double> x0,
                                    double step, double tol, int max_iterations = 4000);

/// Root of a function with f(lo) and f(hi) of opposite signs, by bisection down
/// to a bracket of width x_tol.
double bisect_root(const std::function<double(double)> &f, double lo, double hi, double x_tol);

}  // namespace qchd

#endif
