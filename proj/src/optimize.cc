#include "qchd/optimize.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace qchd {

ScalarOptimum maximize_unimodal(const std::function<double(double)> &f, double lo, double hi) {
    if (!(lo < hi)) {
        return {lo, f(lo)};
    }
    auto negated = [&](double x) { return -f(x); };
    std::uintmax_t max_iter = 500;
    auto [x, v] =
        boost::math::tools::brent_find_minima(negated, lo, hi, std::numeric_limits<double>::digits / 2, max_iter);
    ScalarOptimum best{x, -v};
    for (double end : {lo, hi}) {
        double fe = f(end);
        if (fe > best.value) {
            best = {end, fe};
        }
    }
    return best;
}

namespace {

struct GslCallback {
    const std::function<double(std::span<const double>)> *f;
    std::size_t n;
};

double gsl_trampoline(const gsl_vector *v, void *params) {
    auto *cb = static_cast<GslCallback *>(params);
    std::vector<double> x(cb->n);
    for (std::size_t i = 0; i < cb->n; ++i) {
        x[i] = gsl_vector_get(v, i);
    }
    double y = (*cb->f)(x);
    // nmsimplex2 works with finite values only.
    if (std::isnan(y) || y > std::numeric_limits<double>::max()) {
        return std::numeric_limits<double>::max();
    }
    return std::max(y, std::numeric_limits<double>::lowest());
}

}  // namespace

SimplexOptimum nelder_mead_minimize(const std::function<double(std::span<const double>)> &f, std::vector<double> x0,
                                    double step, double tol, int max_iterations) {
    const std::size_t n = x0.size();
    if (n == 0) {
        return {x0, f(x0), 0};
    }
    static const bool handler_off = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)handler_off;
    GslCallback cb{&f, n};
    gsl_multimin_function fn{&gsl_trampoline, n, &cb};

    gsl_vector *x = gsl_vector_alloc(n);
    gsl_vector *steps = gsl_vector_alloc(n);
    for (std::size_t i = 0; i < n; ++i) {
        gsl_vector_set(x, i, x0[i]);
        gsl_vector_set(steps, i, step);
    }
    gsl_multimin_fminimizer *s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &fn, x, steps);

    // Besides the size test, stop once the best value stalls over a window: on
    // objectives with a flat direction the simplex never shrinks along it.
    const int window = 20 * static_cast<int>(n);
    double checkpoint = s->fval;
    int iter = 0;
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && iter < max_iterations) {
        ++iter;
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) {
            break;
        }
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), tol);
        if (iter % window == 0) {
            if (std::abs(checkpoint - s->fval) <= 1e-15 * (1.0 + std::abs(s->fval))) {
                break;
            }
            checkpoint = s->fval;
        }
    }

    SimplexOptimum out;
    out.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.x[i] = gsl_vector_get(s->x, i);
    }
    out.value = s->fval;
    out.iterations = iter;

    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(steps);
    gsl_vector_free(x);
    return out;
}

double bisect_root(const std::function<double(double)> &f, double lo, double hi, double x_tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0) {
        return lo;
    }
    if (fhi == 0) {
        return hi;
    }
    if ((flo > 0) == (fhi > 0)) {
        throw std::invalid_argument("bisect_root: root is not bracketed");
    }
    std::uintmax_t max_iter = 400;
    auto done = [x_tol](double a, double b) { return std::abs(b - a) <= x_tol; };
    auto [a, b] = boost::math::tools::bisect(f, lo, hi, done, max_iter);
    return 0.5 * (a + b);
}

}  // namespace qchd
