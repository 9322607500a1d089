#ifndef QCHD_CURVES_H
#define QCHD_CURVES_H

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qchd/exponents.h"

namespace qchd {

struct HoeffdingSample {
    double r = 0.0;
    double B = 0.0;
    double alpha_star = 0.0;
};

/// Sampled Hoeffding curve r -> B(r).
struct ExponentCurve {
    std::vector<HoeffdingSample> samples;
};

struct ChernoffSample {
    double a = 0.0;
    double b = 0.0;
    double C = 0.0;
    double alpha_star = 0.0;
};

struct ChernoffCurve {
    std::vector<ChernoffSample> samples;
};

/// `points` equally spaced r in [0, r_max]; a single point is r = 0.
std::vector<double> uniform_grid(double r_max, std::size_t points);

/// Pairs (a, 0) with a spanning the admissible band [-D(N||N'), D(N'||N)].
std::vector<std::pair<double, double>> chernoff_band_grid(const DivergenceProfile &profile, std::size_t points);

/// B at each r; points are evaluated independently and stored in input order.
ExponentCurve emit_hoeffding_curve(const DivergenceProfile &profile, std::span<const double> rs,
                                   const AlphaSearch &search = {});

ChernoffCurve emit_chernoff_curve(const DivergenceProfile &profile, std::span<const std::pair<double, double>> ab,
                                  const AlphaSearch &search = {});

/// Shape checks on a Hoeffding curve; each failed check appends a line to `problems`.
struct CurveCheck {
    bool nonincreasing = true;
    bool convex = true;
    bool alpha_nondecreasing = true;
    std::vector<std::string> problems;

    bool ok() const {
        return nonincreasing && convex && alpha_nondecreasing;
    }
};

/// B nonincreasing, B at each interior sample at most the chord of its neighbours
/// plus `tol`, and alpha* nondecreasing (finite samples only).
CurveCheck check_hoeffding_curve(const ExponentCurve &curve, double tol = 1e-6);

/// CSV with header `r,B,alpha_star`, 12 significant digits, LF line endings.
void write_csv(std::ostream &out, const ExponentCurve &curve);
/// CSV with header `a,b,C,alpha_star`.
void write_csv(std::ostream &out, const ChernoffCurve &curve);

/// %.12g, with inf spelled `inf`.
std::string format_number(double v);

}  // namespace qchd

#endif
