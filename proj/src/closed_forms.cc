#include "qchd/closed_forms.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qchd/divergences.h"
#include "qchd/errors.h"

namespace qchd {

namespace {

void require_unit_interval(double v, const char *what, bool open_low, bool open_high) {
    bool ok = (open_low ? v > 0.0 : v >= 0.0) && (open_high ? v < 1.0 : v <= 1.0);
    if (!ok) {
        std::ostringstream msg;
        msg << what << " = " << v << " outside its admissible interval";
        throw ParameterOutOfRange(msg.str());
    }
}

void require_alpha(double alpha, bool open) {
    if (!(open ? (alpha > 0.0 && alpha < 1.0) : (alpha >= 0.0 && alpha <= 1.0))) {
        std::ostringstream msg;
        msg << "alpha = " << alpha << " outside " << (open ? "(0, 1)" : "[0, 1]");
        throw AlphaOutOfRange(msg.str());
    }
}

// Eigen-data of the reference pair: eigenvalues l1 >= l2 and the second
// eigenvector coordinates c_i = (2 l_i - 1 - gamma) / sqrt(1 - gamma).
struct ReferenceSpectrum {
    double l1, l2, c1, c2;
};

ReferenceSpectrum reference_spectrum(double gamma) {
    double radius = std::sqrt(gamma * gamma - gamma + 1.0);
    double s = std::sqrt(1.0 - gamma);
    ReferenceSpectrum out;
    out.l1 = (1.0 + radius) / 2.0;
    out.l2 = (1.0 - radius) / 2.0;
    out.c1 = (2.0 * out.l1 - 1.0 - gamma) / s;
    out.c2 = (2.0 * out.l2 - 1.0 - gamma) / s;
    return out;
}

double squared_ratio(double c) {
    double v = (1.0 - c * c) / (1.0 + c * c);
    return v * v;
}

}  // namespace

double depolarizing_overlap(double q, double alpha) {
    require_unit_interval(q, "q", true, false);
    require_alpha(alpha, false);
    double hi = 1.0 - q / 2.0;
    double lo = q / 2.0;
    return std::pow(hi, alpha) * std::pow(lo, 1.0 - alpha) + std::pow(hi, 1.0 - alpha) * std::pow(lo, alpha);
}

double depolarizing_overlap_second_derivative(double q, double alpha) {
    double l = std::log(q / (2.0 - q));
    return l * l * depolarizing_overlap(q, alpha);
}

double depolarizing_power(double q) {
    require_unit_interval(q, "q", false, false);
    if (q == 0.0) {
        return INFINITY;
    }
    return -(1.0 - q) * std::log2(q / (2.0 - q));
}

double depolarizing_chernoff_alpha(double q, double a, double b) {
    require_unit_interval(q, "q", true, true);
    double t = a - b;
    double d = depolarizing_power(q);
    if (std::abs(t) > d + 1e-12) {
        std::ostringstream msg;
        msg << "ABOutOfRange: |a - b| = " << std::abs(t) << " exceeds " << d;
        throw ABOutOfRange(msg.str());
    }
    double l = std::log2(q / (2.0 - q));
    double ratio = (l + t) / (l - t);
    if (ratio <= 0.0) {
        return t > 0.0 ? 0.0 : 1.0;
    }
    double alpha = 0.5 - std::log2(ratio) / (2.0 * l);
    return std::clamp(alpha, 0.0, 1.0);
}

std::pair<Vec3, Vec3> amplitude_damping_reference_outputs(double gamma) {
    require_unit_interval(gamma, "gamma", false, false);
    double s = std::sqrt(1.0 - gamma);
    return {Vec3(s, 0.0, gamma), Vec3(-s, 0.0, gamma)};
}

double amplitude_damping_overlap(double gamma, double alpha) {
    require_unit_interval(gamma, "gamma", true, true);
    require_alpha(alpha, true);
    auto sp = reference_spectrum(gamma);
    double cross = (1.0 - sp.c1 * sp.c2);
    double mixed = depolarizing_overlap(1.0 - std::sqrt(gamma * gamma - gamma + 1.0), alpha) * cross * cross /
                   ((1.0 + sp.c1 * sp.c1) * (1.0 + sp.c2 * sp.c2));
    return sp.l1 * squared_ratio(sp.c1) + sp.l2 * squared_ratio(sp.c2) + mixed;
}

double amplitude_damping_reference_stein(double gamma) {
    require_unit_interval(gamma, "gamma", true, true);
    auto sp = reference_spectrum(gamma);
    double log1 = std::log2(sp.l1);
    double log2v = std::log2(sp.l2);
    double cross = 1.0 - sp.c1 * sp.c2;
    return sp.l1 * log1 + sp.l2 * log2v - sp.l1 * log1 * squared_ratio(sp.c1) - sp.l2 * log2v * squared_ratio(sp.c2) -
           (sp.l1 * log2v + sp.l2 * log1) * cross * cross / ((1.0 + sp.c1 * sp.c1) * (1.0 + sp.c2 * sp.c2));
}

double ClosedFormCheck::difference() const {
    return std::abs(closed_form - oracle);
}

bool ClosedFormCheck::agrees() const {
    return difference() <= tolerance;
}

double ClosedFormCheck::trusted() const {
    return agrees() ? closed_form : oracle;
}

std::string ClosedFormCheck::report(const std::string &what) const {
    std::ostringstream out;
    out.precision(12);
    out << what << ": closed form " << closed_form << ", matrix oracle " << oracle << ", |diff| " << difference();
    if (agrees()) {
        out << " <= " << tolerance << " (agree)";
    } else {
        out << " > " << tolerance << " DISCREPANCY: closed form flagged, oracle value used";
    }
    return out.str();
}

ClosedFormCheck check_amplitude_damping_overlap(double gamma, double alpha, double tolerance) {
    auto [r1, r2] = amplitude_damping_reference_outputs(gamma);
    ClosedFormCheck out;
    out.closed_form = amplitude_damping_overlap(gamma, alpha);
    out.oracle = renyi_trace_term(state_from_bloch(r1), state_from_bloch(r2), alpha);
    out.tolerance = tolerance;
    return out;
}

}  // namespace qchd
