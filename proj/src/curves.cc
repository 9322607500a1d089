#include "qchd/curves.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qchd/errors.h"
#include "qchd/parallel.h"

namespace qchd {

std::vector<double> uniform_grid(double r_max, std::size_t points) {
    if (points == 0) {
        throw ParameterOutOfRange("uniform_grid: at least one point required");
    }
    if (!std::isfinite(r_max) || r_max < 0.0) {
        throw ParameterOutOfRange("uniform_grid: upper end must be finite and nonnegative");
    }
    std::vector<double> out(points, 0.0);
    for (std::size_t k = 1; k < points; ++k) {
        out[k] = r_max * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    return out;
}

std::vector<std::pair<double, double>> chernoff_band_grid(const DivergenceProfile &profile, std::size_t points) {
    auto d = profile.stein();
    auto d_rev = profile.reverse_stein();
    if (!d.finite || !d_rev.finite) {
        throw ParameterOutOfRange("chernoff_band_grid: band is unbounded (infinite relative entropy)");
    }
    std::vector<std::pair<double, double>> out;
    for (double t : uniform_grid(d.value + d_rev.value, points)) {
        out.emplace_back(t - d.value, 0.0);
    }
    return out;
}

ExponentCurve emit_hoeffding_curve(const DivergenceProfile &profile, std::span<const double> rs,
                                   const AlphaSearch &search) {
    ExponentCurve curve;
    curve.samples.resize(rs.size());
    parallel_for(rs.size(), [&](std::size_t k) {
        auto opt = hoeffding_B(profile, rs[k], search);
        curve.samples[k] = {rs[k], opt.value, opt.alpha_star};
    });
    return curve;
}

ChernoffCurve emit_chernoff_curve(const DivergenceProfile &profile, std::span<const std::pair<double, double>> ab,
                                  const AlphaSearch &search) {
    ChernoffCurve curve;
    curve.samples.resize(ab.size());
    parallel_for(ab.size(), [&](std::size_t k) {
        auto [a, b] = ab[k];
        auto opt = chernoff_C(profile, a, b, search);
        curve.samples[k] = {a, b, opt.value, opt.alpha_star};
    });
    return curve;
}

CurveCheck check_hoeffding_curve(const ExponentCurve &curve, double tol) {
    CurveCheck out;
    const auto &s = curve.samples;
    auto note = [&](const std::string &what, std::size_t k) {
        std::ostringstream msg;
        msg.precision(12);
        msg << what << " at r = " << s[k].r;
        out.problems.push_back(msg.str());
    };
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (!std::isfinite(s[k].B) || !std::isfinite(s[k - 1].B)) {
            continue;
        }
        if (s[k].B > s[k - 1].B + tol) {
            out.nonincreasing = false;
            note("B increases", k);
        }
        if (s[k].alpha_star < s[k - 1].alpha_star - tol) {
            out.alpha_nondecreasing = false;
            note("alpha* decreases", k);
        }
    }
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        if (!std::isfinite(s[k - 1].B) || !std::isfinite(s[k + 1].B)) {
            continue;
        }
        double w = (s[k].r - s[k - 1].r) / (s[k + 1].r - s[k - 1].r);
        double chord = (1.0 - w) * s[k - 1].B + w * s[k + 1].B;
        if (s[k].B > chord + tol) {
            out.convex = false;
            note("B above chord", k);
        }
    }
    return out;
}

std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream &out, const ExponentCurve &curve) {
    out << "r,B,alpha_star\n";
    for (const auto &s : curve.samples) {
        out << format_number(s.r) << ',' << format_number(s.B) << ',' << format_number(s.alpha_star) << '\n';
    }
}

void write_csv(std::ostream &out, const ChernoffCurve &curve) {
    out << "a,b,C,alpha_star\n";
    for (const auto &s : curve.samples) {
        out << format_number(s.a) << ',' << format_number(s.b) << ',' << format_number(s.C) << ','
            << format_number(s.alpha_star) << '\n';
    }
}

}  // namespace qchd
