#include "qchd/exponents.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qchd/errors.h"
#include "qchd/optimize.h"

namespace qchd {

namespace {

constexpr double kEndpointTol = 1e-12;
constexpr double kBandTol = 1e-9;

}  // namespace

DivergenceProfile::DivergenceProfile(std::vector<SpectralPair> letters, std::vector<std::string> labels)
    : letters_(std::move(letters)), labels_(std::move(labels)) {
    if (letters_.empty()) {
        throw ParameterOutOfRange("DivergenceProfile: empty family");
    }
    if (labels_.empty()) {
        for (std::size_t x = 0; x < letters_.size(); ++x) {
            labels_.push_back(std::to_string(x));
        }
    }
    if (labels_.size() != letters_.size()) {
        throw DimensionMismatch("DivergenceProfile: one label per letter required");
    }
}

double DivergenceProfile::chernoff_function(double alpha, std::size_t *argmax) const {
    double best = -INFINITY;
    std::size_t best_x = 0;
    for (std::size_t x = 0; x < letters_.size(); ++x) {
        double v = letters_[x].chernoff_function(alpha);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    if (argmax) {
        *argmax = best_x;
    }
    return best;
}

DivergenceValue DivergenceProfile::renyi(double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw AlphaOutOfRange("DivergenceProfile::renyi: alpha not in (0, 1)");
    }
    return DivergenceValue::of(chernoff_function(alpha) / (1.0 - alpha));
}

DivergenceValue DivergenceProfile::stein() const {
    DivergenceValue best{0.0, true};
    for (const auto &l : letters_) {
        auto d = l.forward_relative_entropy();
        if (!d.finite) {
            return d;
        }
        best.value = std::max(best.value, d.value);
    }
    return best;
}

DivergenceValue DivergenceProfile::reverse_stein() const {
    return swapped().stein();
}

DivergenceProfile DivergenceProfile::swapped() const {
    std::vector<SpectralPair> out;
    out.reserve(letters_.size());
    for (const auto &l : letters_) {
        out.push_back(l.swapped());
    }
    return DivergenceProfile(std::move(out), labels_);
}

DivergenceProfile cq_profile(const CqChannel &n, const CqChannel &n_bar) {
    if (n.size() != n_bar.size()) {
        throw DimensionMismatch("cq_profile: alphabets of different sizes");
    }
    if (n.out_dim() != n_bar.out_dim()) {
        throw DimensionMismatch("cq_profile: output dimensions differ");
    }
    std::vector<SpectralPair> letters;
    for (std::size_t x = 0; x < n.size(); ++x) {
        letters.emplace_back(n.outputs()[x], n_bar.output(n.alphabet()[x]));
    }
    return DivergenceProfile(std::move(letters), n.alphabet());
}

namespace {

// Coarse grid on (0, 1) followed by bracketed refinement around the best node.
// `endpoints` lists extra candidate (alpha, value) pairs evaluated exactly.
AlphaOptimum sup_over_alpha(const std::function<double(double)> &f, const AlphaSearch &search, double lo_limit,
                            double hi_limit, std::initializer_list<std::pair<double, double>> endpoints) {
    const std::size_t n = std::max<std::size_t>(search.grid_points, 1);
    const double h = 1.0 / static_cast<double>(n + 1);
    std::size_t best_k = 1;
    double best_v = -INFINITY;
    for (std::size_t k = 1; k <= n; ++k) {
        double v = f(static_cast<double>(k) * h);
        if (v > best_v) {
            best_v = v;
            best_k = k;
        }
    }
    double lo = std::max(lo_limit, static_cast<double>(best_k - 1) * h);
    double hi = std::min(hi_limit, static_cast<double>(best_k + 1) * h);
    auto refined = maximize_unimodal(f, lo, hi);

    AlphaOptimum out;
    out.grid_resolution = h;
    out.value = refined.value;
    out.alpha_star = refined.x;
    for (auto [alpha, value] : endpoints) {
        if (value > out.value) {
            out.value = value;
            out.alpha_star = alpha;
        }
    }
    return out;
}

void check_band(const DivergenceProfile &profile, double a, double b) {
    double t = a - b;
    auto d = profile.stein();
    auto d_rev = profile.reverse_stein();
    bool below = d.finite && t < -d.value - kBandTol;
    bool above = d_rev.finite && t > d_rev.value + kBandTol;
    if (below || above) {
        std::ostringstream msg;
        msg << "ABOutOfRange: a - b = " << t << " outside [-D(N||N'), D(N'||N)] = [" << -d.value << ", " << d_rev.value
            << "]";
        throw ABOutOfRange(msg.str());
    }
}

}  // namespace

AlphaOptimum hoeffding_B(const DivergenceProfile &profile, double r, const AlphaSearch &search) {
    if (r < -kEndpointTol || std::isnan(r)) {
        std::ostringstream msg;
        msg << "ROutOfRange: r = " << r << " is negative";
        throw ROutOfRange(msg.str());
    }
    r = std::max(r, 0.0);
    auto d = profile.stein();
    if (d.finite && r > d.value + kEndpointTol) {
        AlphaOptimum out;
        out.value = 0.0;
        out.alpha_star = 1.0;
        out.above_stein = true;
        return out;
    }

    // Orthogonal supports in some letter: phi is +inf on all of (0, 1).
    std::size_t witness = 0;
    if (std::isinf(profile.chernoff_function(0.5, &witness))) {
        AlphaOptimum out;
        out.value = INFINITY;
        out.finite = false;
        out.alpha_star = 0.5;
        out.letter = witness;
        return out;
    }

    // alpha -> 0 limit of (phi(alpha) - (1-alpha) r) / alpha.
    double phi0 = profile.chernoff_function(0.0, &witness);
    double limit0 = -INFINITY;
    if (phi0 > r + kEndpointTol) {
        AlphaOptimum out;
        out.value = INFINITY;
        out.finite = false;
        out.alpha_star = 0.0;
        out.letter = witness;
        return out;
    }
    if (phi0 >= r - kEndpointTol) {
        for (const auto &l : profile.letters()) {
            if (l.chernoff_function(0.0) >= phi0 - kEndpointTol) {
                limit0 = std::max(limit0, l.chernoff_slope_at_zero() + r);
            }
        }
    }

    auto f = [&](double alpha) { return (profile.chernoff_function(alpha) - (1.0 - alpha) * r) / alpha; };
    auto out = sup_over_alpha(f, search, search.epsilon, 1.0, {{0.0, limit0}, {1.0, f(1.0)}});
    out.value = std::max(out.value, 0.0);
    profile.chernoff_function(std::max(out.alpha_star, search.epsilon), &out.letter);
    return out;
}

AlphaOptimum chernoff_C(const DivergenceProfile &profile, double a, double b, const AlphaSearch &search) {
    check_band(profile, a, b);
    std::size_t witness = 0;
    if (std::isinf(profile.chernoff_function(0.5, &witness))) {
        AlphaOptimum out;
        out.value = INFINITY;
        out.finite = false;
        out.alpha_star = 0.5;
        out.letter = witness;
        return out;
    }
    auto g = [&](double alpha) { return profile.chernoff_function(alpha) - alpha * a - (1.0 - alpha) * b; };
    auto out = sup_over_alpha(g, search, 0.0, 1.0, {{0.0, g(0.0)}, {1.0, g(1.0)}});
    profile.chernoff_function(out.alpha_star, &out.letter);
    return out;
}

double solve_r_ab(const DivergenceProfile &profile, double a, double b, const AlphaSearch &search) {
    check_band(profile, a, b);
    const double t = a - b;
    auto d = profile.stein();
    auto d_rev = profile.reverse_stein();
    if (d.finite && t <= -d.value + kEndpointTol) {
        return d.value;
    }
    if (d_rev.finite && t >= d_rev.value - kEndpointTol) {
        return 0.0;
    }
    auto h = [&](double r) { return hoeffding_B(profile, r, search).value - r - t; };
    double hi = 0.0;
    if (d.finite) {
        hi = d.value;
    } else {
        hi = 1.0;
        for (int k = 0; k < 80 && h(hi) >= 0.0; ++k) {
            hi *= 2.0;
        }
    }
    return bisect_root(h, 0.0, hi, 1e-13 * std::max(1.0, hi));
}

AlphaOptimum hoeffding_B(const CqChannel &n, const CqChannel &n_bar, double r, const AlphaSearch &search) {
    return hoeffding_B(cq_profile(n, n_bar), r, search);
}

AlphaOptimum chernoff_C(const CqChannel &n, const CqChannel &n_bar, double a, double b, const AlphaSearch &search) {
    return chernoff_C(cq_profile(n, n_bar), a, b, search);
}

double solve_r_ab(const CqChannel &n, const CqChannel &n_bar, double a, double b, const AlphaSearch &search) {
    return solve_r_ab(cq_profile(n, n_bar), a, b, search);
}

}  // namespace qchd