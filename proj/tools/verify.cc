#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <fmt/core.h>

#include "cli.h"
#include "qchd/bounds.h"
#include "qchd/curves.h"
#include "qchd/input_search.h"
#include "qchd/random.h"
#include "qchd/strategies.h"

namespace qchd::cli {

namespace {

std::string num(double v) {
    return format_number(v);
}

int nussbaum_szkola_suite(std::uint64_t seed) {
    Verdicts v;
    const double alphas[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double worst = 0.0, worst_d = 0.0, worst_mass = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng = derived_rng(seed, i);
        std::size_t dim = 2 + i % 4;
        DensityMatrix rho = random_density_matrix(dim, rng), sigma = random_density_matrix(dim, rng);
        auto [p, q] = nussbaum_szkola(rho, sigma);
        worst_mass = std::max({worst_mass, std::abs(p.total() - 1.0), std::abs(q.total() - 1.0)});
        for (double a : alphas) {
            worst = std::max(worst, std::abs(renyi_divergence(rho, sigma, a).value - classical_renyi(p, q, a).value));
        }
        worst_d =
            std::max(worst_d, std::abs(relative_entropy(rho, sigma).value - classical_relative_entropy(p, q).value));
    }
    v.check(worst_mass <= 1e-10, fmt::format("both distributions normalised, max |mass - 1| = {}", num(worst_mass)));
    v.check(worst <= 1e-8,
            fmt::format("D_alpha(rho||sigma) = D_alpha(P||Q), 50 pairs dim 2..5 x 9 alphas: max diff {} (tol 1e-8)",
                        num(worst)));
    v.check(worst_d <= 1e-8, fmt::format("D(rho||sigma) = D(P||Q): max diff {} (tol 1e-8)", num(worst_d)));
    return v.exit_code();
}

int exponent_identities_suite(std::uint64_t seed) {
    Verdicts v;
    InputSearch search;
    search.seed = seed;
    for (double q : {0.2, 0.5, 0.8}) {
        auto profile = power_profile(depolarizing(q), search).profile;
        double d = profile.stein().value;
        double worst_zero = 0.0;
        for (double r : uniform_grid(d, 20)) {
            double b_r = hoeffding_B(profile, r).value;
            worst_zero = std::max(worst_zero, std::abs(chernoff_C(profile, b_r, r).value));
        }
        v.check(worst_zero <= 1e-6,
                fmt::format("q={}: C(B(r), r) = 0 on 20 r points, max |C| = {} (tol 1e-6)", num(q), num(worst_zero)));

        Rng rng = derived_rng(seed, static_cast<std::uint64_t>(q * 1000));
        std::uniform_real_distribution<double> shift(0.0, 1.0);
        double worst_r = 0.0, worst_b = 0.0;
        for (auto [a, b] : chernoff_band_grid(profile, 20)) {
            double s = shift(rng);
            a += s;
            b += s;
            double c = chernoff_C(profile, a, b).value;
            double r = solve_r_ab(profile, a, b);
            worst_r = std::max(worst_r, std::abs(c - (r - b)));
            worst_b = std::max(worst_b, std::abs(c - (hoeffding_B(profile, r).value - a)));
        }
        v.check(worst_r <= 1e-6 && worst_b <= 1e-6,
                fmt::format("q={}: C(a,b) = r_ab - b = B(r_ab) - a on 20 band points, max diffs {} / {} (tol 1e-6)",
                            num(q), num(worst_r), num(worst_b)));

        auto curve = emit_hoeffding_curve(profile, uniform_grid(d, 20));
        auto check = check_hoeffding_curve(curve);
        v.check(check.ok(), fmt::format("q={}: B(r) nonincreasing, convex, alpha* nondecreasing{}", num(q),
                                        check.ok() ? "" : " (" + check.problems.front() + ")"));
    }
    return v.exit_code();
}

int prop1_floor_suite(std::uint64_t seed) {
    Verdicts v;
    auto [m, m_bar] = harrow_channels();
    auto span = kraus_product_span(m, m_bar);
    auto ansatz = evaluate_combination(span, harrow_ansatz_coefficients());
    v.check(ansatz.positive() && std::abs(ansatz.lambda_min - harrow_ansatz_lambda_min()) <= 1e-9,
            fmt::format("ansatz combination positive, lambda_min = {} (closed form {})", num(ansatz.lambda_min),
                        num(harrow_ansatz_lambda_min())));
    v.check(ansatz.hermiticity_residual <= 1e-12,
            fmt::format("ansatz P Hermitian, residual {}", num(ansatz.hermiticity_residual)));
    for (std::size_t n : {1, 2}) {
        auto floor = nonadaptive_floor_check(m, m_bar, ansatz, n, 500, seed);
        v.check(floor.ok(), fmt::format("n={}: 500 Haar inputs, min error {} >= floor {} ({} below)", n,
                                        num(floor.min_error), num(floor.floor), floor.violations));
    }

    CombinationSearch cs;
    cs.seed = seed;
    auto found = search_positive_combination(span, cs);
    v.check(found.has_value(), fmt::format("search finds a positive combination{}",
                                           found ? ", lambda_min = " + num(found->lambda_min) : ""));
    if (found) {
        v.check(found->lambda_min >= ansatz.lambda_min - 1e-9,
                fmt::format("search lambda_min {} >= ansatz {}", num(found->lambda_min), num(ansatz.lambda_min)));
        auto floor = nonadaptive_floor_check(m, m_bar, *found, 1, 500, seed);
        v.check(floor.ok(), fmt::format("searched certificate, n=1: min error {} >= floor {} ({} below)",
                                        num(floor.min_error), num(floor.floor), floor.violations));
    }

    // For M = M' the span contains sum E^dagger E = I, so a certificate always exists;
    // the errors it bounds are all 1/2.
    KrausChannel same = depolarizing(0.3);
    auto same_span = kraus_product_span(same, same);
    std::vector<Complex> diagonal(same_span.basis.size(), 0.0);
    for (std::size_t i = 0; i < same_span.left_count; ++i) {
        diagonal[same_span.index(i, i)] = 1.0;
    }
    auto identical = evaluate_combination(same_span, diagonal);
    auto floor = nonadaptive_floor_check(same, same, identical, 1, 100, seed);
    v.check(floor.ok() && std::abs(floor.min_error - 0.5) <= 1e-12,
            fmt::format("identical channels: every sampled error is 1/2 (min {}) >= floor {}", num(floor.min_error),
                        num(floor.floor)));
    return v.exit_code();
}

ClassicalChannelPair random_binary_pair(Rng &rng) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    Eigen::MatrixXd w(2, 2), w_bar(2, 2);
    for (int x = 0; x < 2; ++x) {
        double p = u(rng), q = u(rng);
        w.row(x) << p, 1.0 - p;
        w_bar.row(x) << q, 1.0 - q;
    }
    return ClassicalChannelPair(w, w_bar);
}

int classical_dp_suite(std::uint64_t seed) {
    Verdicts v;
    for (std::uint64_t i = 0; i < 5; ++i) {
        Rng rng = derived_rng(seed, i);
        auto pair = random_binary_pair(rng);
        double c = classical_chernoff_exponent(pair);
        bool ordered = true, above = true;
        double e1 = 0.0, e6 = 0.0;
        for (std::size_t n = 1; n <= 6; ++n) {
            double ad = classical_adaptive_optimum(pair, n, 0.0, 0.0);
            double pa = classical_parallel_optimum(pair, n, 0.0, 0.0);
            double e = -std::log2(ad) / static_cast<double>(n);
            ordered = ordered && ad <= pa + 1e-15;
            above = above && e >= c - 1e-12;
            if (n == 1) {
                e1 = e;
            } else if (n == 6) {
                e6 = e;
            }
        }
        // n = 1 by direct enumeration of the two inputs.
        double direct = INFINITY;
        for (Eigen::Index x = 0; x < 2; ++x) {
            double s = 0.0;
            for (Eigen::Index y = 0; y < 2; ++y) {
                s += std::min(pair.w()(x, y), pair.w_bar()(x, y));
            }
            direct = std::min(direct, s);
        }
        double one = classical_adaptive_optimum(pair, 1, 0.0, 0.0);
        v.check(std::abs(one - direct) <= 1e-15,
                fmt::format("pair {}: n=1 optimum {} vs direct enumeration {}", i, num(one), num(direct)));
        v.check(ordered, fmt::format("pair {}: adaptive <= parallel for n=1..6", i));
        v.check(above, fmt::format("pair {}: -(1/n) log2 optimum >= single-letter Chernoff {} for n=1..6", i, num(c)));
        v.check(std::abs(e6 - c) < std::abs(e1 - c),
                fmt::format("pair {}: exponent gap to C shrinks, |e1 - C| = {}, |e6 - C| = {}", i,
                            num(std::abs(e1 - c)), num(std::abs(e6 - c))));
    }
    Eigen::MatrixXd w(2, 2);
    w << 0.3, 0.7, 0.6, 0.4;
    ClassicalChannelPair same(w, w);
    v.check(std::abs(classical_adaptive_optimum(same, 4, 0.0, 0.0) - 1.0) <= 1e-12,
            "identical channels: objective 1 (Bayes error 1/2)");
    Eigen::MatrixXd w1(1, 2), w1_bar(1, 2);
    w1 << 0.2, 0.8;
    w1_bar << 0.7, 0.3;
    ClassicalChannelPair single(w1, w1_bar);
    v.check(std::abs(classical_adaptive_optimum(single, 5, 0.3, 0.1) -
                     classical_parallel_optimum(single, 5, 0.3, 0.1)) <= 1e-15,
            "single-letter alphabet: adaptive == parallel");
    return v.exit_code();
}

}  // namespace

int run_verify(const std::string &suite, std::uint64_t seed) {
    if (suite == "nussbaum-szkola") {
        return nussbaum_szkola_suite(seed);
    }
    if (suite == "exponent-identities") {
        return exponent_identities_suite(seed);
    }
    if (suite == "prop1-floor") {
        return prop1_floor_suite(seed);
    }
    if (suite == "classical-dp") {
        return classical_dp_suite(seed);
    }
    throw Error("unknown suite '" + suite + "'");
}

}  // namespace qchd::cli
