#include "qchd/strategies.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qchd/errors.h"
#include "qchd/parallel.h"
#include "qchd/random.h"

namespace qchd {

namespace {

void check_pair_dims(const DensityMatrix &rho, const DensityMatrix &sigma, const char *where) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch(std::string(where) + ": states of different dimensions");
    }
}

ErrorReport report_for_test(const DensityMatrix &rho, const DensityMatrix &sigma, const ComplexMatrix &accept_m,
                            std::size_t n) {
    ErrorReport r;
    r.n = n;
    double accept_under_m = (accept_m * rho.matrix()).trace().real();
    r.type1 = std::clamp(1.0 - accept_under_m, 0.0, 1.0);
    r.type2 = std::clamp((accept_m * sigma.matrix()).trace().real(), 0.0, 1.0);
    r.bayes = 0.5 * (r.type1 + r.type2);
    return r;
}

void check_budget(double dim, std::size_t cap, const char *where) {
    if (dim > static_cast<double>(cap)) {
        std::ostringstream msg;
        msg << "BudgetExceeded: " << where << ": dimension " << dim << " exceeds cap " << cap;
        throw BudgetExceeded(msg.str());
    }
}

}  // namespace

double helstrom_error(const DensityMatrix &rho, const DensityMatrix &sigma) {
    check_pair_dims(rho, sigma, "helstrom_error");
    double e = 0.5 * (1.0 - 0.5 * trace_norm(rho.matrix() - sigma.matrix()));
    return std::clamp(e, 0.0, 0.5);
}

ErrorReport helstrom_report(const DensityMatrix &rho, const DensityMatrix &sigma, std::size_t n) {
    check_pair_dims(rho, sigma, "helstrom_report");
    auto eig = hermitian_eig(HermitianOperator::hermitian_part(rho.matrix() - sigma.matrix()));
    const auto d = static_cast<Eigen::Index>(rho.dim());
    ComplexMatrix accept = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (eig.eigenvalues(i) > 0.0) {
            auto u = eig.eigenvectors.col(i);
            accept += u * u.adjoint();
        }
    }
    return report_for_test(rho, sigma, accept, n);
}

ErrorReport parallel_error(const KrausChannel &m, const KrausChannel &m_bar, const ParallelStrategy &strategy,
                           std::size_t dimension_cap) {
    if (strategy.inputs.empty()) {
        throw ParameterOutOfRange("parallel_error: empty strategy");
    }
    if (m.in_dim() != m_bar.in_dim() || m.out_dim() != m_bar.out_dim()) {
        throw DimensionMismatch("parallel_error: channels with different dimensions");
    }
    const std::size_t n = strategy.inputs.size();
    check_budget(std::pow(static_cast<double>(m.out_dim()), static_cast<double>(n)), dimension_cap, "parallel_error");
    std::vector<ComplexMatrix> outs, outs_bar;
    for (const auto &in : strategy.inputs) {
        outs.push_back(apply(m, in).matrix());
        outs_bar.push_back(apply(m_bar, in).matrix());
    }
    return helstrom_report(DensityMatrix(kron_all(outs)), DensityMatrix(kron_all(outs_bar)), n);
}

AdaptiveStep feed_forward(KrausChannel prep) {
    return {[prep = std::move(prep)](const DensityMatrix &out) { return apply(prep, out); }, false};
}

AdaptiveStep fixed_input(DensityMatrix input) {
    return {[input = std::move(input)](const DensityMatrix &) { return input; }, true};
}

namespace {

DensityMatrix final_register(const KrausChannel &ch, const AdaptiveScript &script, std::size_t dimension_cap) {
    std::vector<ComplexMatrix> kept;
    double dim = 1.0;
    DensityMatrix out = apply(ch, script.initial_input);
    for (const auto &step : script.steps) {
        if (step.keep_previous_output) {
            dim *= static_cast<double>(out.dim());
            check_budget(dim * static_cast<double>(ch.out_dim()), dimension_cap, "run_adaptive_script");
            kept.push_back(out.matrix());
        }
        DensityMatrix next = step.rule(out);
        if (next.dim() != ch.in_dim()) {
            throw DimensionMismatch("run_adaptive_script: step produced an input of the wrong dimension");
        }
        out = apply(ch, next);
    }
    kept.push_back(out.matrix());
    return DensityMatrix(kron_all(kept));
}

}  // namespace

ErrorReport run_adaptive_script(const KrausChannel &m, const KrausChannel &m_bar, const AdaptiveScript &script,
                                std::size_t dimension_cap) {
    if (script.initial_input.dim() != m.in_dim() || m.in_dim() != m_bar.in_dim()) {
        throw DimensionMismatch("run_adaptive_script: initial input does not match the channels");
    }
    DensityMatrix rho = final_register(m, script, dimension_cap);
    DensityMatrix sigma = final_register(m_bar, script, dimension_cap);
    const std::size_t n = script.steps.size() + 1;
    if (script.final_measurement) {
        if (static_cast<std::size_t>(script.final_measurement->rows()) != rho.dim()) {
            throw DimensionMismatch("run_adaptive_script: measurement does not match the final register");
        }
        return report_for_test(rho, sigma, *script.final_measurement, n);
    }
    return helstrom_report(rho, sigma, n);
}

AdaptiveScript harrow_adaptive_script() {
    ComplexVector one = ComplexVector::Zero(2);
    one(1) = 1.0;
    // A -> A (x) |1>_C.
    ComplexMatrix append_one = kron(ComplexMatrix::Identity(2, 2), one);
    return {DensityMatrix::basis_state(4, 0), {feed_forward(KrausChannel(2, 4, {append_one}))}, std::nullopt};
}

ClassicalChannelPair::ClassicalChannelPair(Eigen::MatrixXd w, Eigen::MatrixXd w_bar)
    : w_(std::move(w)), w_bar_(std::move(w_bar)) {
    if (w_.rows() != w_bar_.rows() || w_.cols() != w_bar_.cols() || w_.size() == 0) {
        throw DimensionMismatch("ClassicalChannelPair: matrices of different or empty shape");
    }
    for (const auto *m : {&w_, &w_bar_}) {
        for (Eigen::Index x = 0; x < m->rows(); ++x) {
            double residual = std::abs(m->row(x).sum() - 1.0);
            if (m->row(x).minCoeff() < 0.0 || residual > 1e-12) {
                std::ostringstream msg;
                msg << "InvalidChannel: row " << x << " is not a probability vector (row-sum residual " << residual
                    << ", min entry " << m->row(x).minCoeff() << ")";
                throw InvalidChannel(msg.str());
            }
        }
    }
}

namespace {

class ClassicalDp {
   public:
    ClassicalDp(const ClassicalChannelPair &pair, std::size_t n, double a, double b)
        : pair_(pair),
          n_(n),
          weight_(std::exp2(a * static_cast<double>(n))),
          weight_bar_(std::exp2(b * static_cast<double>(n))) {
        if (n == 0) {
            throw ParameterOutOfRange("classical optimum: n must be at least 1");
        }
        double leaves = std::pow(static_cast<double>(pair.inputs() * pair.outputs()), static_cast<double>(n));
        if (leaves > kClassicalLeafBudget) {
            std::ostringstream msg;
            msg << "BudgetExceeded: (|X||Y|)^n = " << leaves << " exceeds " << kClassicalLeafBudget;
            throw BudgetExceeded(msg.str());
        }
    }

    double adaptive() const {
        return value(n_, 1.0, 1.0, std::nullopt);
    }

    double constant(std::size_t x) const {
        return value(n_, 1.0, 1.0, x);
    }

   private:
    double value(std::size_t remaining, double l, double l_bar, std::optional<std::size_t> letter) const {
        if (remaining == 0) {
            return std::min(weight_ * l, weight_bar_ * l_bar);
        }
        double best = INFINITY;
        for (std::size_t x = 0; x < pair_.inputs(); ++x) {
            if (letter && *letter != x) {
                continue;
            }
            const auto xi = static_cast<Eigen::Index>(x);
            double s = 0.0;
            for (Eigen::Index y = 0; y < pair_.w().cols(); ++y) {
                s += value(remaining - 1, l * pair_.w()(xi, y), l_bar * pair_.w_bar()(xi, y), letter);
            }
            best = std::min(best, s);
        }
        return best;
    }

    const ClassicalChannelPair &pair_;
    std::size_t n_;
    double weight_;
    double weight_bar_;
};

}  // namespace

double classical_adaptive_optimum(const ClassicalChannelPair &pair, std::size_t n, double a, double b) {
    return ClassicalDp(pair, n, a, b).adaptive();
}

double classical_parallel_optimum(const ClassicalChannelPair &pair, std::size_t n, double a, double b) {
    ClassicalDp dp(pair, n, a, b);
    double best = INFINITY;
    for (std::size_t x = 0; x < pair.inputs(); ++x) {
        best = std::min(best, dp.constant(x));
    }
    return best;
}

double classical_chernoff_exponent(const ClassicalChannelPair &pair) {
    // -log2 sum_y p^alpha q^(1-alpha) is concave in alpha; scan then refine by ternary search.
    auto phi = [&](Eigen::Index x, double alpha) {
        double s = 0.0;
        for (Eigen::Index y = 0; y < pair.w().cols(); ++y) {
            double p = pair.w()(x, y), q = pair.w_bar()(x, y);
            if (p > 0.0 && q > 0.0) {
                s += std::pow(p, alpha) * std::pow(q, 1.0 - alpha);
            }
        }
        return s > 0.0 ? -std::log2(s) : INFINITY;
    };
    double best = 0.0;
    for (Eigen::Index x = 0; x < pair.w().rows(); ++x) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (phi(x, m1) < phi(x, m2)) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        best = std::max(best, phi(x, 0.5 * (lo + hi)));
    }
    return best;
}

FloorReport nonadaptive_floor_check(const KrausChannel &m, const KrausChannel &m_bar, const PositiveCombination &pc,
                                    std::size_t n, std::size_t samples, std::uint64_t seed, std::size_t dimension_cap) {
    FloorReport report;
    report.floor = error_lower_bound(pc, n);
    report.samples = samples;
    KrausChannel mn = tensor_power(m, n, dimension_cap);
    KrausChannel mn_bar = tensor_power(m_bar, n, dimension_cap);
    const std::size_t ref = mn.in_dim();
    std::vector<double> errors(samples);
    parallel_for(samples, [&](std::size_t k) {
        Rng rng = derived_rng(seed, k);
        ComplexVector psi = haar_pure_vector(ref * ref, rng);
        errors[k] = helstrom_error(apply_extended_pure(mn, psi, ref), apply_extended_pure(mn_bar, psi, ref));
    });
    report.min_error = errors.empty() ? 0.5 : *std::min_element(errors.begin(), errors.end());
    report.violations = static_cast<std::size_t>(
        std::count_if(errors.begin(), errors.end(), [&](double e) { return e < report.floor - 1e-9; }));
    return report;
}

}  // namespace qchd
