#include "qchd/bounds.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qchd/errors.h"
#include "qchd/optimize.h"
#include "qchd/parallel.h"
#include "qchd/random.h"

namespace qchd {

KrausProductSpan kraus_product_span(const KrausChannel &m, const KrausChannel &m_bar) {
    if (m.in_dim() != m_bar.in_dim() || m.out_dim() != m_bar.out_dim()) {
        throw DimensionMismatch("kraus_product_span: channels with different dimensions");
    }
    KrausProductSpan span;
    span.in_dim = m.in_dim();
    span.left_count = m.kraus().size();
    span.right_count = m_bar.kraus().size();
    for (const auto &e : m.kraus()) {
        for (const auto &f : m_bar.kraus()) {
            span.basis.push_back(e.adjoint() * f);
        }
    }
    return span;
}

PositiveCombination evaluate_combination(const KrausProductSpan &span, std::vector<Complex> coefficients) {
    if (coefficients.size() != span.basis.size()) {
        throw DimensionMismatch("evaluate_combination: one coefficient per span element required");
    }
    double norm = 0.0;
    for (const auto &c : coefficients) {
        norm += std::norm(c);
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        throw ParameterOutOfRange("evaluate_combination: zero coefficient vector");
    }
    const auto d = static_cast<Eigen::Index>(span.in_dim);
    PositiveCombination pc;
    pc.P = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        coefficients[k] /= norm;
        pc.P += coefficients[k] * span.basis[k];
    }
    // |Tr tau P| does not see a global phase, but the Hermitian part does:
    // rotate to the phase with the largest lambda_min. The grid brackets the
    // maximum, golden section polishes it.
    const HermitianOperator re = HermitianOperator::hermitian_part(pc.P);
    const HermitianOperator im = HermitianOperator::hermitian_part(Complex(0.0, 1.0) * pc.P);
    auto rotated = [&](double t) {
        return lambda_min(HermitianOperator(std::cos(t) * re.matrix() + std::sin(t) * im.matrix()));
    };
    constexpr int kPhaseGrid = 64;
    const double step = 2.0 * M_PI / kPhaseGrid;
    int best = 0;
    double best_value = rotated(0.0);
    for (int k = 1; k < kPhaseGrid; ++k) {
        double v = rotated(k * step);
        if (v > best_value) {
            best = k;
            best_value = v;
        }
    }
    const double centre = best * step;
    auto polished = maximize_unimodal(rotated, centre - step, centre + step);
    // Keep the given phase unless rotating actually helps.
    if (polished.value > rotated(0.0) + 1e-13) {
        const Complex phase = std::polar(1.0, polished.x);
        for (auto &c : coefficients) {
            c *= phase;
        }
        pc.P *= phase;
    }
    pc.coefficients = std::move(coefficients);
    pc.hermiticity_residual = hermiticity_residual(pc.P);
    pc.lambda_min = lambda_min(HermitianOperator::hermitian_part(pc.P));
    return pc;
}

namespace {

void require_positive(const PositiveCombination &pc, const char *where) {
    if (!pc.positive()) {
        std::ostringstream msg;
        msg << "NotPositive: " << where << ": lambda_min = " << pc.lambda_min << " <= " << kPositivityThreshold;
        throw NotPositive(msg.str());
    }
}

// Concave objective x -> lambda_min(sum_k x_k H_k) over real x in the unit ball,
// H_k the Hermitian parts of the span elements (and of i times them).
class SmoothedMinEigen {
   public:
    SmoothedMinEigen(const KrausProductSpan &span, bool complex_coefficients) {
        for (const auto &b : span.basis) {
            generators_.push_back(HermitianOperator::hermitian_part(b).matrix());
        }
        if (complex_coefficients) {
            for (const auto &b : span.basis) {
                generators_.push_back(HermitianOperator::hermitian_part(Complex(0.0, 1.0) * b).matrix());
            }
        }
        dim_ = static_cast<Eigen::Index>(span.in_dim);
    }

    std::size_t size() const {
        return generators_.size();
    }

    ComplexMatrix assemble(const Eigen::VectorXd &x) const {
        ComplexMatrix h = ComplexMatrix::Zero(dim_, dim_);
        for (std::size_t k = 0; k < generators_.size(); ++k) {
            h += x(static_cast<Eigen::Index>(k)) * generators_[k];
        }
        return h;
    }

    double exact(const Eigen::VectorXd &x) const {
        return lambda_min(HermitianOperator::hermitian_part(assemble(x)));
    }

    /// -mu log sum exp(-lambda_i/mu) and its gradient.
    double smoothed(const Eigen::VectorXd &x, double mu, Eigen::VectorXd *grad) const {
        auto eig = hermitian_eig(HermitianOperator::hermitian_part(assemble(x)));
        const auto &lam = eig.eigenvalues;
        double lo = lam.minCoeff();
        Eigen::VectorXd w = (-(lam.array() - lo) / mu).exp();
        double total = w.sum();
        w /= total;
        if (grad) {
            grad->resize(static_cast<Eigen::Index>(generators_.size()));
            for (std::size_t k = 0; k < generators_.size(); ++k) {
                double g = 0.0;
                for (Eigen::Index i = 0; i < lam.size(); ++i) {
                    if (w(i) < 1e-300) {
                        continue;
                    }
                    auto u = eig.eigenvectors.col(i);
                    g += w(i) * (u.adjoint() * generators_[k] * u)(0, 0).real();
                }
                (*grad)(static_cast<Eigen::Index>(k)) = g;
            }
        }
        return lo - mu * std::log(total);
    }

   private:
    std::vector<ComplexMatrix> generators_;
    Eigen::Index dim_ = 0;
};

Eigen::VectorXd project_to_ball(Eigen::VectorXd x) {
    double n = x.norm();
    return n > 1.0 ? Eigen::VectorXd(x / n) : x;
}

// Projected ascent with backtracking, at decreasing smoothing widths.
Eigen::VectorXd ascend(const SmoothedMinEigen &obj, Eigen::VectorXd x, std::size_t iterations) {
    double step = 0.5;
    for (double mu : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        Eigen::VectorXd grad;
        double value = obj.smoothed(x, mu, &grad);
        for (std::size_t it = 0; it < iterations; ++it) {
            bool moved = false;
            while (step > 1e-12) {
                Eigen::VectorXd cand = project_to_ball(x + step * grad);
                Eigen::VectorXd cand_grad;
                double cand_value = obj.smoothed(cand, mu, &cand_grad);
                if (cand_value > value) {
                    x = std::move(cand);
                    grad = std::move(cand_grad);
                    value = cand_value;
                    step *= 1.5;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) {
                step = 0.5;
                break;
            }
        }
    }
    return x;
}

}  // namespace

double chernoff_upper_bound(const PositiveCombination &pc) {
    require_positive(pc, "chernoff_upper_bound");
    return -4.0 * std::log2(pc.lambda_min);
}

double error_lower_bound(const PositiveCombination &pc, std::size_t n) {
    require_positive(pc, "error_lower_bound");
    if (n == 0) {
        throw ParameterOutOfRange("error_lower_bound: n must be at least 1");
    }
    return 0.25 * std::pow(pc.lambda_min, 4.0 * static_cast<double>(n));
}

std::optional<PositiveCombination> search_positive_combination(const KrausProductSpan &span,
                                                               const CombinationSearch &search) {
    if (span.basis.empty()) {
        return std::nullopt;
    }
    SmoothedMinEigen obj(span, search.complex_coefficients);
    const std::size_t restarts = std::max<std::size_t>(search.restarts, 1);
    std::vector<Eigen::VectorXd> results(restarts);
    std::vector<double> values(restarts);
    parallel_for(restarts, [&](std::size_t k) {
        Rng rng = derived_rng(search.seed, k);
        std::normal_distribution<double> normal;
        Eigen::VectorXd x(static_cast<Eigen::Index>(obj.size()));
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            x(i) = normal(rng);
        }
        x.normalize();
        results[k] = ascend(obj, x, search.iterations_per_stage);
        values[k] = obj.exact(results[k]);
    });
    std::size_t best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    if (values[best] <= kPositivityThreshold) {
        return std::nullopt;
    }

    const Eigen::VectorXd &x = results[best];
    const std::size_t n = span.basis.size();
    std::vector<Complex> coefficients(n);
    for (std::size_t k = 0; k < n; ++k) {
        double re = x(static_cast<Eigen::Index>(k));
        double im = search.complex_coefficients ? x(static_cast<Eigen::Index>(n + k)) : 0.0;
        coefficients[k] = Complex(re, im);
    }
    auto pc = evaluate_combination(span, std::move(coefficients));
    return pc.positive() ? std::optional(std::move(pc)) : std::nullopt;
}

std::vector<Complex> harrow_ansatz_coefficients() {
    const double s2 = std::pow(std::sin(M_PI / 8.0), 2);
    const double b = 1.0 / std::sqrt(8.0 * s2 * s2 + 5.0);
    const double a = 2.0 * b * s2;
    std::vector<Complex> c(25, 0.0);
    auto at = [&](std::size_t e, std::size_t f) -> Complex & { return c[(e - 1) * 5 + (f - 1)]; };
    at(1, 1) = a;
    at(2, 2) = a;
    at(5, 3) = b / std::sqrt(2.0);
    at(3, 4) = b / std::sqrt(2.0);
    at(5, 5) = -2.0 * b;
    return c;
}

double harrow_ansatz_lambda_min() {
    return (2.0 - std::sqrt(2.0)) / (4.0 * std::sqrt(4.0 - std::sqrt(2.0)));
}

}  // namespace qchd
