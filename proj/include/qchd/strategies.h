#ifndef QCHD_STRATEGIES_H
#define QCHD_STRATEGIES_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qchd/bounds.h"
#include "qchd/channels.h"
#include "qchd/linalg.h"

namespace qchd {

// Convention: uniform prior, Bayes error = (type1 + type2) / 2. The weighted
// objective 2^(an) type1 + 2^(bn) type2 at a = b = 0 is twice the Bayes error.

/// type1: deciding M' when M acted; type2: deciding M when M' acted.
struct ErrorReport {
    double type1 = 0.0;
    double type2 = 0.0;
    double bayes = 0.0;
    std::size_t n = 0;
};

/// (1/2)(1 - ||rho - sigma||_1 / 2).
double helstrom_error(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Both error types of the Helstrom test (projector onto the positive part of rho - sigma).
ErrorReport helstrom_report(const DensityMatrix &rho, const DensityMatrix &sigma, std::size_t n);

/// One product input per channel use.
struct ParallelStrategy {
    std::vector<DensityMatrix> inputs;
};

/// Helstrom error of the n-fold outputs for the given product input. Throws
/// BudgetExceeded when out_dim^n exceeds `dimension_cap`.
ErrorReport parallel_error(const KrausChannel &m, const KrausChannel &m_bar, const ParallelStrategy &strategy,
                           std::size_t dimension_cap = kDefaultDimensionCap);

/// Prepares the next input from the previous output. When keep_previous_output is
/// set, the previous output is not consumed and joins the final register.
struct AdaptiveStep {
    std::function<DensityMatrix(const DensityMatrix &)> rule;
    bool keep_previous_output = false;
};

/// Feed the previous output through `prep` (out_dim -> in_dim) as the next input.
AdaptiveStep feed_forward(KrausChannel prep);
/// Ignore feedback: fixed next input, previous output kept for the final test.
AdaptiveStep fixed_input(DensityMatrix input);

/// A witness protocol: initial input, one step per further channel use, and an
/// optional two-outcome measurement {Pi_M, I - Pi_M} on the final register
/// (Helstrom test when absent).
struct AdaptiveScript {
    DensityMatrix initial_input;
    std::vector<AdaptiveStep> steps;
    std::optional<ComplexMatrix> final_measurement;
};

/// Runs the script under both hypotheses and reports the error of the final test.
ErrorReport run_adaptive_script(const KrausChannel &m, const KrausChannel &m_bar, const AdaptiveScript &script,
                                std::size_t dimension_cap = kDefaultDimensionCap);

/// The two-use protocol for harrow_channels(): input |0>_A |0>_C, then the
/// first output on A with |1>_C.
AdaptiveScript harrow_adaptive_script();

/// Pair of classical channels as row-stochastic matrices (rows: inputs x, columns: outputs y).
class ClassicalChannelPair {
   public:
    ClassicalChannelPair(Eigen::MatrixXd w, Eigen::MatrixXd w_bar);

    const Eigen::MatrixXd &w() const {
        return w_;
    }
    const Eigen::MatrixXd &w_bar() const {
        return w_bar_;
    }
    std::size_t inputs() const {
        return static_cast<std::size_t>(w_.rows());
    }
    std::size_t outputs() const {
        return static_cast<std::size_t>(w_.cols());
    }

   private:
    Eigen::MatrixXd w_;
    Eigen::MatrixXd w_bar_;
};

inline constexpr double kClassicalLeafBudget = 1e7;

/// min over deterministic adaptive policies and final tests of
/// 2^(an) type1 + 2^(bn) type2, by backward induction over output histories.
/// Throws BudgetExceeded when (|X||Y|)^n > kClassicalLeafBudget.
double classical_adaptive_optimum(const ClassicalChannelPair &pair, std::size_t n, double a, double b);

/// Same objective for the best constant input letter.
double classical_parallel_optimum(const ClassicalChannelPair &pair, std::size_t n, double a, double b);

/// sup over letters and alpha in [0, 1] of -log2 sum_y W_x(y)^alpha W'_x(y)^(1-alpha).
double classical_chernoff_exponent(const ClassicalChannelPair &pair);

struct FloorReport {
    double floor = 0.0;
    double min_error = 0.0;
    std::size_t samples = 0;
    std::size_t violations = 0;

    bool ok() const {
        return violations == 0;
    }
};

/// Helstrom errors of M^n vs M'^n on Haar-random pure inputs on R (x) A^n with
/// dim R = dim A^n, compared against (1/4) lambda_min^(4n) - 1e-9.
FloorReport nonadaptive_floor_check(const KrausChannel &m, const KrausChannel &m_bar, const PositiveCombination &pc,
                                    std::size_t n, std::size_t samples, std::uint64_t seed = 0,
                                    std::size_t dimension_cap = kDefaultDimensionCap);

}  // namespace qchd

#endif
