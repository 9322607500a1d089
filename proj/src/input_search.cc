#include "qchd/input_search.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>

#include "qchd/errors.h"
#include "qchd/optimize.h"
#include "qchd/parallel.h"
#include "qchd/random.h"

namespace qchd {

std::string to_string(SearchMethod m) {
    switch (m) {
        case SearchMethod::kBlochGrid:
            return "bloch-grid+nelder-mead";
        case SearchMethod::kRandomRestart:
            return "random-restart+nelder-mead";
    }
    return "unknown";
}

namespace {

using Coords = std::vector<double>;
using Score = std::function<double(const SpectralPair &)>;

constexpr std::size_t kPoolPerScore = 8;

// Pure-state coordinates: (theta, phi) for qubits, real and imaginary parts
// of the amplitudes otherwise.
class Chart {
   public:
    explicit Chart(std::size_t dim) : dim_(dim) {
    }

    std::size_t size() const {
        return dim_ == 2 ? 2 : 2 * dim_;
    }

    ComplexVector vector(std::span<const double> x) const {
        if (dim_ == 2) {
            return qubit_vector(x[0], x[1]);
        }
        ComplexVector v(static_cast<Eigen::Index>(dim_));
        for (std::size_t k = 0; k < dim_; ++k) {
            v(static_cast<Eigen::Index>(k)) = Complex(x[2 * k], x[2 * k + 1]);
        }
        double n = v.norm();
        if (n < 1e-150) {
            v.setZero();
            v(0) = 1.0;
            return v;
        }
        return v / n;
    }

    Coords coords(const ComplexVector &v) const {
        if (dim_ == 2) {
            double theta = 2.0 * std::acos(std::clamp(std::abs(v(0)), 0.0, 1.0));
            double phi = std::arg(v(1)) - std::arg(v(0));
            return {theta, phi};
        }
        Coords x(2 * dim_);
        for (std::size_t k = 0; k < dim_; ++k) {
            x[2 * k] = v(static_cast<Eigen::Index>(k)).real();
            x[2 * k + 1] = v(static_cast<Eigen::Index>(k)).imag();
        }
        return x;
    }

   private:
    std::size_t dim_;
};

EigenDecomposition output_eig(const KrausChannel &ch, const ComplexVector &psi) {
    const auto d = static_cast<Eigen::Index>(ch.out_dim());
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (const auto &e : ch.kraus()) {
        ComplexVector v = e * psi;
        rho.noalias() += v * v.adjoint();
    }
    return hermitian_eig(HermitianOperator::hermitian_part(rho));
}

std::vector<ComplexVector> seed_states(std::size_t dim, std::size_t theta_points, std::size_t phi_points,
                                       const InputSearch &cfg) {
    std::vector<ComplexVector> out;
    if (dim == 2) {
        theta_points = std::max<std::size_t>(theta_points, 2);
        phi_points = std::max<std::size_t>(phi_points, 1);
        for (std::size_t i = 0; i < theta_points; ++i) {
            double theta = M_PI * static_cast<double>(i) / static_cast<double>(theta_points - 1);
            for (std::size_t j = 0; j < phi_points; ++j) {
                double phi = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(phi_points);
                out.push_back(qubit_vector(theta, phi));
            }
        }
        return out;
    }
    for (std::size_t k = 0; k < std::max<std::size_t>(cfg.restarts, 1); ++k) {
        Rng rng = derived_rng(cfg.seed, k);
        out.push_back(haar_pure_vector(dim, rng));
    }
    return out;
}

struct Found {
    Coords x;
    double score = -INFINITY;
};

// Seeds with precomputed spectral pairs, and Nelder-Mead refinement from them.
class PointSearch {
   public:
    using Evaluate = std::function<SpectralPair(std::span<const double>)>;

    PointSearch(Evaluate evaluate, std::vector<Coords> seeds, std::vector<SpectralPair> seed_pairs, double step,
                double tol)
        : evaluate_(std::move(evaluate)),
          seeds_(std::move(seeds)),
          seed_pairs_(std::move(seed_pairs)),
          step_(step),
          tol_(tol) {
    }

    std::vector<std::size_t> ranked_seeds(const Score &score, std::size_t count) const {
        std::vector<double> s(seeds_.size());
        for (std::size_t k = 0; k < seeds_.size(); ++k) {
            s[k] = score(seed_pairs_[k]);
        }
        std::vector<std::size_t> idx(seeds_.size());
        std::iota(idx.begin(), idx.end(), 0);
        count = std::min(count, idx.size());
        std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                          [&](std::size_t a, std::size_t b) { return s[a] > s[b] || (s[a] == s[b] && a < b); });
        idx.resize(count);
        return idx;
    }

    Found refine(const Coords &x0, const Score &score) const {
        Found start{x0, score(evaluate_(x0))};
        if (std::isinf(start.score) && start.score > 0) {
            return start;
        }
        auto objective = [&](std::span<const double> x) { return -score(evaluate_(x)); };
        auto opt = nelder_mead_minimize(objective, x0, step_, tol_);
        Found out{opt.x, score(evaluate_(opt.x))};
        return out.score >= start.score ? out : start;
    }

    /// Refines the `count` best seeds and returns the best result.
    Found best(const Score &score, std::size_t count = 1) const {
        Found out;
        for (std::size_t k : ranked_seeds(score, count)) {
            Found f = refine(seeds_[k], score);
            if (f.score > out.score || out.x.empty()) {
                out = std::move(f);
            }
        }
        return out;
    }

    /// Refines the best of `candidates` under `score`.
    Found best_among(const Score &score, const std::vector<Coords> &candidates) const {
        std::size_t best_k = 0;
        double best_s = -INFINITY;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            double s = score(evaluate_(candidates[k]));
            if (s > best_s) {
                best_s = s;
                best_k = k;
            }
        }
        return refine(candidates[best_k], score);
    }

    const Coords &seed(std::size_t k) const {
        return seeds_[k];
    }

    void add_seed(const Coords &x) {
        seed_pairs_.push_back(evaluate_(x));
        seeds_.push_back(x);
    }

    std::size_t seed_count() const {
        return seeds_.size();
    }

    SpectralPair evaluate(const Coords &x) const {
        return evaluate_(x);
    }

   private:
    Evaluate evaluate_;
    std::vector<Coords> seeds_;
    std::vector<SpectralPair> seed_pairs_;
    double step_;
    double tol_;
};

Score alpha_score(double alpha) {
    return [alpha](const SpectralPair &p) { return p.chernoff_function(alpha); };
}

Score forward_score() {
    return [](const SpectralPair &p) { return p.forward_relative_entropy().value; };
}

Score backward_score() {
    return [](const SpectralPair &p) { return p.backward_relative_entropy().value; };
}

// Inputs of a single-input or pair search together with how to read coordinates.
struct SearchSetup {
    Chart chart;
    bool pair = false;
    SearchMethod method = SearchMethod::kBlochGrid;
    PointSearch search;
    /// Seeds refined per score in the random-restart warm-up.
    std::size_t warmup_count = 0;

    InputLetter letter(const Coords &x) const {
        const std::size_t n = chart.size();
        InputLetter out{chart.vector(std::span<const double>(x.data(), n)), std::nullopt};
        if (pair) {
            out.second = chart.vector(std::span<const double>(x.data() + n, n));
        }
        return out;
    }
};

SearchSetup single_setup(const KrausChannel &m, const KrausChannel &m_bar, const InputSearch &cfg) {
    if (m.in_dim() != m_bar.in_dim() || m.out_dim() != m_bar.out_dim()) {
        throw DimensionMismatch("input search: channels with different dimensions");
    }
    Chart chart(m.in_dim());
    auto states = seed_states(m.in_dim(), cfg.theta_points, cfg.phi_points, cfg);
    std::vector<Coords> seeds;
    std::vector<SpectralPair> pairs;
    for (const auto &psi : states) {
        seeds.push_back(chart.coords(psi));
        pairs.emplace_back(output_eig(m, psi), output_eig(m_bar, psi));
    }
    auto evaluate = [&m, &m_bar, chart](std::span<const double> x) {
        ComplexVector psi = chart.vector(x);
        return SpectralPair(output_eig(m, psi), output_eig(m_bar, psi));
    };
    bool qubit = m.in_dim() == 2;
    double step = qubit ? M_PI / static_cast<double>(std::max<std::size_t>(cfg.theta_points, 2) - 1) : 0.3;
    return SearchSetup{chart, false, qubit ? SearchMethod::kBlochGrid : SearchMethod::kRandomRestart,
                       PointSearch(evaluate, std::move(seeds), std::move(pairs), step, cfg.tolerance),
                       qubit ? 0 : states.size()};
}

SearchSetup pair_setup(const KrausChannel &m, const InputSearch &cfg) {
    Chart chart(m.in_dim());
    auto states = seed_states(m.in_dim(), cfg.pair_theta_points, cfg.pair_phi_points, cfg);
    std::vector<EigenDecomposition> eigs;
    std::vector<Coords> coords;
    for (const auto &psi : states) {
        eigs.push_back(output_eig(m, psi));
        coords.push_back(chart.coords(psi));
    }
    std::vector<Coords> seeds;
    std::vector<SpectralPair> pairs;
    seeds.reserve(states.size() * states.size());
    pairs.reserve(states.size() * states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = 0; j < states.size(); ++j) {
            Coords x = coords[i];
            x.insert(x.end(), coords[j].begin(), coords[j].end());
            seeds.push_back(std::move(x));
            pairs.emplace_back(eigs[i], eigs[j]);
        }
    }
    const std::size_t n = chart.size();
    auto evaluate = [&m, chart, n](std::span<const double> x) {
        return SpectralPair(output_eig(m, chart.vector(x.subspan(0, n))), output_eig(m, chart.vector(x.subspan(n, n))));
    };
    bool qubit = m.in_dim() == 2;
    double step = qubit ? M_PI / static_cast<double>(std::max<std::size_t>(cfg.pair_theta_points, 2) - 1) : 0.3;
    return SearchSetup{chart, true, qubit ? SearchMethod::kBlochGrid : SearchMethod::kRandomRestart,
                       PointSearch(evaluate, std::move(seeds), std::move(pairs), step, cfg.tolerance),
                       qubit ? 0 : states.size()};
}

// Random-restart warm-up: refine the leading seeds at a few alphas and for both
// relative entropies, and keep the results as extra seeds.
void warm_up(SearchSetup &setup) {
    if (setup.warmup_count == 0) {
        return;
    }
    std::vector<Score> scores;
    for (int k = 1; k <= 9; ++k) {
        scores.push_back(alpha_score(k / 10.0));
    }
    scores.push_back(forward_score());
    scores.push_back(backward_score());

    std::vector<Coords> refined(scores.size());
    parallel_for(scores.size(),
                 [&](std::size_t s) { refined[s] = setup.search.best(scores[s], setup.warmup_count).x; });
    for (const auto &x : refined) {
        setup.search.add_seed(x);
    }
}

InputOptimum to_optimum(const SearchSetup &setup, const Found &f, DivergenceValue value) {
    InputLetter l = setup.letter(f.x);
    InputOptimum out{value, DensityMatrix::pure(l.first), std::nullopt, setup.method};
    if (l.second) {
        out.partner = DensityMatrix::pure(*l.second);
    }
    return out;
}

InputOptimum renyi_sup(SearchSetup setup, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw AlphaOutOfRange("input search: alpha not in (0, 1)");
    }
    warm_up(setup);
    Found f = setup.search.best(alpha_score(alpha));
    return to_optimum(setup, f, DivergenceValue::of(f.score / (1.0 - alpha)));
}

InputOptimum relative_entropy_sup(SearchSetup setup) {
    warm_up(setup);
    Found f = setup.search.best(forward_score());
    return to_optimum(setup, f, DivergenceValue::of(f.score));
}

ChannelProfile build_profile(SearchSetup setup, const AlphaSearch &alpha) {
    warm_up(setup);
    const std::size_t n = std::max<std::size_t>(alpha.grid_points, 1);
    std::vector<Score> scores;
    for (std::size_t k = 1; k <= n; ++k) {
        scores.push_back(alpha_score(static_cast<double>(k) / static_cast<double>(n + 1)));
    }
    scores.push_back(forward_score());
    scores.push_back(backward_score());

    // Full seed scans only at a coarse set of scores; every grid alpha then starts
    // from the best member of the pooled leaders.
    std::vector<Score> coarse;
    for (int k = 1; k <= 9; ++k) {
        coarse.push_back(alpha_score(k / 10.0));
    }
    coarse.push_back(forward_score());
    coarse.push_back(backward_score());
    std::vector<std::vector<Coords>> leaders(coarse.size());
    parallel_for(coarse.size(), [&](std::size_t s) {
        for (std::size_t k : setup.search.ranked_seeds(coarse[s], kPoolPerScore)) {
            leaders[s].push_back(setup.search.seed(k));
        }
        leaders[s].push_back(setup.search.refine(leaders[s].front(), coarse[s]).x);
    });
    std::vector<Coords> pool;
    for (auto &l : leaders) {
        pool.insert(pool.end(), l.begin(), l.end());
    }

    std::vector<Coords> found(scores.size());
    parallel_for(scores.size(), [&](std::size_t s) { found[s] = setup.search.best_among(scores[s], pool).x; });

    std::vector<SpectralPair> letters;
    std::vector<InputLetter> inputs;
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < found.size(); ++s) {
        std::string label = s < n ? "alpha=" + std::to_string(static_cast<double>(s + 1) / static_cast<double>(n + 1))
                                  : (s == n ? "forward-D" : "backward-D");
        SpectralPair p = setup.search.evaluate(found[s]);
        InputLetter l = setup.letter(found[s]);
        if (setup.pair) {
            // Pair sets are symmetric under exchange; keep both orders.
            letters.push_back(p.swapped());
            inputs.push_back({*l.second, l.first});
            labels.push_back(label + "/swapped");
        }
        letters.push_back(std::move(p));
        inputs.push_back(std::move(l));
        labels.push_back(std::move(label));
    }
    return {DivergenceProfile(std::move(letters), std::move(labels)), std::move(inputs), setup.method};
}

}  // namespace

InputOptimum channel_renyi_sup(const KrausChannel &m, const KrausChannel &m_bar, double alpha,
                               const InputSearch &search) {
    return renyi_sup(single_setup(m, m_bar, search), alpha);
}

InputOptimum channel_relative_entropy_sup(const KrausChannel &m, const KrausChannel &m_bar, const InputSearch &search) {
    return relative_entropy_sup(single_setup(m, m_bar, search));
}

InputOptimum pair_renyi_sup(const KrausChannel &m, double alpha, const InputSearch &search) {
    return renyi_sup(pair_setup(m, search), alpha);
}

InputOptimum pair_relative_entropy_sup(const KrausChannel &m, const InputSearch &search) {
    return relative_entropy_sup(pair_setup(m, search));
}

ChannelProfile qq_profile(const KrausChannel &m, const KrausChannel &m_bar, const InputSearch &search) {
    return build_profile(single_setup(m, m_bar, search), search.alpha);
}

ChannelProfile power_profile(const KrausChannel &m, const InputSearch &search) {
    return build_profile(pair_setup(m, search), search.alpha);
}

AlphaOptimum qq_hoeffding_B(const KrausChannel &m, const KrausChannel &m_bar, double r, const InputSearch &search) {
    return hoeffding_B(qq_profile(m, m_bar, search).profile, r, search.alpha);
}

AlphaOptimum qq_chernoff_C(const KrausChannel &m, const KrausChannel &m_bar, double a, double b,
                           const InputSearch &search) {
    return chernoff_C(qq_profile(m, m_bar, search).profile, a, b, search.alpha);
}

AlphaOptimum discrimination_power_B(const KrausChannel &m, double r, const InputSearch &search) {
    return hoeffding_B(power_profile(m, search).profile, r, search.alpha);
}

AlphaOptimum discrimination_power_C(const KrausChannel &m, double a, double b, const InputSearch &search) {
    return chernoff_C(power_profile(m, search).profile, a, b, search.alpha);
}

}  // namespace qchd
