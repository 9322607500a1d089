#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "cli.h"
#include "json.hpp"
#include "qchd/bounds.h"
#include "qchd/channel_io.h"
#include "qchd/closed_forms.h"
#include "qchd/curves.h"
#include "qchd/input_search.h"
#include "qchd/strategies.h"

namespace qchd::cli {

void Verdicts::check(bool ok, const std::string &line) {
    if (!ok) {
        ++failures_;
    }
    fmt::print("{} {}\n", ok ? "PASS" : "FAIL", line);
}

namespace {

using nlohmann::json;

struct CurveOptions {
    std::string channel;
    std::vector<double> q;
    std::vector<double> gamma;
    std::vector<double> pauli_p;
    std::string file;
    std::string file_bar;
    std::string cq;
    std::string cq_bar;
    std::string kind = "hoeffding";
    std::string mode;
    std::string pairs = "search";
    std::size_t points = 50;
    std::optional<double> r_max;
    std::string out = ".";
    std::uint64_t seed = 0;
};

// One profile to sample, with the name used for output files.
struct Job {
    std::string label;
    DivergenceProfile profile;
    std::string method;
};

std::string param_label(const std::string &name, double v) {
    return name + format_number(v);
}

InputSearch search_config(std::uint64_t seed) {
    InputSearch s;
    s.seed = seed;
    return s;
}

std::vector<Job> build_jobs(const CurveOptions &o) {
    std::vector<Job> jobs;
    auto power_job = [&](const std::string &label, const KrausChannel &ch) {
        auto cp = power_profile(ch, search_config(o.seed));
        jobs.push_back({label, cp.profile, to_string(cp.method)});
    };
    auto qq_job = [&](const std::string &label, const KrausChannel &m, const KrausChannel &m_bar) {
        auto cp = qq_profile(m, m_bar, search_config(o.seed));
        jobs.push_back({label, cp.profile, to_string(cp.method)});
    };

    if (o.channel == "depolarizing" || (o.channel == "pauli" && o.pauli_p.empty())) {
        if (o.q.empty()) {
            throw CLI::ValidationError("--q", "needs at least one value for channel " + o.channel);
        }
        for (double q : o.q) {
            KrausChannel ch =
                o.channel == "depolarizing" ? depolarizing(q) : pauli({1.0 - 3.0 * q / 4.0, q / 4.0, q / 4.0, q / 4.0});
            power_job(o.channel + "_" + param_label("q", q), ch);
        }
    } else if (o.channel == "pauli") {
        if (o.pauli_p.size() != 4) {
            throw CLI::ValidationError("--p", "expects four probabilities pI,px,py,pz");
        }
        power_job("pauli_p" + format_number(o.pauli_p[0]) + "_" + format_number(o.pauli_p[1]) + "_" +
                      format_number(o.pauli_p[2]) + "_" + format_number(o.pauli_p[3]),
                  pauli({o.pauli_p[0], o.pauli_p[1], o.pauli_p[2], o.pauli_p[3]}));
    } else if (o.channel == "amplitude-damping") {
        if (o.gamma.empty()) {
            throw CLI::ValidationError("--gamma", "needs at least one value for channel amplitude-damping");
        }
        for (double g : o.gamma) {
            std::string label = "amplitude-damping_" + param_label("gamma", g);
            if (o.pairs == "reference") {
                auto [r1, r2] = amplitude_damping_reference_outputs(g);
                SpectralPair p(state_from_bloch(r1), state_from_bloch(r2));
                jobs.push_back({label + "_reference", DivergenceProfile({p, p.swapped()}), "reference-pair"});
            } else {
                power_job(label, amplitude_damping(g));
            }
        }
    } else if (o.channel == "harrow") {
        auto [m, m_bar] = harrow_channels();
        qq_job("harrow", m, m_bar);
    } else if (o.channel == "file") {
        if (o.file.empty()) {
            throw CLI::ValidationError("--file", "required for channel file");
        }
        KrausChannel m = load_channel(o.file);
        if (o.file_bar.empty()) {
            power_job(std::filesystem::path(o.file).stem().string(), m);
        } else {
            qq_job(std::filesystem::path(o.file).stem().string(), m, load_channel(o.file_bar));
        }
    } else if (o.channel == "cq") {
        if (o.cq.empty() || o.cq_bar.empty()) {
            throw CLI::ValidationError("--cq", "channel cq needs --cq and --cq-bar");
        }
        jobs.push_back({"cq", cq_profile(load_cq_channel(o.cq), load_cq_channel(o.cq_bar)), "finite-alphabet"});
    }
    return jobs;
}

json value_json(double v) {
    return std::isfinite(v) ? json(v) : json("inf");
}

void write_output(const CurveOptions &o, const std::string &name, const std::string &content) {
    if (o.out == "-") {
        std::cout << "# " << name << "\n" << content;
        return;
    }
    std::filesystem::create_directories(o.out);
    std::filesystem::path path = std::filesystem::path(o.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot write '" + path.string() + "'");
    }
    f << content;
    std::cerr << "wrote " << path.string() << "\n";
}

int cmd_curve(const CurveOptions &o) {
    auto jobs = build_jobs(o);
    json summary = json::array();
    for (const auto &job : jobs) {
        auto d = job.profile.stein();
        auto d_rev = job.profile.reverse_stein();
        json entry{{"label", job.label},
                   {"search", job.method},
                   {"D", value_json(d.value)},
                   {"D_reverse", value_json(d_rev.value)}};
        std::ostringstream csv;
        if (o.kind == "hoeffding") {
            double r_max = o.r_max.value_or(d.value);
            if (!std::isfinite(r_max)) {
                throw CLI::ValidationError(
                    "--r-max", "D(M||M') is infinite for " + job.label + "; pass --r-max to bound the r grid");
            }
            auto rs = uniform_grid(r_max, o.points);
            auto curve = emit_hoeffding_curve(job.profile, rs);
            write_csv(csv, curve);
            auto check = check_hoeffding_curve(curve);
            entry["B_first"] = value_json(curve.samples.front().B);
            entry["B_last"] = value_json(curve.samples.back().B);
            entry["alpha_star_first"] = curve.samples.front().alpha_star;
            entry["alpha_star_last"] = curve.samples.back().alpha_star;
            entry["nonincreasing"] = check.nonincreasing;
            entry["convex"] = check.convex;
            entry["alpha_star_nondecreasing"] = check.alpha_nondecreasing;
            entry["problems"] = check.problems;
        } else {
            auto curve = emit_chernoff_curve(job.profile, chernoff_band_grid(job.profile, o.points));
            write_csv(csv, curve);
            entry["C_first"] = value_json(curve.samples.front().C);
            entry["C_last"] = value_json(curve.samples.back().C);
        }
        std::string file = job.label + "_" + o.kind + ".csv";
        entry["csv"] = file;
        write_output(o, file, csv.str());
        summary.push_back(std::move(entry));
    }
    std::string base = jobs.size() == 1 ? jobs.front().label : o.channel;
    write_output(o, base + "_" + o.kind + "_summary.json", summary.dump(2) + "\n");
    return 0;
}

KrausChannel named_channel(const std::string &name, double param) {
    if (name == "depolarizing") {
        return depolarizing(param);
    }
    if (name == "amplitude-damping") {
        return amplitude_damping(param);
    }
    return pauli({1.0 - 3.0 * param / 4.0, param / 4.0, param / 4.0, param / 4.0});
}

std::string bloch_json(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        return "";
    }
    Vec3 r = bloch_vector(rho);
    return fmt::format("({}, {}, {})", format_number(r(0)), format_number(r(1)), format_number(r(2)));
}

int cmd_power(const std::string &channel, const std::string &file, double param, std::optional<double> alpha,
              std::uint64_t seed) {
    KrausChannel ch = file.empty() ? named_channel(channel, param) : load_channel(file);
    auto cfg = search_config(seed);
    auto d = pair_relative_entropy_sup(ch, cfg);
    fmt::print("D(M) = {}\n", format_number(d.value.value));
    fmt::print("  maximising inputs: {} | {}\n", bloch_json(d.argmax_state), bloch_json(*d.partner));
    fmt::print("  outputs: {} | {}\n", bloch_json(apply(ch, d.argmax_state)), bloch_json(apply(ch, *d.partner)));
    if (alpha) {
        auto opt = pair_renyi_sup(ch, *alpha, cfg);
        fmt::print("D_{}(M) = {}\n", format_number(*alpha), format_number(opt.value.value));
        fmt::print("  outputs: {} | {}\n", bloch_json(apply(ch, opt.argmax_state)),
                   bloch_json(apply(ch, *opt.partner)));
    }
    fmt::print("search: {}\n", to_string(d.method));
    return 0;
}

int cmd_bound(const std::string &file, const std::string &file_bar, std::size_t restarts, std::uint64_t seed,
              bool as_json) {
    bool harrow = file.empty();
    auto [m, m_bar] = harrow ? harrow_channels() : std::pair{load_channel(file), load_channel(file_bar)};
    auto span = kraus_product_span(m, m_bar);
    CombinationSearch cs;
    cs.restarts = restarts;
    cs.seed = seed;
    auto found = search_positive_combination(span, cs);
    std::optional<PositiveCombination> ansatz;
    if (harrow) {
        ansatz = evaluate_combination(span, harrow_ansatz_coefficients());
    }

    auto describe = [](const PositiveCombination &pc) {
        json coeffs = json::array();
        for (const auto &c : pc.coefficients) {
            coeffs.push_back({c.real(), c.imag()});
        }
        return json{{"lambda_min", pc.lambda_min},
                    {"hermiticity_residual", pc.hermiticity_residual},
                    {"error_floor_n1", error_lower_bound(pc, 1)},
                    {"chernoff_upper_bound", chernoff_upper_bound(pc)},
                    {"coefficients", coeffs}};
    };
    json out{{"span_size", span.basis.size()}, {"restarts", restarts}, {"seed", seed}};
    out["search"] = found ? describe(*found) : json("not found");
    if (ansatz) {
        out["ansatz"] = describe(*ansatz);
    }
    if (as_json) {
        std::cout << out.dump(2) << "\n";
        return found ? 0 : 1;
    }
    auto print = [](const char *what, const PositiveCombination &pc) {
        fmt::print(
            "{}:\n  lambda_min = {}\n  n=1 error floor (1/4) lambda^4 = {}\n  Chernoff upper bound 4 log2(1/lambda) = "
            "{}\n",
            what, format_number(pc.lambda_min), format_number(error_lower_bound(pc, 1)),
            format_number(chernoff_upper_bound(pc)));
        fmt::print("  P Hermiticity residual = {}\n  coefficients:", format_number(pc.hermiticity_residual));
        for (std::size_t k = 0; k < pc.coefficients.size(); ++k) {
            if (std::abs(pc.coefficients[k]) > 1e-9) {
                fmt::print(" [{}]=({}, {})", k, format_number(pc.coefficients[k].real()),
                           format_number(pc.coefficients[k].imag()));
            }
        }
        fmt::print("\n");
    };
    if (ansatz) {
        print("ansatz", *ansatz);
    }
    if (found) {
        print("search", *found);
    } else {
        fmt::print("search: no positive combination found (lambda_min <= {})\n", kPositivityThreshold);
    }
    return found ? 0 : 1;
}

int cmd_separate_harrow(std::size_t n, std::size_t samples, std::uint64_t seed) {
    auto [m, m_bar] = harrow_channels();
    auto pc = evaluate_combination(kraus_product_span(m, m_bar), harrow_ansatz_coefficients());
    auto adaptive = run_adaptive_script(m, m_bar, harrow_adaptive_script());
    auto floor = nonadaptive_floor_check(m, m_bar, pc, n, samples, seed);
    Verdicts v;
    v.check(adaptive.bayes <= 1e-12,
            fmt::format("adaptive 2-use protocol: error {} (type1 {}, type2 {})", format_number(adaptive.bayes),
                        format_number(adaptive.type1), format_number(adaptive.type2)));
    v.check(floor.ok(),
            fmt::format("parallel n={}: {} Haar inputs, min error {} vs floor {} ({} below)", n, floor.samples,
                        format_number(floor.min_error), format_number(floor.floor), floor.violations));
    fmt::print("verdict: {}\n", v.exit_code() == 0 ? "separation witnessed" : "separation NOT witnessed");
    return v.exit_code();
}

int cmd_classical_dp(const std::string &pair_file, std::size_t n, double a, double b) {
    auto pair = load_classical_pair(pair_file);
    double adaptive = classical_adaptive_optimum(pair, n, a, b);
    double parallel = classical_parallel_optimum(pair, n, a, b);
    auto rate = [n](double v) { return -std::log2(v) / static_cast<double>(n); };
    fmt::print("n = {}, a = {}, b = {}\n", n, format_number(a), format_number(b));
    fmt::print("objective 2^(an) type1 + 2^(bn) type2 (twice the Bayes error at a = b = 0)\n");
    fmt::print("  adaptive: {}  (-(1/n) log2 = {})\n", format_number(adaptive), format_number(rate(adaptive)));
    fmt::print("  parallel: {}  (-(1/n) log2 = {})\n", format_number(parallel), format_number(rate(parallel)));
    if (a == 0.0 && b == 0.0) {
        fmt::print("  single-letter Chernoff exponent: {}\n", format_number(classical_chernoff_exponent(pair)));
    }
    return 0;
}

}  // namespace

}  // namespace qchd::cli

int main(int argc, char **argv) {
    using namespace qchd::cli;
    CLI::App app{"Error exponents for discriminating quantum channels"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "master seed for all searches and sampling")->capture_default_str();

    CurveOptions co;
    auto *curve = app.add_subcommand("curve", "sample Hoeffding or Chernoff exponent curves to CSV");
    curve->add_option("--channel", co.channel, "depolarizing | pauli | amplitude-damping | harrow | file | cq")
        ->required()
        ->check(CLI::IsMember({"depolarizing", "pauli", "amplitude-damping", "harrow", "file", "cq"}));
    curve->add_option("--q", co.q, "depolarizing / symmetric Pauli parameters (comma separated)")
        ->delimiter(',')
        ->check(CLI::Number & CLI::Range(0.0, 1.0));
    curve->add_option("--gamma", co.gamma, "amplitude damping parameters (comma separated)")
        ->delimiter(',')
        ->check(CLI::Number & CLI::Range(0.0, 1.0));
    curve->add_option("--p", co.pauli_p, "Pauli probabilities pI,px,py,pz")
        ->delimiter(',')
        ->check(CLI::Number & CLI::Range(0.0, 1.0));
    curve->add_option("--file", co.file, "channel JSON (alone: discrimination power; with --file-bar: qq pair)");
    curve->add_option("--file-bar", co.file_bar, "second channel JSON");
    curve->add_option("--cq", co.cq, "cq-channel JSON");
    curve->add_option("--cq-bar", co.cq_bar, "second cq-channel JSON");
    curve->add_option("--kind", co.kind, "hoeffding | chernoff")
        ->check(CLI::IsMember({"hoeffding", "chernoff"}))
        ->capture_default_str();
    curve->add_option("--pairs", co.pairs, "amplitude damping: optimise pairs (search) or use the reference pair")
        ->check(CLI::IsMember({"search", "reference"}))
        ->capture_default_str();
    curve->add_option("--points", co.points, "samples per curve")->check(CLI::PositiveNumber)->capture_default_str();
    curve->add_option("--r-max", co.r_max, "upper end of the r grid (default D)");
    curve->add_option("--out", co.out, "output directory, or - for stdout")->capture_default_str();

    std::string example;
    auto *reproduce = app.add_subcommand("reproduce", "recompute a worked example and compare with reference values");
    reproduce->add_option("example", example, "example id")->required()->check(CLI::IsMember(kExampleIds));

    std::string suite;
    auto *verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(kSuites));

    std::string bound_file, bound_file_bar;
    std::size_t restarts = 64;
    bool as_json = false;
    auto *bound = app.add_subcommand("bound", "search a positive Kraus-product combination (default: Harrow pair)");
    bound->add_option("--file", bound_file, "first channel JSON");
    bound->add_option("--file-bar", bound_file_bar, "second channel JSON");
    bound->add_option("--restarts", restarts, "random restarts")->check(CLI::PositiveNumber)->capture_default_str();
    bound->add_flag("--json", as_json, "print JSON instead of text");

    std::size_t sep_n = 2, sep_samples = 500;
    auto *separate = app.add_subcommand("separate-harrow", "adaptive protocol vs parallel error floor");
    separate->add_option("--n", sep_n, "channel uses for the parallel floor")->capture_default_str();
    separate->add_option("--samples", sep_samples, "Haar inputs")->capture_default_str();

    std::string pair_file;
    std::size_t dp_n = 1;
    double dp_a = 0.0, dp_b = 0.0;
    auto *dp = app.add_subcommand("classical-dp", "exact adaptive and parallel optima for classical channels");
    dp->add_option("--pair", pair_file, "classical pair JSON {\"W\": ..., \"Wbar\": ...}")->required();
    dp->add_option("--n", dp_n, "channel uses")->check(CLI::PositiveNumber)->capture_default_str();
    dp->add_option("--a", dp_a, "type-I weight exponent")->capture_default_str();
    dp->add_option("--b", dp_b, "type-II weight exponent")->capture_default_str();

    std::string power_channel = "depolarizing", power_file;
    double power_param = 0.5;
    std::optional<double> power_alpha;
    auto *power = app.add_subcommand("power", "discrimination power of a channel (optimal state pair)");
    power->add_option("--channel", power_channel, "depolarizing | pauli | amplitude-damping")
        ->check(CLI::IsMember({"depolarizing", "pauli", "amplitude-damping"}))
        ->capture_default_str();
    power->add_option("--param", power_param, "q or gamma")->capture_default_str();
    power->add_option("--file", power_file, "channel JSON instead of a named channel");
    power->add_option("--alpha", power_alpha, "also report the Renyi power at this alpha");

    CLI11_PARSE(app, argc, argv);
    co.seed = seed;
    try {
        if (*curve) {
            return cmd_curve(co);
        }
        if (*reproduce) {
            return run_reproduce(example, seed);
        }
        if (*verify) {
            return run_verify(suite, seed);
        }
        if (*bound) {
            if (bound_file.empty() != bound_file_bar.empty()) {
                throw CLI::ValidationError("--file", "give both --file and --file-bar, or neither");
            }
            return cmd_bound(bound_file, bound_file_bar, restarts, seed, as_json);
        }
        if (*separate) {
            return cmd_separate_harrow(sep_n, sep_samples, seed);
        }
        if (*dp) {
            return cmd_classical_dp(pair_file, dp_n, dp_a, dp_b);
        }
        if (*power) {
            return cmd_power(power_channel, power_file, power_param, power_alpha, seed);
        }
    } catch (const CLI::Error &e) {
        return app.exit(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
