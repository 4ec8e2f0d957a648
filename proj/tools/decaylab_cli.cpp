#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "decaylab/harness.hpp"
#include "decaylab/radial_linear.hpp"

namespace {

using namespace decaylab;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void print_fit(const DecayFit& fit) {
    std::printf("exponent = %.17g\n", fit.exponent);
    std::printf("log_prefactor = %.17g\n", fit.log_prefactor);
    std::printf("window = [%g, %g]\n", fit.t_lo, fit.t_hi);
    std::printf("r_squared = %.17g\n", fit.r_squared);
}

int cmd_predict(const std::string& system, double r_star, double delta) {
    PredictionSystem psys;
    if (system == "temam" || system == "nse") psys = PredictionSystem::TemamOrNse;
    else if (system == "lelievre") psys = PredictionSystem::Lelievre;
    else if (system == "linear") psys = PredictionSystem::Linear;
    else throw std::invalid_argument("predict: unknown system '" + system + "'");
    std::printf("%.17g\n", predicted_exponent(psys, r_star, delta));
    return kExitOk;
}

int cmd_bootstrap(double r_star, double delta) {
    const BootstrapState state = bootstrap_sequence(r_star, delta);
    std::printf("terminal_beta = %.17g\nhistory =", state.beta);
    for (double b : state.history) std::printf(" %.17g", b);
    std::printf("\n");
    return kExitOk;
}

int cmd_decay_character(const std::string& input, double s) {
    const ExperimentConfig cfg = load_config(input);
    const SpectralField u0 = synthesize(cfg.data, cfg.grid);
    const double rho_lo = cfg.estimate_rho_lo > 0.0 ? cfg.estimate_rho_lo
                                                    : 2.0 * cfg.grid.k_min();
    double rho_hi = cfg.estimate_rho_hi;
    if (rho_hi <= 0.0)
        rho_hi = cfg.data.kind == InitialDataSpec::Kind::Annulus ? cfg.data.k1
                                                                 : cfg.data.cutoff;
    const DecayCharacterEstimate est = estimate_decay_character(u0, s, rho_lo, rho_hi);
    switch (est.verdict) {
        case DecayCharacterEstimate::Verdict::Finite:
            std::printf("r_star = %.17g\n", est.r_star);
            break;
        case DecayCharacterEstimate::Verdict::InfiniteCharacter:
            std::printf("r_star = INFINITY\n");
            break;
        case DecayCharacterEstimate::Verdict::NegLimit:
            std::printf("r_star = NEG_LIMIT\n");
            break;
        case DecayCharacterEstimate::Verdict::NoVerdict:
            std::printf("r_star = NO_VERDICT\n");
            break;
    }
    std::printf("s = %.17g\nslope = %.17g\nwindow = [%g, %g]\nresidual = %.17g\n",
                est.s, est.slope, est.rho_lo, est.rho_hi, est.residual);
    return kExitOk;
}

int cmd_linear_decay(const std::string& profile, double theta, double eps,
                     double tmin, double tmax) {
    double q = 0.0;
    if (profile.rfind("q=", 0) != 0)
        throw std::invalid_argument("linear-decay: --profile must look like q=Q");
    q = std::stod(profile.substr(2));
    const RadialProfile rp = power_law_profile(q, 1.0, theta, eps);
    const std::vector<double> t_grid = log_spaced(tmin, tmax, 40);
    std::printf("t,linear_norm_sq\n");
    std::vector<double> values;
    for (double t : t_grid) {
        const double v = linear_norm_sq(rp, t);
        values.push_back(v);
        std::printf("%.17g,%.17g\n", t, v);
    }
    const DecayFit fit = fit_power_law(t_grid, values, tmin, tmax);
    std::printf("# fitted_exponent = %.17g (predicted %.17g)\n", fit.exponent,
                1.5 + q);
    return kExitOk;
}

int cmd_simulate(const std::string& config_path) {
    const ExperimentReport report = run_experiment(load_config(config_path));
    report.write(std::cout);
    if (!report.failed_stage.empty()) {
        return report.failed_stage == "run" || report.failed_stage == "fit"
                   ? kExitNumerical
                   : kExitValidation;
    }
    return kExitOk;
}

int cmd_fit(const std::string& trace_path, const std::string& window) {
    const auto colon = window.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("fit: --window must look like T0:T1");
    const double t_lo = std::stod(window.substr(0, colon));
    const double t_hi = std::stod(window.substr(colon + 1));

    std::ifstream is(trace_path);
    if (!is) throw std::invalid_argument("fit: cannot open " + trace_path);
    std::string line;
    std::getline(is, line);  // header
    std::vector<double> times, values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        times.push_back(std::stod(cell));
        std::getline(row, cell, ',');
        values.push_back(std::stod(cell));
    }
    print_fit(fit_power_law(times, values, t_lo, t_hi));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressible Navier-Stokes approximations: decay laboratory"};
    app.require_subcommand(1);

    std::string system = "lelievre", input, profile = "q=0", config_path, trace_path,
                window, sweep_dir;
    double r_star = 0.0, delta = 0.05, s = 0.0, theta = 0.0, eps = 1.0;
    double tmin = 1e2, tmax = 1e4;
    int workers = 1;

    auto* predict = app.add_subcommand("predict", "Predicted decay exponent");
    predict->add_option("--system", system)->required();
    predict->add_option("--rstar", r_star)->required();
    predict->add_option("--delta", delta);

    auto* bootstrap = app.add_subcommand("bootstrap", "Replay the proof's bootstrap chain");
    bootstrap->add_option("--rstar", r_star)->required();
    bootstrap->add_option("--delta", delta);

    auto* decay = app.add_subcommand("decay-character", "Estimate r* of synthetic data");
    decay->add_option("--input", input)->required();
    decay->add_option("--s", s);

    auto* linear = app.add_subcommand("linear-decay", "Continuum linear decay curve");
    linear->add_option("--profile", profile)->required();
    linear->add_option("--theta", theta);
    linear->add_option("--eps", eps);
    linear->add_option("--tmin", tmin);
    linear->add_option("--tmax", tmax);

    auto* simulate = app.add_subcommand("simulate", "Run one experiment from a config");
    simulate->add_option("--config", config_path)->required();

    auto* fit = app.add_subcommand("fit", "Power-law fit of a trace CSV");
    fit->add_option("--trace", trace_path)->required();
    fit->add_option("--window", window)->required();

    auto* sweep = app.add_subcommand("sweep", "Run a directory of configs");
    sweep->add_option("--dir", sweep_dir)->required();
    sweep->add_option("--workers", workers);

    CLI11_PARSE(app, argc, argv);

    try {
        if (predict->parsed()) return cmd_predict(system, r_star, delta);
        if (bootstrap->parsed()) return cmd_bootstrap(r_star, delta);
        if (decay->parsed()) return cmd_decay_character(input, s);
        if (linear->parsed()) return cmd_linear_decay(profile, theta, eps, tmin, tmax);
        if (simulate->parsed()) return cmd_simulate(config_path);
        if (fit->parsed()) return cmd_fit(trace_path, window);
        if (sweep->parsed()) {
            const int failures = decaylab::run_sweep(sweep_dir, workers);
            if (failures > 0) {
                std::cerr << failures << " experiment(s) failed\n";
                return kExitNumerical;
            }
            return kExitOk;
        }
    } catch (const decaylab::NumericalAbort& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
