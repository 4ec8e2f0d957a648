#include "decaylab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace decaylab {

double predicted_exponent(PredictionSystem system, double r_star, double delta) {
    if (!(r_star > -1.5))
        throw std::invalid_argument("predicted_exponent: r_star must exceed -3/2");
    if (!(delta > 0.0))
        throw std::invalid_argument("predicted_exponent: delta must be positive");
    const double linear = 1.5 + r_star;
    switch (system) {
        case PredictionSystem::TemamOrNse:
            return std::min(linear, 2.5);
        case PredictionSystem::Lelievre:
            return std::min(linear, 1.5 - delta);
        case PredictionSystem::Linear:
            return linear;
    }
    return linear;
}

BootstrapState bootstrap_sequence(double r_star, double delta) {
    if (!(r_star > -1.5))
        throw std::invalid_argument("bootstrap_sequence: r_star must exceed -3/2");
    if (!(delta > 0.0))
        throw std::invalid_argument("bootstrap_sequence: delta must be positive");

    BootstrapState state;
    state.r_star = r_star;
    state.delta = delta;
    state.history = {0.0};
    const double linear = 1.5 + r_star;
    for (double cap : {0.5, 1.0, 1.5 - delta}) {
        const double candidate = std::min(linear, cap);
        if (candidate <= state.history.back()) break;  // no improvement
        state.history.push_back(candidate);
        if (candidate < cap) break;  // linear rate binds from here on
    }
    state.beta = state.history.back();
    return state;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key);
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config: bad boolean value for " + key);
}

double fmt_round_trip(double v) { return v; }

void write_kv(std::ostream& os, const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", fmt_round_trip(v));
    os << key << " = " << buf << "\n";
}

double target_r_star(const InitialDataSpec& data) {
    switch (data.kind) {
        case InitialDataSpec::Kind::PowerLaw:
            return data.q;
        case InitialDataSpec::Kind::IndicatorBall:
            return 0.0;
        case InitialDataSpec::Kind::Annulus:
            return std::numeric_limits<double>::infinity();
        case InitialDataSpec::Kind::LpModel:
            return -3.0 * (1.0 - 1.0 / data.p);
    }
    return 0.0;
}

}  // namespace

ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    cfg.grid = GridSpec{32, 2.0 * M_PI};
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: missing '=' at line " +
                                        std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "grid.n") cfg.grid.n = static_cast<int>(to_double(key, val));
        else if (key == "grid.box_length") cfg.grid.box_length = to_double(key, val);
        else if (key == "grid.dealias_fraction") cfg.grid.dealias_fraction = to_double(key, val);
        else if (key == "system") {
            if (val == "temam") cfg.params.system = System::Temam;
            else if (val == "lelievre") cfg.params.system = System::Lelievre;
            else if (val == "linear") cfg.params.system = System::LinearOnly;
            else throw std::invalid_argument("config: unknown system '" + val + "'");
        }
        else if (key == "eps") cfg.params.eps = to_double(key, val);
        else if (key == "alpha") cfg.params.alpha = to_double(key, val);
        else if (key == "dt") cfg.params.dt = to_double(key, val);
        else if (key == "t_final") cfg.params.t_final = to_double(key, val);
        else if (key == "record_every") cfg.params.record_every = static_cast<int>(to_double(key, val));
        else if (key == "data.kind") {
            if (val == "power_law") cfg.data.kind = InitialDataSpec::Kind::PowerLaw;
            else if (val == "indicator_ball") cfg.data.kind = InitialDataSpec::Kind::IndicatorBall;
            else if (val == "annulus") cfg.data.kind = InitialDataSpec::Kind::Annulus;
            else if (val == "lp_model") cfg.data.kind = InitialDataSpec::Kind::LpModel;
            else throw std::invalid_argument("config: unknown data.kind '" + val + "'");
        }
        else if (key == "data.q") cfg.data.q = to_double(key, val);
        else if (key == "data.p") cfg.data.p = to_double(key, val);
        else if (key == "data.amplitude") cfg.data.amplitude = to_double(key, val);
        else if (key == "data.cutoff") cfg.data.cutoff = to_double(key, val);
        else if (key == "data.k0") cfg.data.k0 = to_double(key, val);
        else if (key == "data.k1") cfg.data.k1 = to_double(key, val);
        else if (key == "data.seed") cfg.data.rng_seed = static_cast<std::uint64_t>(to_double(key, val));
        else if (key == "data.divergence_free") cfg.data.divergence_free = to_bool(key, val);
        else if (key == "data.keep_mean") cfg.data.keep_mean = to_bool(key, val);
        else if (key == "fit.t_lo") cfg.fit_t_lo = to_double(key, val);
        else if (key == "fit.t_hi") cfg.fit_t_hi = to_double(key, val);
        else if (key == "estimate.s") cfg.estimate_s = to_double(key, val);
        else if (key == "estimate.rho_lo") cfg.estimate_rho_lo = to_double(key, val);
        else if (key == "estimate.rho_hi") cfg.estimate_rho_hi = to_double(key, val);
        else if (key == "delta") cfg.delta = to_double(key, val);
        else if (key == "out.trace") cfg.trace_path = val;
        else if (key == "out.report") cfg.report_path = val;
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open " + path);
    return parse_config(is);
}

void ExperimentConfig::validate() const {
    grid.validate();
    params.validate();
    if (!(delta > 0.0)) throw std::invalid_argument("config: delta must be positive");
    if (!(fit_t_hi > fit_t_lo))
        throw std::invalid_argument("config: fit window is empty");
    if (fit_t_lo < 1.0)
        throw std::invalid_argument("config: fit.t_lo must be >= 1");
    if (fit_t_hi > params.t_final + 1e-12)
        throw std::invalid_argument("config: fit window extends beyond run horizon");
}

void ExperimentReport::write(std::ostream& os) const {
    os << "system = " << system << "\n";
    write_kv(os, "eps", eps);
    write_kv(os, "alpha", alpha);
    write_kv(os, "delta", delta);
    write_kv(os, "r_star_target", r_star_target);
    write_kv(os, "r_star_measured", r_star_measured);
    write_kv(os, "fitted_exponent", fitted_exponent);
    write_kv(os, "predicted_exponent", predicted_exponent);
    write_kv(os, "window_lo", window_lo);
    write_kv(os, "window_hi", window_hi);
    write_kv(os, "r_squared", r_squared);
    write_kv(os, "energy_final", energy_final);
    os << "verdict = " << verdict << "\n";
    if (!failed_stage.empty()) {
        os << "failed_stage = " << failed_stage << "\n";
        os << "error = " << error << "\n";
    }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    ExperimentReport report;
    switch (config.params.system) {
        case System::Temam: report.system = "temam"; break;
        case System::Lelievre: report.system = "lelievre"; break;
        case System::LinearOnly: report.system = "linear"; break;
    }
    report.eps = config.params.eps;
    report.alpha = config.params.alpha;
    report.delta = config.delta;
    report.window_lo = config.fit_t_lo;
    report.window_hi = config.fit_t_hi;

    const auto fail = [&](const std::string& stage, const std::exception& e) {
        report.failed_stage = stage;
        report.error = e.what();
        return report;
    };

    std::string stage = "validate";
    try {
        config.validate();
        report.r_star_target = target_r_star(config.data);

        stage = "synthesize";
        const SpectralField u0 = synthesize(config.data, config.grid);

        stage = "estimate";
        const double rho_lo = config.estimate_rho_lo > 0.0
                                  ? config.estimate_rho_lo
                                  : 2.0 * config.grid.k_min();
        double rho_hi = config.estimate_rho_hi;
        if (rho_hi <= 0.0) {
            rho_hi = config.data.kind == InitialDataSpec::Kind::Annulus
                         ? config.data.k1
                         : config.data.cutoff;
        }
        const DecayCharacterEstimate est =
            estimate_decay_character(u0, config.estimate_s, rho_lo, rho_hi);
        report.r_star_measured = est.r_star;

        stage = "run";
        const EnergyTrace trace = run(u0, config.params);
        report.energy_final = trace.l2_sq.back();
        if (!config.trace_path.empty()) {
            std::ofstream os(config.trace_path);
            if (!os) throw std::runtime_error("cannot open " + config.trace_path);
            trace.write_csv(os);
        }

        stage = "fit";
        const DecayFit fit =
            fit_power_law(trace.times, trace.l2_sq, config.fit_t_lo, config.fit_t_hi);
        report.fitted_exponent = fit.exponent;
        report.r_squared = fit.r_squared;

        stage = "predict";
        if (std::isinf(report.r_star_measured)) {
            report.predicted_exponent = std::numeric_limits<double>::infinity();
            report.verdict = "super-algebraic";
        } else {
            PredictionSystem psys = PredictionSystem::Linear;
            if (config.params.system == System::Temam) psys = PredictionSystem::TemamOrNse;
            if (config.params.system == System::Lelievre) psys = PredictionSystem::Lelievre;
            report.predicted_exponent =
                predicted_exponent(psys, report.r_star_measured, config.delta);
            // The theorems give upper bounds on the energy, so a faster
            // measured decay is informative, not a failure.
            if (report.fitted_exponent >= report.predicted_exponent + 0.25)
                report.verdict = "sharper-than-bound";
            else if (report.fitted_exponent >= report.predicted_exponent - 0.1)
                report.verdict = "consistent";
            else
                report.verdict = "bound-violated";
        }

        stage = "write";
        if (!config.report_path.empty()) {
            const std::string tmp = config.report_path + ".tmp";
            {
                std::ofstream os(tmp);
                if (!os) throw std::runtime_error("cannot open " + tmp);
                report.write(os);
            }
            std::filesystem::rename(tmp, config.report_path);
        }
    } catch (const std::exception& e) {
        return fail(stage, e);
    }
    return report;
}

int run_sweep(const std::string& dir, int workers) {
    if (workers < 1) throw std::invalid_argument("run_sweep: workers must be >= 1");
    std::vector<std::string> configs;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".cfg")
            configs.push_back(entry.path().string());
    std::sort(configs.begin(), configs.end());

    std::atomic<std::size_t> next{0};
    std::atomic<int> failures{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            try {
                const ExperimentReport r = run_experiment(load_config(configs[i]));
                if (!r.failed_stage.empty()) failures.fetch_add(1);
            } catch (const std::exception&) {
                failures.fetch_add(1);
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min<int>(workers, std::max<std::size_t>(configs.size(), 1));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return failures.load();
}

}  // namespace decaylab
