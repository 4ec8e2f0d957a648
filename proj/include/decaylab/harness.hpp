#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "decaylab/decay_character.hpp"
#include "decaylab/dynamics.hpp"
#include "decaylab/fit.hpp"

namespace decaylab {

enum class PredictionSystem { TemamOrNse, Lelievre, Linear };

// Predicted decay exponent p of ||u(t)||^2 <= C (1+t)^{-p}:
//   TemamOrNse -> min{3/2 + r*, 5/2}
//   Lelievre   -> min{3/2 + r*, 3/2 - delta}
//   Linear     -> 3/2 + r*
// Requires r* > -3/2.
double predicted_exponent(PredictionSystem system, double r_star, double delta);

// Replay of the bootstrap chain in the Lelievre decay proof: beta starts at 0
// and is raised through the stage caps 1/2, 1, 3/2 - delta, each capped by the
// linear rate 3/2 + r*; stops as soon as a stage provides no improvement.
struct BootstrapState {
    double beta = 0.0;
    std::vector<double> history;
    double r_star = 0.0;
    double delta = 0.0;
};

BootstrapState bootstrap_sequence(double r_star, double delta);

struct ExperimentConfig {
    GridSpec grid;
    SystemParams params;
    InitialDataSpec data;
    double fit_t_lo = 1.0;
    double fit_t_hi = 0.0;
    double estimate_s = 0.0;
    double estimate_rho_lo = 0.0;  // 0 = auto (2 k_min)
    double estimate_rho_hi = 0.0;  // 0 = auto (data support edge)
    double delta = 0.05;
    std::string trace_path;
    std::string report_path;

    void validate() const;
};

// Flat key = value text, one experiment per file, '#' comments.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

struct ExperimentReport {
    std::string system;
    double eps = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    double r_star_target = 0.0;
    double r_star_measured = 0.0;
    double fitted_exponent = 0.0;
    double predicted_exponent = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double r_squared = 0.0;
    double energy_final = 0.0;
    std::string verdict;   // consistent | sharper-than-bound | super-algebraic | no-fit
    std::string failed_stage;  // empty on success
    std::string error;

    void write(std::ostream& os) const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

// Runs every *.cfg under dir concurrently (up to `workers` at once); returns
// the number of failed experiments.
int run_sweep(const std::string& dir, int workers);

}  // namespace decaylab
