#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "decaylab/linear_symbol.hpp"
#include "decaylab/spectral_field.hpp"

namespace decaylab {

enum class System { Temam, Lelievre, LinearOnly };

struct SystemParams {
    System system = System::LinearOnly;
    double eps = 1.0;
    double alpha = 0.0;  // Lelievre damping strength
    double dt = 1e-2;
    double t_final = 1.0;
    int record_every = 1;

    void validate() const;
    // Guaranteed-dissipation regime for Lelievre (alpha > eps/4). Runs outside
    // it are permitted but flagged.
    bool guaranteed_dissipation() const {
        return system != System::Lelievre || alpha > eps / 4.0;
    }
};

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> l2_sq;
    std::vector<double> grad_sq;
    std::vector<double> div_sq;
    std::vector<double> l4_quartic;

    void append(double t, const Norms& n) {
        times.push_back(t);
        l2_sq.push_back(n.l2_sq);
        grad_sq.push_back(n.grad_sq);
        div_sq.push_back(n.div_sq);
        l4_quartic.push_back(n.l4_quartic);
    }
    void write_csv(std::ostream& os) const;
};

struct DuhamelSplit {
    std::vector<double> times;
    std::vector<double> linear_energy;
    std::vector<double> remainder_energy;
    std::vector<double> full_energy;
};

// Integration blew up (NaN/overflow or energy growth beyond the step-size
// guard); CLI maps this to exit code 3.
struct NumericalAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spectral coefficients of -N(u) for the selected system:
//   Temam:    N(u) = (u.grad)u + (1/2)(div u)u
//   Lelievre: N(u) = (u.grad)u + alpha |u|^2 u
// Products are formed in physical space on the dealiased field and truncated
// after each product (cubic term via the dealiased intermediate |u|^2).
SpectralField nonlinear_rhs(const SpectralField& field, const SystemParams& params);

// One step of the integrating-factor RK4 scheme; linear part applied exactly
// through the closed-form propagator. LinearOnly is a single propagator
// application (no splitting error).
SpectralField step(const SpectralField& field, const SystemParams& params);

EnergyTrace run(const SpectralField& u0, const SystemParams& params);

// residual_k = (E_{k+1} - E_k) / (2 dt) + RHS at the interval midpoint, where
// RHS is the dissipation functional of the system's energy inequality.
// The inequality holds discretely when residual_k <= tol * E(0) for all k.
std::vector<double> energy_inequality_residual(const EnergyTrace& trace,
                                               const SystemParams& params);

DuhamelSplit duhamel_split(const SpectralField& u0, const SystemParams& params);

}  // namespace decaylab
