#pragma once

#include <functional>
#include <vector>

#include "decaylab/fit.hpp"

namespace decaylab {

// Radially structured continuum data: spectral amplitude f(rho) with compact
// support [support_lo, support_hi], gradient-energy fraction theta in [0,1]
// (share of each shell's energy in the xi-parallel eigendirection), and the
// pressure-relaxation parameter eps of the semigroup.
struct RadialProfile {
    std::function<double(double)> f;
    double support_lo = 0.0;
    double support_hi = 0.0;
    std::vector<double> breakpoints;  // interior non-smooth points of f
    double theta = 0.0;
    double eps = 1.0;

    void validate() const;
};

RadialProfile power_law_profile(double q, double support_hi, double theta, double eps);
RadialProfile annulus_profile(double lo, double hi, double theta, double eps);

// || exp(tL) u0 ||^2_{L^2(R^3)} =
//   int_0^inf 4 pi rho^2 f(rho)^2 [ (1-theta) e^{-2 t rho^2}
//                                   + theta e^{-2 (1+1/eps) t rho^2} ] d rho,
// adaptive quadrature, relative tolerance 1e-8.
double linear_norm_sq(const RadialProfile& profile, double t);

// Least-squares slope of log ||v(t)||^2 vs log(1+t) over t_grid; t_grid must
// span at least two decades.
DecayFit fit_linear_exponent(const RadialProfile& profile,
                             const std::vector<double>& t_grid);

std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace decaylab
