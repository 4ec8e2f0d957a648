#pragma once

#include <vector>

namespace decaylab {

// Power-law fit y(t) ~ C (1+t)^{-exponent} by least squares in
// (log(1+t), log y) coordinates.
struct DecayFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double r_squared = 0.0;
};

DecayFit fit_power_law(const std::vector<double>& times,
                       const std::vector<double>& values,
                       double t_lo, double t_hi);

// Plain least-squares line through (x, y); returns {slope, intercept, r^2}.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace decaylab
