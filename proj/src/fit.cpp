#include "decaylab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace decaylab {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit out;
    out.slope = (n * sxy - sx * sy) / det;
    out.intercept = (sy - out.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (out.slope * x[i] + out.intercept);
        ss_res += r * r;
    }
    out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

DecayFit fit_power_law(const std::vector<double>& times,
                       const std::vector<double>& values,
                       double t_lo, double t_hi) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_power_law: size mismatch");
    if (!(t_lo < t_hi))
        throw std::invalid_argument("fit_power_law: empty window");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        if (!(values[i] > 0.0))
            throw std::invalid_argument("fit_power_law: nonpositive value in window");
        x.push_back(std::log1p(times[i]));
        y.push_back(std::log(values[i]));
    }
    if (x.size() < 10)
        throw std::invalid_argument("fit_power_law: fewer than 10 samples in window");
    const LineFit line = fit_line(x, y);
    DecayFit out;
    out.exponent = -line.slope;
    out.log_prefactor = line.intercept;
    out.t_lo = t_lo;
    out.t_hi = t_hi;
    out.r_squared = line.r_squared;
    return out;
}

}  // namespace decaylab
