#include "decaylab/radial_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace decaylab {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGaussOrder = 15;
constexpr double kNodes[kGaussOrder] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double kWeights[kGaussOrder] = {
    0.03075324199611727, 0.07036604748810812, 0.1071592204671719,
    0.1395706779261543,  0.1662692058169939,  0.1861610000155622,
    0.1984314853271116,  0.2025782419255613,  0.1984314853271116,
    0.1861610000155622,  0.1662692058169939,  0.1395706779261543,
    0.1071592204671719,  0.07036604748810812, 0.03075324199611727};

template <class F>
double gauss_panel(const F& fn, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < kGaussOrder; ++i)
        acc += kWeights[i] * fn(mid + half * kNodes[i]);
    return acc * half;
}

// Adaptive bisection: accept a panel when its value agrees with the sum of
// its halves to the per-panel tolerance.
template <class F>
double adaptive(const F& fn, double a, double b, double tol, int depth) {
    const double whole = gauss_panel(fn, a, b);
    const double mid = 0.5 * (a + b);
    const double left = gauss_panel(fn, a, mid);
    const double right = gauss_panel(fn, mid, b);
    const double split = left + right;
    if (depth > 40 || std::abs(split - whole) <= tol * (1.0 + std::abs(split)))
        return split;
    return adaptive(fn, a, mid, 0.5 * tol, depth + 1) +
           adaptive(fn, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double linear_norm_sq_unchecked(const RadialProfile& profile, double t);

void RadialProfile::validate() const {
    if (!f) throw std::invalid_argument("RadialProfile: missing amplitude function");
    if (!(support_hi > support_lo) || support_lo < 0.0)
        throw std::invalid_argument("RadialProfile: invalid support");
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("RadialProfile: theta must be in [0,1]");
    if (!(eps > 0.0)) throw std::invalid_argument("RadialProfile: eps must be positive");
    if (!std::isfinite(linear_norm_sq_unchecked(*this, 0.0)))
        throw std::invalid_argument("RadialProfile: non-integrable profile");
}

double linear_norm_sq_unchecked(const RadialProfile& profile, double t) {
    const double rate_grad = 2.0 * (1.0 + 1.0 / profile.eps);
    const auto integrand = [&](double rho) {
        const double amp = profile.f(rho);
        const double kernel =
            (1.0 - profile.theta) * std::exp(-2.0 * t * rho * rho) +
            profile.theta * std::exp(-rate_grad * t * rho * rho);
        return 4.0 * M_PI * rho * rho * amp * amp * kernel;
    };

    // Panel boundaries: support edges, declared breakpoints, and the Gaussian
    // length scale rho ~ t^{-1/2} where the kernel turns over.
    std::vector<double> cuts = {profile.support_lo, profile.support_hi};
    for (double b : profile.breakpoints)
        if (b > profile.support_lo && b < profile.support_hi) cuts.push_back(b);
    if (t > 0.0) {
        const double scale = 1.0 / std::sqrt(t);
        for (double mult : {0.5, 1.0, 2.0, 4.0}) {
            const double c = mult * scale;
            if (c > profile.support_lo && c < profile.support_hi) cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += adaptive(integrand, cuts[i], cuts[i + 1], 1e-9, 0);
    return total;
}

double linear_norm_sq(const RadialProfile& profile, double t) {
    profile.validate();
    if (t < 0.0) throw std::invalid_argument("linear_norm_sq: t must be nonnegative");
    return linear_norm_sq_unchecked(profile, t);
}

RadialProfile power_law_profile(double q, double support_hi, double theta, double eps) {
    if (q <= -1.5) throw std::invalid_argument("power_law_profile: q must exceed -3/2");
    RadialProfile p;
    p.f = [q](double rho) { return rho > 0.0 ? std::pow(rho, q) : (q == 0.0 ? 1.0 : 0.0); };
    p.support_lo = 0.0;
    p.support_hi = support_hi;
    p.theta = theta;
    p.eps = eps;
    return p;
}

RadialProfile annulus_profile(double lo, double hi, double theta, double eps) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("annulus_profile: need 0 < lo < hi");
    RadialProfile p;
    p.f = [](double) { return 1.0; };
    p.support_lo = lo;
    p.support_hi = hi;
    p.theta = theta;
    p.eps = eps;
    return p;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("log_spaced: invalid range");
    std::vector<double> out(count);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = std::exp(log_lo + step * i);
    return out;
}

DecayFit fit_linear_exponent(const RadialProfile& profile,
                             const std::vector<double>& t_grid) {
    profile.validate();
    if (t_grid.size() < 10)
        throw std::invalid_argument("fit_linear_exponent: need at least 10 times");
    const double lo = t_grid.front();
    const double hi = t_grid.back();
    if (!(lo > 0.0) || hi / lo < 100.0)
        throw std::invalid_argument("fit_linear_exponent: t_grid must span two decades");

    std::vector<double> values(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        values[i] = linear_norm_sq_unchecked(profile, t_grid[i]);
        if (!(values[i] > 0.0))
            throw std::invalid_argument("fit_linear_exponent: degenerate profile");
    }
    return fit_power_law(t_grid, values, lo, hi);
}

}  // namespace decaylab
