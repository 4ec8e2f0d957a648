#include "decaylab/linear_symbol.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace decaylab {

namespace {

// Time stepping applies the propagator with the same (t, eps) thousands of
// times; cache the scalar multiplier arrays per grid to avoid recomputing an
// exponential per mode on every application.
struct MultiplierEntry {
    int n = 0;
    double box_length = 0.0;
    double t = -1.0;
    double eps = 0.0;
    Eigen::ArrayXd heat;
    Eigen::ArrayXd enhanced;
};

MultiplierEntry& multipliers_for(const GridSpec& grid, double t, double eps) {
    thread_local std::vector<MultiplierEntry> cache;
    thread_local std::size_t next_slot = 0;
    for (auto& e : cache)
        if (e.n == grid.n && e.box_length == grid.box_length && e.t == t &&
            e.eps == eps)
            return e;

    constexpr std::size_t kMaxEntries = 8;
    if (cache.size() < kMaxEntries) cache.emplace_back();
    MultiplierEntry& e = cache[cache.size() < kMaxEntries ? cache.size() - 1
                                                          : next_slot++ % kMaxEntries];
    e.n = grid.n;
    e.box_length = grid.box_length;
    e.t = t;
    e.eps = eps;
    e.heat.resize(grid.num_points());
    e.enhanced.resize(grid.num_points());
    const double rate = 1.0 + 1.0 / eps;
    for_each_mode(grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        const double k_sq = kx * kx + ky * ky + kz * kz;
        e.heat[idx] = std::exp(-t * k_sq);
        e.enhanced[idx] = std::exp(-rate * t * k_sq);
    });
    return e;
}

}  // namespace

Eigen::Matrix3d symbol(const Eigen::Vector3d& xi, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("symbol: eps must be positive");
    const double xi_sq = xi.squaredNorm();
    Eigen::Matrix3d m = -xi_sq * Eigen::Matrix3d::Identity();
    m.noalias() -= (1.0 / eps) * (xi * xi.transpose());
    return m;
}

Eigen::Matrix3d propagator(const Eigen::Vector3d& xi, double t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("propagator: eps must be positive");
    if (t < 0.0) throw std::invalid_argument("propagator: t must be nonnegative");
    const double xi_sq = xi.squaredNorm();
    if (xi_sq == 0.0) return Eigen::Matrix3d::Identity();
    const double heat = std::exp(-t * xi_sq);
    const double enhanced = std::exp(-(1.0 + 1.0 / eps) * t * xi_sq);
    Eigen::Matrix3d m = heat * Eigen::Matrix3d::Identity();
    m.noalias() -= ((heat - enhanced) / xi_sq) * (xi * xi.transpose());
    return m;
}

SpectralField apply_propagator(const SpectralField& field, double t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("apply_propagator: eps must be positive");
    if (t < 0.0) throw std::invalid_argument("apply_propagator: t must be nonnegative");
    SpectralField out(field.grid);
    const MultiplierEntry& mult = multipliers_for(field.grid, t, eps);
    for_each_mode(field.grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        const double k_sq = kx * kx + ky * ky + kz * kz;
        const std::complex<double> c0 = field.coeffs[0][idx];
        const std::complex<double> c1 = field.coeffs[1][idx];
        const std::complex<double> c2 = field.coeffs[2][idx];
        if (k_sq == 0.0) {
            out.coeffs[0][idx] = c0;
            out.coeffs[1][idx] = c1;
            out.coeffs[2][idx] = c2;
            return;
        }
        const double heat = mult.heat[idx];
        const double enhanced = mult.enhanced[idx];
        // split into gradient (parallel to k) and solenoidal parts
        const std::complex<double> k_dot_c = (kx * c0 + ky * c1 + kz * c2) / k_sq;
        out.coeffs[0][idx] = heat * c0 + (enhanced - heat) * k_dot_c * kx;
        out.coeffs[1][idx] = heat * c1 + (enhanced - heat) * k_dot_c * ky;
        out.coeffs[2][idx] = heat * c2 + (enhanced - heat) * k_dot_c * kz;
    });
    return out;
}

SpectralField apply_fractional_laplacian(const SpectralField& field, double s) {
    if (!(s > 0.0))
        throw std::invalid_argument("apply_fractional_laplacian: s must be positive");
    SpectralField out(field.grid);
    for_each_mode(field.grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        const double k_sq = kx * kx + ky * ky + kz * kz;
        const double mult = k_sq == 0.0 ? 0.0 : std::pow(k_sq, 0.5 * s);
        out.coeffs[0][idx] = mult * field.coeffs[0][idx];
        out.coeffs[1][idx] = mult * field.coeffs[1][idx];
        out.coeffs[2][idx] = mult * field.coeffs[2][idx];
    });
    return out;
}

}  // namespace decaylab
