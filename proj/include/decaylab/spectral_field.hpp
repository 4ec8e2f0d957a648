#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "decaylab/grid.hpp"

namespace decaylab {

using RealSamples = std::array<Eigen::ArrayXd, 3>;

// Fourier coefficients of a real 3-component vector field on the periodic
// box. Full complex lattice, Hermitian symmetry c(-k) = conj(c(k)) enforced
// structurally. Normalization: u(x) = sum_k c_k exp(i k.x), so
// ||u||^2_{L^2(box)} = L^3 sum_k |c_k|^2.
struct SpectralField {
    GridSpec grid;
    std::array<Eigen::ArrayXcd, 3> coeffs;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g) {
        g.validate();
        for (auto& c : coeffs) c = Eigen::ArrayXcd::Zero(g.num_points());
    }

    std::int64_t index(int ix, int iy, int iz) const {
        return ix + static_cast<std::int64_t>(grid.n) * (iy + static_cast<std::int64_t>(grid.n) * iz);
    }
};

struct Norms {
    double l2_sq = 0.0;
    double grad_sq = 0.0;
    double div_sq = 0.0;
    double l4_quartic = 0.0;
};

// Cumulative spectral energy S(rho) = sum_{|k| <= rho} L^3 |c_k|^2.
struct ShellMass {
    std::vector<double> radii;
    std::vector<double> mass;
};

// Visit every lattice mode with its wavevector (kx, ky, kz) in physical units.
template <class F>
void for_each_mode(const GridSpec& g, F&& fn) {
    const double km = g.k_min();
    std::int64_t idx = 0;
    for (int iz = 0; iz < g.n; ++iz) {
        const double kz = km * g.freq(iz);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = km * g.freq(iy);
            for (int ix = 0; ix < g.n; ++ix, ++idx) {
                const double kx = km * g.freq(ix);
                fn(idx, kx, ky, kz);
            }
        }
    }
}

SpectralField forward_transform(const RealSamples& samples, const GridSpec& grid);
RealSamples inverse_transform(const SpectralField& field);

Norms norms(const SpectralField& field);
ShellMass shell_mass(const SpectralField& field, const std::vector<double>& radii);

// Spectral truncation at grid.dealias_limit() (2/3 rule by default).
void dealias(SpectralField& field);

// Max |c(k) - conj(c(-k))| relative to max |c|.
double hermitian_asymmetry(const SpectralField& field);

// Scalar-field transforms with the same normalization (used for pointwise
// products of field components).
Eigen::ArrayXcd forward_scalar(const Eigen::ArrayXd& samples, const GridSpec& grid);
Eigen::ArrayXd inverse_scalar(const Eigen::ArrayXcd& coeffs, const GridSpec& grid);
void truncate_scalar(Eigen::ArrayXcd& coeffs, const GridSpec& grid);

}  // namespace decaylab
