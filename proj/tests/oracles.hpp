#pragma once

// Independent oracles used by the unit and acceptance suites. Everything here
// deliberately avoids the closed-form / pseudospectral code paths it checks.

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "decaylab/dynamics.hpp"
#include "decaylab/spectral_field.hpp"

namespace decaylab::oracles {

// Matrix exponential by scaling and squaring with a Taylor series on the
// scaled matrix.
inline Eigen::Matrix3d expm(const Eigen::Matrix3d& a) {
    const double norm = a.cwiseAbs().sum();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Eigen::Matrix3d b = scale * a;
    Eigen::Matrix3d term = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d sum = Eigen::Matrix3d::Identity();
    for (int k = 1; k <= 24; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// Orthogonal eigenbasis of the symbol from the explicit matrix in the source
// analysis; valid for unit xi with xi_3^2 < 1. Columns are eigenvectors.
inline Eigen::Matrix3d symbol_eigenbasis(const Eigen::Vector3d& xi) {
    const double x1 = xi[0], x2 = xi[1], x3 = xi[2];
    const double perp = std::sqrt(x1 * x1 + x2 * x2);
    const double s3 = std::sqrt(1.0 - x3 * x3);
    Eigen::Matrix3d p;
    p << -x2 / perp, -x1 * x3 / s3, x1,
          x1 / perp, -x2 * x3 / s3, x2,
          0.0,        s3,           x3;
    return p;
}

// Exact truncated convolution sum conv(a, b)_k = sum_m a_m b_{k-m} on the
// integer lattice (no wraparound; entries outside the lattice count as zero).
// O(n^6); for tiny grids only.
inline Eigen::ArrayXcd convolve(const Eigen::ArrayXcd& a, const Eigen::ArrayXcd& b,
                                const GridSpec& grid) {
    const int n = grid.n;
    const auto wrap = [n](int f) { return f >= 0 ? f : f + n; };
    const auto at = [&](const Eigen::ArrayXcd& arr, int fx, int fy, int fz)
        -> std::complex<double> {
        if (fx < -n / 2 || fx > n / 2 - 1 || fy < -n / 2 || fy > n / 2 - 1 ||
            fz < -n / 2 || fz > n / 2 - 1)
            return {0.0, 0.0};
        return arr[wrap(fx) + static_cast<std::int64_t>(n) * (wrap(fy) + static_cast<std::int64_t>(n) * wrap(fz))];
    };

    Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(grid.num_points());
    for (int kz = -n / 2; kz < n / 2; ++kz)
        for (int ky = -n / 2; ky < n / 2; ++ky)
            for (int kx = -n / 2; kx < n / 2; ++kx) {
                std::complex<double> acc(0.0, 0.0);
                for (int mz = -n / 2; mz < n / 2; ++mz)
                    for (int my = -n / 2; my < n / 2; ++my)
                        for (int mx = -n / 2; mx < n / 2; ++mx) {
                            const std::complex<double> am = at(a, mx, my, mz);
                            if (am == std::complex<double>(0.0, 0.0)) continue;
                            acc += am * at(b, kx - mx, ky - my, kz - mz);
                        }
                out[wrap(kx) + static_cast<std::int64_t>(n) * (wrap(ky) + static_cast<std::int64_t>(n) * wrap(kz))] = acc;
            }
    return out;
}

// Brute-force -N(u) via convolution sums, mirroring the dealiasing pipeline
// of the pseudospectral right-hand side (intermediate truncation of |u|^2).
inline SpectralField convolution_rhs(const SpectralField& field,
                                     const SystemParams& params) {
    const GridSpec& grid = field.grid;
    SpectralField u = field;
    dealias(u);

    Eigen::ArrayXcd div_spec(grid.num_points());
    for_each_mode(grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        div_spec[idx] = std::complex<double>(0.0, 1.0) *
                        (kx * u.coeffs[0][idx] + ky * u.coeffs[1][idx] +
                         kz * u.coeffs[2][idx]);
    });

    std::array<std::array<Eigen::ArrayXcd, 3>, 3> t_spec;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            t_spec[i][j] = convolve(u.coeffs[i], u.coeffs[j], grid);
            truncate_scalar(t_spec[i][j], grid);
        }

    Eigen::ArrayXcd g_spec;
    if (params.system == System::Temam) {
        g_spec = -0.5 * div_spec;
    } else {
        Eigen::ArrayXcd w = t_spec[0][0] + t_spec[1][1] + t_spec[2][2];
        truncate_scalar(w, grid);
        g_spec = params.alpha * w - div_spec;
    }

    SpectralField out(grid);
    for (int i = 0; i < 3; ++i) {
        Eigen::ArrayXcd p = convolve(g_spec, u.coeffs[i], grid);
        truncate_scalar(p, grid);
        out.coeffs[i] = -p;
    }
    for_each_mode(grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        const double k[3] = {kx, ky, kz};
        for (int i = 0; i < 3; ++i) {
            std::complex<double> adv(0.0, 0.0);
            for (int j = 0; j < 3; ++j) {
                const auto& t = j >= i ? t_spec[i][j] : t_spec[j][i];
                adv += k[j] * t[idx];
            }
            out.coeffs[i][idx] -= std::complex<double>(0.0, 1.0) * adv;
        }
    });
    dealias(out);
    return out;
}

// Random real vector field on the grid, optionally band-limited.
inline RealSamples random_samples(const GridSpec& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    RealSamples out;
    for (auto& comp : out) {
        comp.resize(grid.num_points());
        for (std::int64_t i = 0; i < grid.num_points(); ++i) comp[i] = unif(rng);
    }
    return out;
}

// Number of integer lattice points within |m| <= radius.
inline long lattice_ball_count(double radius) {
    const int r = static_cast<int>(std::floor(radius));
    long count = 0;
    for (int x = -r; x <= r; ++x)
        for (int y = -r; y <= r; ++y)
            for (int z = -r; z <= r; ++z)
                if (x * x + y * y + z * z <= radius * radius) ++count;
    return count;
}

}  // namespace decaylab::oracles
