#include "decaylab/dynamics.hpp"

#include <cmath>
#include <ostream>

namespace decaylab {

namespace {

double spectral_l2_sq(const SpectralField& f) {
    double acc = 0.0;
    for (const auto& comp : f.coeffs) acc += comp.abs2().sum();
    return acc * f.grid.volume();
}

SpectralField axpy(const SpectralField& x, double a, const SpectralField& y) {
    SpectralField out(x.grid);
    for (int c = 0; c < 3; ++c) out.coeffs[c] = x.coeffs[c] + a * y.coeffs[c];
    return out;
}

}  // namespace

void SystemParams::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("SystemParams: eps must be positive");
    if (alpha < 0.0) throw std::invalid_argument("SystemParams: alpha must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("SystemParams: dt must be positive");
    if (record_every < 1)
        throw std::invalid_argument("SystemParams: record_every must be >= 1");
}

void EnergyTrace::write_csv(std::ostream& os) const {
    os << "t,l2_sq,grad_sq,div_sq,l4_quartic\n";
    char line[256];
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      times[i], l2_sq[i], grad_sq[i], div_sq[i], l4_quartic[i]);
        os << line;
    }
}

SpectralField nonlinear_rhs(const SpectralField& field, const SystemParams& params) {
    params.validate();
    if (params.system == System::LinearOnly) return SpectralField(field.grid);

    const GridSpec& grid = field.grid;
    const std::int64_t m = grid.num_points();

    SpectralField u = field;
    dealias(u);
    const RealSamples u_phys = inverse_transform(u);

    // div u in physical space
    Eigen::ArrayXcd div_spec(m);
    for_each_mode(grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        div_spec[idx] = std::complex<double>(0.0, 1.0) *
                        (kx * u.coeffs[0][idx] + ky * u.coeffs[1][idx] +
                         kz * u.coeffs[2][idx]);
    });
    const Eigen::ArrayXd div_phys = inverse_scalar(div_spec, grid);

    // u tensor u, transformed and truncated; advection in divergence form
    // (u.grad)u = div(u tensor u) - (div u) u
    std::array<std::array<Eigen::ArrayXcd, 3>, 3> t_spec;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Eigen::ArrayXd prod = u_phys[i] * u_phys[j];
            t_spec[i][j] = forward_scalar(prod, grid);
            truncate_scalar(t_spec[i][j], grid);
        }

    // multiplier g of the pointwise product g * u:
    //   Temam:    g = -1/2 div u          (advection + stabilizer combined)
    //   Lelievre: g = -div u + alpha |u|^2, with |u|^2 dealiased first
    Eigen::ArrayXd g;
    if (params.system == System::Temam) {
        g = -0.5 * div_phys;
    } else {
        Eigen::ArrayXd mag_sq = u_phys[0] * u_phys[0] + u_phys[1] * u_phys[1] +
                                u_phys[2] * u_phys[2];
        Eigen::ArrayXcd w_spec = forward_scalar(mag_sq, grid);
        truncate_scalar(w_spec, grid);
        const Eigen::ArrayXd w_phys = inverse_scalar(w_spec, grid);
        g = params.alpha * w_phys - div_phys;
    }

    SpectralField out(grid);
    for (int i = 0; i < 3; ++i) {
        Eigen::ArrayXd prod = g * u_phys[i];
        Eigen::ArrayXcd p_spec = forward_scalar(prod, grid);
        truncate_scalar(p_spec, grid);
        // out_i = -(i k_j T_ij + p_i) ... sign flipped: rhs carries -N(u)
        out.coeffs[i] = -p_spec;
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

    for (int i = 0; i < 3; ++i)
        if (!out.coeffs[i].allFinite())
            throw NumericalAbort("nonlinear_rhs: NaN/overflow in physical products");
    return out;
}

SpectralField step(const SpectralField& field, const SystemParams& params) {
    params.validate();
    if (params.system == System::LinearOnly)
        return apply_propagator(field, params.dt, params.eps);

    // integrating-factor RK4 (Cox-Matthews): linear flow applied exactly
    const double h = params.dt;
    const auto half = [&](const SpectralField& f) {
        return apply_propagator(f, 0.5 * h, params.eps);
    };
    const auto full = [&](const SpectralField& f) {
        return apply_propagator(f, h, params.eps);
    };

    const SpectralField k1 = nonlinear_rhs(field, params);
    const SpectralField eu_half = half(field);
    const SpectralField u2 = axpy(eu_half, 0.5 * h, half(k1));
    const SpectralField k2 = nonlinear_rhs(u2, params);
    const SpectralField u3 = axpy(eu_half, 0.5 * h, k2);
    const SpectralField k3 = nonlinear_rhs(u3, params);
    const SpectralField eu_full = full(field);
    const SpectralField u4 = axpy(eu_full, h, half(k3));
    const SpectralField k4 = nonlinear_rhs(u4, params);

    SpectralField out(field.grid);
    const SpectralField ek1 = full(k1);
    const SpectralField ek2 = half(k2);
    const SpectralField ek3 = half(k3);
    for (int c = 0; c < 3; ++c)
        out.coeffs[c] = eu_full.coeffs[c] +
                        (h / 6.0) * (ek1.coeffs[c] + 2.0 * ek2.coeffs[c] +
                                     2.0 * ek3.coeffs[c] + k4.coeffs[c]);
    return out;
}

EnergyTrace run(const SpectralField& u0, const SystemParams& params) {
    params.validate();
    if (!(params.t_final > 0.0))
        throw std::invalid_argument("run: t_final must be positive");

    SpectralField u = u0;
    dealias(u);
    EnergyTrace trace;
    trace.append(0.0, norms(u));

    const long num_steps = std::lround(std::ceil(params.t_final / params.dt - 1e-9));
    double t = 0.0;
    double prev_l2 = spectral_l2_sq(u);
    for (long i = 0; i < num_steps; ++i) {
        SystemParams p = params;
        p.dt = std::min(params.dt, params.t_final - t);
        u = step(u, p);
        t += p.dt;

        const double l2 = spectral_l2_sq(u);
        if (!std::isfinite(l2))
            throw NumericalAbort("run: energy is not finite at t=" + std::to_string(t));
        if (params.guaranteed_dissipation() && l2 > 1.01 * prev_l2)
            throw NumericalAbort("run: energy grew by >1% in one step; dt too large");
        prev_l2 = l2;

        if ((i + 1) % params.record_every == 0 || i + 1 == num_steps)
            trace.append(t, norms(u));
    }
    return trace;
}

std::vector<double> energy_inequality_residual(const EnergyTrace& trace,
                                               const SystemParams& params) {
    params.validate();
    if (trace.times.size() < 2)
        throw std::invalid_argument("energy_inequality_residual: trace too short");
    for (std::size_t i = 0; i + 1 < trace.times.size(); ++i)
        if (trace.times[i + 1] - trace.times[i] > 0.1 + 1e-12)
            throw std::invalid_argument(
                "energy_inequality_residual: sampling too sparse (need <= 0.1)");

    const auto rhs = [&](std::size_t i) {
        switch (params.system) {
            case System::Lelievre:
                return trace.grad_sq[i] +
                       (3.0 / (4.0 * params.eps)) * trace.div_sq[i] +
                       (params.alpha - params.eps / 4.0) * trace.l4_quartic[i];
            case System::Temam:
            case System::LinearOnly:
                return trace.grad_sq[i] + (1.0 / params.eps) * trace.div_sq[i];
        }
        return 0.0;
    };

    std::vector<double> out(trace.times.size() - 1);
    for (std::size_t i = 0; i + 1 < trace.times.size(); ++i) {
        const double dt = trace.times[i + 1] - trace.times[i];
        const double rate = 0.5 * (trace.l2_sq[i + 1] - trace.l2_sq[i]) / dt;
        out[i] = rate + 0.5 * (rhs(i) + rhs(i + 1));
    }
    return out;
}

DuhamelSplit duhamel_split(const SpectralField& u0, const SystemParams& params) {
    params.validate();
    if (!(params.t_final > 0.0))
        throw std::invalid_argument("duhamel_split: t_final must be positive");

    SpectralField u = u0;
    dealias(u);
    SpectralField v = u;  // exact linear flow from the same data

    DuhamelSplit split;
    const auto record = [&](double t) {
        split.times.push_back(t);
        split.full_energy.push_back(spectral_l2_sq(u));
        split.linear_energy.push_back(spectral_l2_sq(v));
        split.remainder_energy.push_back(spectral_l2_sq(axpy(u, -1.0, v)));
    };
    record(0.0);

    const long num_steps = std::lround(std::ceil(params.t_final / params.dt - 1e-9));
    double t = 0.0;
    for (long i = 0; i < num_steps; ++i) {
        SystemParams p = params;
        p.dt = std::min(params.dt, params.t_final - t);
        u = step(u, p);
        v = apply_propagator(v, p.dt, params.eps);
        t += p.dt;
        if (!std::isfinite(spectral_l2_sq(u)))
            throw NumericalAbort("duhamel_split: energy is not finite");
        if ((i + 1) % params.record_every == 0 || i + 1 == num_steps) record(t);
    }
    return split;
}

}  // namespace decaylab
