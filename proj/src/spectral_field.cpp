#include "decaylab/spectral_field.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace decaylab {

namespace {

// One 3-D c2c FFTW plan pair per grid size. Plans are created under a lock
// (the FFTW planner is not thread-safe); each thread owns its buffers, so
// execution is safe concurrently and results are deterministic.
class FourierWorkspace {
public:
    explicit FourierWorkspace(int n) : n_(n) {
        const std::int64_t m = static_cast<std::int64_t>(n) * n * n;
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
        static std::mutex planner_mutex;
        std::lock_guard<std::mutex> lock(planner_mutex);
        fwd_ = fftw_plan_dft_3d(n, n, n, buf_, buf_, FFTW_FORWARD, FFTW_MEASURE);
        bwd_ = fftw_plan_dft_3d(n, n, n, buf_, buf_, FFTW_BACKWARD, FFTW_MEASURE);
    }
    ~FourierWorkspace() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    FourierWorkspace(const FourierWorkspace&) = delete;
    FourierWorkspace& operator=(const FourierWorkspace&) = delete;

    std::complex<double>* buffer() {
        return reinterpret_cast<std::complex<double>*>(buf_);
    }
    void execute_forward() { fftw_execute(fwd_); }
    void execute_backward() { fftw_execute(bwd_); }

private:
    int n_;
    fftw_complex* buf_;
    fftw_plan fwd_, bwd_;
};

FourierWorkspace& workspace_for(int n) {
    thread_local std::map<int, std::unique_ptr<FourierWorkspace>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FourierWorkspace>(n);
    return *slot;
}

std::int64_t conjugate_index(const GridSpec& g, std::int64_t idx) {
    const int n = g.n;
    const int ix = static_cast<int>(idx % n);
    const int iy = static_cast<int>((idx / n) % n);
    const int iz = static_cast<int>(idx / (static_cast<std::int64_t>(n) * n));
    const int cx = ix == 0 ? 0 : n - ix;
    const int cy = iy == 0 ? 0 : n - iy;
    const int cz = iz == 0 ? 0 : n - iz;
    return cx + static_cast<std::int64_t>(n) * (cy + static_cast<std::int64_t>(n) * cz);
}

// Average c(k) with conj(c(-k)) so the symmetry holds exactly, not just to
// FFT rounding.
void symmetrize(SpectralField& field) {
    const std::int64_t m = field.grid.num_points();
    for (auto& comp : field.coeffs) {
        for (std::int64_t idx = 0; idx < m; ++idx) {
            const std::int64_t cj = conjugate_index(field.grid, idx);
            if (cj < idx) continue;
            if (cj == idx) {
                comp[idx] = std::complex<double>(comp[idx].real(), 0.0);
            } else {
                const std::complex<double> avg =
                    0.5 * (comp[idx] + std::conj(comp[cj]));
                comp[idx] = avg;
                comp[cj] = std::conj(avg);
            }
        }
    }
}

}  // namespace

double hermitian_asymmetry(const SpectralField& field) {
    double worst = 0.0;
    double scale = 0.0;
    const std::int64_t m = field.grid.num_points();
    for (const auto& comp : field.coeffs) {
        for (std::int64_t idx = 0; idx < m; ++idx) {
            const std::int64_t cj = conjugate_index(field.grid, idx);
            worst = std::max(worst, std::abs(comp[idx] - std::conj(comp[cj])));
            scale = std::max(scale, std::abs(comp[idx]));
        }
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

SpectralField forward_transform(const RealSamples& samples, const GridSpec& grid) {
    grid.validate();
    const std::int64_t m = grid.num_points();
    for (const auto& s : samples)
        if (s.size() != m)
            throw std::invalid_argument("forward_transform: sample array size mismatch");

    SpectralField field(grid);
    auto& ws = workspace_for(grid.n);
    const double scale = 1.0 / static_cast<double>(m);
    for (int comp = 0; comp < 3; ++comp) {
        std::complex<double>* buf = ws.buffer();
        for (std::int64_t i = 0; i < m; ++i) buf[i] = samples[comp][i];
        ws.execute_forward();
        for (std::int64_t i = 0; i < m; ++i) field.coeffs[comp][i] = buf[i] * scale;
    }
    symmetrize(field);
    return field;
}

RealSamples inverse_transform(const SpectralField& field) {
    if (hermitian_asymmetry(field) > 1e-12)
        throw std::invalid_argument("inverse_transform: Hermitian symmetry violated");

    const std::int64_t m = field.grid.num_points();
    auto& ws = workspace_for(field.grid.n);
    RealSamples out;
    for (int comp = 0; comp < 3; ++comp) {
        std::complex<double>* buf = ws.buffer();
        for (std::int64_t i = 0; i < m; ++i) buf[i] = field.coeffs[comp][i];
        ws.execute_backward();
        out[comp].resize(m);
        for (std::int64_t i = 0; i < m; ++i) out[comp][i] = buf[i].real();
    }
    return out;
}

Eigen::ArrayXcd forward_scalar(const Eigen::ArrayXd& samples, const GridSpec& grid) {
    const std::int64_t m = grid.num_points();
    if (samples.size() != m)
        throw std::invalid_argument("forward_scalar: sample array size mismatch");
    auto& ws = workspace_for(grid.n);
    std::complex<double>* buf = ws.buffer();
    for (std::int64_t i = 0; i < m; ++i) buf[i] = samples[i];
    ws.execute_forward();
    Eigen::ArrayXcd out(m);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::int64_t i = 0; i < m; ++i) out[i] = buf[i] * scale;
    return out;
}

Eigen::ArrayXd inverse_scalar(const Eigen::ArrayXcd& coeffs, const GridSpec& grid) {
    const std::int64_t m = grid.num_points();
    if (coeffs.size() != m)
        throw std::invalid_argument("inverse_scalar: coefficient array size mismatch");
    auto& ws = workspace_for(grid.n);
    std::complex<double>* buf = ws.buffer();
    for (std::int64_t i = 0; i < m; ++i) buf[i] = coeffs[i];
    ws.execute_backward();
    Eigen::ArrayXd out(m);
    for (std::int64_t i = 0; i < m; ++i) out[i] = buf[i].real();
    return out;
}

void truncate_scalar(Eigen::ArrayXcd& coeffs, const GridSpec& grid) {
    const double cutoff_sq = grid.dealias_limit() * grid.dealias_limit();
    for_each_mode(grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        if (kx * kx + ky * ky + kz * kz > cutoff_sq * (1.0 + 1e-12))
            coeffs[idx] = 0.0;
    });
}

Norms norms(const SpectralField& field) {
    Norms out;
    const double vol = field.grid.volume();
    for_each_mode(field.grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        const double k_sq = kx * kx + ky * ky + kz * kz;
        std::complex<double> div(0.0, 0.0);
        double mode_sq = 0.0;
        const std::complex<double> c0 = field.coeffs[0][idx];
        const std::complex<double> c1 = field.coeffs[1][idx];
        const std::complex<double> c2 = field.coeffs[2][idx];
        mode_sq = std::norm(c0) + std::norm(c1) + std::norm(c2);
        div = kx * c0 + ky * c1 + kz * c2;  // i factor drops under |.|^2
        out.l2_sq += mode_sq;
        out.grad_sq += k_sq * mode_sq;
        out.div_sq += std::norm(div);
    });
    out.l2_sq *= vol;
    out.grad_sq *= vol;
    out.div_sq *= vol;

    SpectralField trunc = field;
    dealias(trunc);
    const RealSamples u = inverse_transform(trunc);
    const std::int64_t m = field.grid.num_points();
    double quart = 0.0;
    for (std::int64_t i = 0; i < m; ++i) {
        const double mag_sq =
            u[0][i] * u[0][i] + u[1][i] * u[1][i] + u[2][i] * u[2][i];
        quart += mag_sq * mag_sq;
    }
    out.l4_quartic = quart * vol / static_cast<double>(m);
    return out;
}

ShellMass shell_mass(const SpectralField& field, const std::vector<double>& radii) {
    if (radii.empty())
        throw std::invalid_argument("shell_mass: empty radius list");
    const double cutoff = field.grid.dealias_limit();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (i > 0 && radii[i] <= radii[i - 1])
            throw std::invalid_argument("shell_mass: radii must be increasing");
        if (radii[i] > cutoff * (1.0 + 1e-12))
            throw std::invalid_argument("shell_mass: radius beyond dealias cutoff");
    }

    ShellMass out;
    out.radii = radii;
    out.mass.assign(radii.size(), 0.0);
    const double vol = field.grid.volume();
    for_each_mode(field.grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        const double k = std::sqrt(kx * kx + ky * ky + kz * kz);
        const double mode_sq = vol * (std::norm(field.coeffs[0][idx]) +
                                      std::norm(field.coeffs[1][idx]) +
                                      std::norm(field.coeffs[2][idx]));
        if (mode_sq == 0.0) return;
        // add to the first shell that contains k and to all larger ones
        auto it = std::lower_bound(out.radii.begin(), out.radii.end(), k);
        for (std::size_t j = it - out.radii.begin(); j < out.mass.size(); ++j)
            out.mass[j] += mode_sq;
    });
    return out;
}

void dealias(SpectralField& field) {
    const double cutoff = field.grid.dealias_limit();
    const double cutoff_sq = cutoff * cutoff;
    for_each_mode(field.grid, [&](std::int64_t idx, double kx, double ky, double kz) {
        if (kx * kx + ky * ky + kz * kz > cutoff_sq * (1.0 + 1e-12)) {
            field.coeffs[0][idx] = 0.0;
            field.coeffs[1][idx] = 0.0;
            field.coeffs[2][idx] = 0.0;
        }
    });
}

}  // namespace decaylab
