#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace decaylab {

// Cubic periodic box [0, L)^3 sampled with n points per axis.
// Wavevectors are integer multiples of k_min = 2*pi/L; after dealiasing
// only |k| <= dealias_fraction * (pi n / L) is retained.
struct GridSpec {
    int n = 0;
    double box_length = 0.0;
    double dealias_fraction = 2.0 / 3.0;

    void validate() const {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: n must be even and >= 4");
        if (!(box_length > 0.0))
            throw std::invalid_argument("GridSpec: box_length must be positive");
        if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
            throw std::invalid_argument("GridSpec: dealias_fraction must be in (0,1]");
    }

    double k_min() const { return 2.0 * M_PI / box_length; }
    double nyquist() const { return M_PI * n / box_length; }
    double dealias_limit() const { return dealias_fraction * nyquist(); }
    double volume() const { return box_length * box_length * box_length; }
    std::int64_t num_points() const {
        return static_cast<std::int64_t>(n) * n * n;
    }

    // signed integer frequency of axis index m in [0, n)
    int freq(int m) const { return m <= n / 2 ? m : m - n; }

    bool operator==(const GridSpec&) const = default;
};

}  // namespace decaylab
