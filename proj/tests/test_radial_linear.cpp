#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "decaylab/radial_linear.hpp"

using namespace decaylab;

namespace {

// int_lo^hi rho^2 exp(-a rho^2) drho in closed form via erf.
double gaussian_moment(double lo, double hi, double a) {
    const double sa = std::sqrt(a);
    const auto anti = [&](double r) {
        return std::sqrt(M_PI) * std::erf(sa * r) / (4.0 * a * sa) -
               r * std::exp(-a * r * r) / (2.0 * a);
    };
    return anti(hi) - anti(lo);
}

// Closed-form norm of an annulus profile (f = 1 on [lo, hi]).
double annulus_norm_sq(double lo, double hi, double theta, double eps, double t) {
    const double a_heat = 2.0 * t;
    const double a_grad = 2.0 * (1.0 + 1.0 / eps) * t;
    const double heat = t == 0.0 ? (hi * hi * hi - lo * lo * lo) / 3.0
                                 : gaussian_moment(lo, hi, a_heat);
    const double grad = t == 0.0 ? (hi * hi * hi - lo * lo * lo) / 3.0
                                 : gaussian_moment(lo, hi, a_grad);
    return 4.0 * M_PI * ((1.0 - theta) * heat + theta * grad);
}

}  // namespace

TEST_CASE("linear_norm_sq closed forms") {
    SUBCASE("t = 0 reduces to the plain profile integral") {
        const RadialProfile p = power_law_profile(0.0, 2.0, 0.3, 1.0);
        CHECK(linear_norm_sq(p, 0.0) ==
              doctest::Approx(4.0 * M_PI * 8.0 / 3.0).epsilon(1e-8));

        const RadialProfile q1 = power_law_profile(1.0, 1.0, 0.0, 1.0);
        // int_0^1 4 pi rho^4 drho = 4 pi / 5
        CHECK(linear_norm_sq(q1, 0.0) ==
              doctest::Approx(4.0 * M_PI / 5.0).epsilon(1e-8));
    }

    SUBCASE("flat profile at large t matches the whole-line Gaussian integral") {
        const RadialProfile p = power_law_profile(0.0, 1.0, 0.0, 1.0);
        const double t = 100.0;
        // truncation error beyond rho = 1 is e^{-200}-small
        CHECK(linear_norm_sq(p, t) ==
              doctest::Approx(std::pow(M_PI / (2.0 * t), 1.5)).epsilon(1e-8));
    }

    SUBCASE("annulus norm matches the erf oracle across t, theta, eps") {
        for (double theta : {0.0, 0.4, 1.0})
            for (double eps : {0.25, 1.0, 4.0}) {
                const RadialProfile p = annulus_profile(0.5, 2.0, theta, eps);
                for (double t : {0.0, 0.01, 0.5, 3.0, 20.0})
                    CHECK(linear_norm_sq(p, t) ==
                          doctest::Approx(annulus_norm_sq(0.5, 2.0, theta, eps, t))
                              .epsilon(1e-7));
            }
    }

    SUBCASE("theta = 1 equals theta = 0 with time rescaled by 1 + 1/eps") {
        const double eps = 0.5;
        const RadialProfile grad = annulus_profile(0.3, 1.5, 1.0, eps);
        const RadialProfile heat = annulus_profile(0.3, 1.5, 0.0, eps);
        for (double t : {0.2, 1.0, 5.0})
            CHECK(linear_norm_sq(grad, t) ==
                  doctest::Approx(linear_norm_sq(heat, (1.0 + 1.0 / eps) * t))
                      .epsilon(1e-8));
    }

    SUBCASE("norm is linear in theta") {
        const RadialProfile lo = power_law_profile(0.5, 1.0, 0.0, 2.0);
        const RadialProfile hi = power_law_profile(0.5, 1.0, 1.0, 2.0);
        RadialProfile mid = power_law_profile(0.5, 1.0, 0.35, 2.0);
        const double t = 0.7;
        CHECK(linear_norm_sq(mid, t) ==
              doctest::Approx(0.65 * linear_norm_sq(lo, t) +
                              0.35 * linear_norm_sq(hi, t)).epsilon(1e-8));
    }

    SUBCASE("monotone decreasing in t and in theta") {
        const RadialProfile p = power_law_profile(0.0, 1.0, 0.5, 1.0);
        double prev = linear_norm_sq(p, 0.0);
        for (double t : {0.1, 1.0, 10.0, 100.0}) {
            const double cur = linear_norm_sq(p, t);
            CHECK(cur < prev);
            prev = cur;
        }
        const double t = 2.0;
        double prev_theta = linear_norm_sq(power_law_profile(0.0, 1.0, 0.0, 1.0), t);
        for (double theta : {0.3, 0.7, 1.0}) {
            const double cur = linear_norm_sq(power_law_profile(0.0, 1.0, theta, 1.0), t);
            CHECK(cur < prev_theta);
            prev_theta = cur;
        }
    }

    SUBCASE("input validation") {
        RadialProfile p = power_law_profile(0.0, 1.0, 0.0, 1.0);
        CHECK_THROWS_AS(linear_norm_sq(p, -1.0), std::invalid_argument);
        p.theta = 1.5;
        CHECK_THROWS_AS(linear_norm_sq(p, 1.0), std::invalid_argument);
        p.theta = 0.0;
        p.eps = 0.0;
        CHECK_THROWS_AS(linear_norm_sq(p, 1.0), std::invalid_argument);
        RadialProfile empty;
        CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
        CHECK_THROWS_AS(power_law_profile(-1.5, 1.0, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(annulus_profile(1.0, 0.5, 0.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("fit_linear_exponent") {
    const std::vector<double> t_grid = log_spaced(100.0, 10000.0, 25);

    SUBCASE("power-law data decays like t^{-(3/2 + q)}") {
        for (double theta : {0.0, 0.5}) {
            CHECK(std::abs(fit_linear_exponent(
                               power_law_profile(0.0, 1.0, theta, 1.0), t_grid)
                               .exponent - 1.5) < 0.02);
            CHECK(std::abs(fit_linear_exponent(
                               power_law_profile(0.5, 1.0, theta, 1.0), t_grid)
                               .exponent - 2.0) < 0.02);
            CHECK(std::abs(fit_linear_exponent(
                               power_law_profile(1.0, 1.0, theta, 1.0), t_grid)
                               .exponent - 2.5) < 0.03);
        }
    }

    SUBCASE("annulus data decays faster than any tested power") {
        const RadialProfile p = annulus_profile(0.5, 1.0, 0.0, 1.0);
        const DecayFit fit = fit_linear_exponent(p, log_spaced(0.1, 50.0, 25));
        CHECK(fit.exponent > 5.0);
        // super-algebraic: the apparent power keeps growing on later windows
        const DecayFit later = fit_linear_exponent(p, log_spaced(1.0, 200.0, 25));
        CHECK(later.exponent > fit.exponent + 5.0);
        // exact super-algebraic envelope: norm(t) <= e^{-2 lo^2 t} norm(0)
        const double n0 = linear_norm_sq(p, 0.0);
        for (double t : {1.0, 5.0, 20.0})
            CHECK(linear_norm_sq(p, t) <= std::exp(-2.0 * 0.25 * t) * n0 * (1.0 + 1e-9));
    }

    SUBCASE("rejects inadequate time grids") {
        const RadialProfile p = power_law_profile(0.0, 1.0, 0.0, 1.0);
        CHECK_THROWS_AS(fit_linear_exponent(p, log_spaced(1.0, 10.0, 25)),
                        std::invalid_argument);
        CHECK_THROWS_AS(fit_linear_exponent(p, log_spaced(1.0, 1000.0, 5)),
                        std::invalid_argument);
    }
}

TEST_CASE("log_spaced") {
    const std::vector<double> g = log_spaced(1.0, 100.0, 3);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(10.0));
    CHECK(g[2] == doctest::Approx(100.0));
    CHECK_THROWS_AS(log_spaced(0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced(1.0, 2.0, 1), std::invalid_argument);
}
