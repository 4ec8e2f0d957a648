#pragma once

#include <cstdint>
#include <vector>

#include "decaylab/linear_symbol.hpp"
#include "decaylab/spectral_field.hpp"

namespace decaylab {

// Estimate of the decay character r* of Lambda^s u from the log-log slope of
// the weighted shell mass S_s(rho) = sum_{|k|<=rho} |k|^{2s} L^3 |c_k|^2,
// measured on annular differences of S_s. Slope 2 r + 3 identifies the
// character of Lambda^s u, so r_star = (slope - 3) / 2.
struct DecayCharacterEstimate {
    enum class Verdict { Finite, InfiniteCharacter, NegLimit, NoVerdict };

    Verdict verdict = Verdict::Finite;
    double r_star = 0.0;
    double s = 0.0;
    double slope = 0.0;
    double rho_lo = 0.0;
    double rho_hi = 0.0;
    double residual = 0.0;  // 1 - r^2 of the log-log fit
};

// Synthetic initial data with a prescribed spectral signature near k = 0.
//   PowerLaw:      |c_k| = amplitude * |k|^q        for 0 < |k| <= cutoff
//   IndicatorBall: PowerLaw with q = 0
//   Annulus:       |c_k| = amplitude                for k0 <= |k| <= k1
//   LpModel:       PowerLaw with q = -3 (1 - 1/p)
// Phases are random, Hermitian-symmetric, drawn from rng_seed; the amplitude
// profile is deterministic. Mean mode is zero unless keep_mean is set.
struct InitialDataSpec {
    enum class Kind { PowerLaw, IndicatorBall, Annulus, LpModel };

    Kind kind = Kind::IndicatorBall;
    double q = 0.0;         // PowerLaw exponent
    double p = 1.0;         // LpModel parameter, 1 <= p <= 2
    double amplitude = 1.0;
    double cutoff = 0.0;    // PowerLaw / IndicatorBall / LpModel support radius
    double k0 = 0.0;        // Annulus inner radius
    double k1 = 0.0;        // Annulus outer radius
    std::uint64_t rng_seed = 0;
    bool divergence_free = false;
    bool keep_mean = false;
};

// rho^{-2r-3} S_s(rho) along a decreasing rho sequence (Definition of the
// s-decay indicator, lattice surrogate of the rho -> 0 limit).
std::vector<double> decay_indicator(const SpectralField& field, double r, double s,
                                    const std::vector<double>& rho_sequence);

DecayCharacterEstimate estimate_decay_character(const SpectralField& field, double s,
                                                double rho_lo, double rho_hi,
                                                int num_shells = 24);

SpectralField synthesize(const InitialDataSpec& spec, const GridSpec& grid);

}  // namespace decaylab
