#pragma once

#include <Eigen/Core>

#include "decaylab/spectral_field.hpp"

namespace decaylab {

// Symbol of L u = Laplacian u + (1/eps) grad div u:
//   M(xi)_ij = -|xi|^2 delta_ij - (1/eps) xi_i xi_j.
// Eigenvalues -|xi|^2 (solenoidal, multiplicity 2) and -(1+1/eps)|xi|^2
// (gradient direction).
Eigen::Matrix3d symbol(const Eigen::Vector3d& xi, double eps);

// Exact semigroup exp(t M(xi)) in projector form:
//   exp(-t|xi|^2) I - (xi xi^T/|xi|^2) (exp(-t|xi|^2) - exp(-(1+1/eps)t|xi|^2)).
// Identity at xi = 0 or t = 0.
Eigen::Matrix3d propagator(const Eigen::Vector3d& xi, double t, double eps);

// Coefficientwise matrix-vector product with propagator(k, t, eps).
SpectralField apply_propagator(const SpectralField& field, double t, double eps);

// Lambda^s multiplier: coefficient at k scaled by |k|^s; k = 0 zeroed.
SpectralField apply_fractional_laplacian(const SpectralField& field, double s);

}  // namespace decaylab
