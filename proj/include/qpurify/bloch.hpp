#pragma once

#include <vector>

#include "qpurify/core.hpp"

namespace qpurify {

struct BlochPoint {
    double x = 0;
    double y = 0;
    double z = 0;
};

/// One emitted surface sample together with the angles that produced it.
struct BlochSample {
    double alpha = 0;
    double theta = 0;
    double phi = 0;
    BlochPoint point;
};

/// The single-qubit mixture cos^2(alpha) |psi><psi| + sin^2(alpha) |0><0| with
/// |psi> = cos(theta)|0> + sin(theta) e^{-i phi}|1>, i.e. rho01 = cos sin e^{i phi}.
CMatrix qubit_mixture(double alpha, double theta, double phi);

/// rho01 = (X - iY)/2, Z = rho00 - rho11.
BlochPoint bloch_vector(const CMatrix &rho);

/// Samples the surface reached at fixed alpha: a sphere of radius cos^2(alpha)
/// centred at (0, 0, sin^2(alpha)). theta runs over n_theta points spanning
/// [0, pi/2] inclusive (one cover of the pure-state sphere) and phi over n_phi
/// points of [0, 2 pi). Throws BadRange for alpha outside [0, pi/2] or grids
/// below 2.
std::vector<BlochSample> bloch_surface(double alpha, size_t n_theta, size_t n_phi);

/// rho = (1/2)[[1+Z, X-iY], [X+iY, 1-Z]]; throws OutsideBall beyond radius 1 + 1e-12.
DensityMatrix density_from_bloch(double x, double y, double z);

/// Squared row norms p_k of the coefficient matrix.
std::vector<double> mixture_weights(const CoefficientMatrix &c);

}  // namespace qpurify
