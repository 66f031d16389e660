#include "qpurify/bloch.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qpurify {

CMatrix qubit_mixture(double alpha, double theta, double phi) {
    double ca2 = std::cos(alpha) * std::cos(alpha);
    double sa2 = std::sin(alpha) * std::sin(alpha);
    double ct = std::cos(theta);
    double st = std::sin(theta);
    CMatrix rho(2, 2);
    rho(0, 0) = ca2 * ct * ct + sa2;
    rho(1, 1) = ca2 * st * st;
    rho(0, 1) = std::polar(ca2 * ct * st, phi);
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

BlochPoint bloch_vector(const CMatrix &rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw Error(ErrorKind::ShapeMismatch, "Bloch vector needs a 2x2 matrix");
    }
    return BlochPoint{2 * rho(0, 1).real(), -2 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

std::vector<BlochSample> bloch_surface(double alpha, size_t n_theta, size_t n_phi) {
    if (!(alpha >= 0 && alpha <= std::numbers::pi / 2)) {
        std::ostringstream msg;
        msg << "alpha " << alpha << " outside [0, pi/2]";
        throw Error(ErrorKind::BadRange, msg.str());
    }
    if (n_theta < 2 || n_phi < 2) {
        throw Error(ErrorKind::BadRange, "grid sizes must be at least 2");
    }
    std::vector<BlochSample> out;
    out.reserve(n_theta * n_phi);
    for (size_t it = 0; it < n_theta; it++) {
        double theta = (std::numbers::pi / 2) * static_cast<double>(it) / static_cast<double>(n_theta - 1);
        for (size_t ip = 0; ip < n_phi; ip++) {
            double phi = 2 * std::numbers::pi * static_cast<double>(ip) / static_cast<double>(n_phi);
            out.push_back(BlochSample{alpha, theta, phi, bloch_vector(qubit_mixture(alpha, theta, phi))});
        }
    }
    return out;
}

DensityMatrix density_from_bloch(double x, double y, double z) {
    double r2 = x * x + y * y + z * z;
    if (!(r2 <= 1 + 1e-12)) {
        std::ostringstream msg;
        msg << "|r|^2 = " << r2 << " exceeds 1";
        throw Error(ErrorKind::OutsideBall, msg.str());
    }
    CMatrix rho(2, 2);
    rho(0, 0) = 0.5 * (1 + z);
    rho(1, 1) = 0.5 * (1 - z);
    rho(0, 1) = Complex(0.5 * x, -0.5 * y);
    rho(1, 0) = Complex(0.5 * x, 0.5 * y);
    return validate_density(rho, QuditShape(2, 1));
}

std::vector<double> mixture_weights(const CoefficientMatrix &c) {
    size_t n = c.dimension();
    std::vector<double> p(n);
    for (size_t k = 0; k < n; k++) {
        for (size_t i = 0; i < n; i++) {
            p[k] += std::norm(c(k, i));
        }
    }
    return p;
}

}  // namespace qpurify
