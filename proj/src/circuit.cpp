#include "qpurify/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qpurify {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kTwoPi = 2 * std::numbers::pi;

// Magnitudes of a nested cos/sin chain: entry dim-1-j carries sin(angles[j])
// times the cosines before it, entry 0 the product of all cosines.
std::vector<double> chain_magnitudes(const std::vector<double> &angles, size_t dim) {
    std::vector<double> out(dim);
    double prefix = 1;
    for (size_t j = 0; j < angles.size(); j++) {
        out[dim - 1 - j] = prefix * std::sin(angles[j]);
        prefix *= std::cos(angles[j]);
    }
    out[0] = prefix;
    return out;
}

// Inverse of chain_magnitudes for nonnegative magnitudes.
std::vector<double> chain_angles(const std::vector<double> &magnitudes) {
    size_t dim = magnitudes.size();
    std::vector<double> head_sq(dim);
    double acc = 0;
    for (size_t i = 0; i < dim; i++) {
        acc += magnitudes[i] * magnitudes[i];
        head_sq[i] = acc;
    }
    std::vector<double> angles(dim - 1);
    for (size_t j = 0; j + 1 < dim; j++) {
        size_t idx = dim - 1 - j;
        angles[j] = std::atan2(magnitudes[idx], std::sqrt(head_sq[idx - 1]));
    }
    return angles;
}

std::vector<Complex> branch_amplitudes(const BranchParameters &branch) {
    std::vector<double> mags = chain_magnitudes(branch.angles, branch.dim);
    std::vector<Complex> out(branch.dim);
    for (size_t i = 0; i < branch.dim; i++) {
        out[i] = i < branch.phases.size() ? std::polar(mags[i], branch.phases[i]) : Complex(mags[i]);
    }
    return out;
}

void check_angle(double v, const char *what) {
    if (!(v >= 0 && v <= kHalfPi)) {
        std::ostringstream msg;
        msg << what << " " << v << " outside [0, pi/2]";
        throw Error(ErrorKind::BadRange, msg.str());
    }
}

}  // namespace

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0) {
        w += kTwoPi;
    }
    // Tiny negative inputs round up to exactly 2 pi; also drops -0.
    if (w >= kTwoPi || w == 0) {
        w = 0;
    }
    return w;
}

CircuitParameters CircuitParameters::zeros(size_t dim) {
    CircuitParameters p;
    p.dim = dim;
    p.weight_angles.assign(dim - 1, 0.0);
    for (size_t k = 0; k < dim; k++) {
        size_t m = dim - k;
        p.branches.push_back(BranchParameters{m, std::vector<double>(m - 1, 0.0), std::vector<double>(m - 1, 0.0)});
    }
    return p;
}

size_t CircuitParameters::parameter_count() const {
    size_t count = weight_angles.size();
    for (const auto &b : branches) {
        count += b.angles.size() + b.phases.size();
    }
    return count;
}

void CircuitParameters::validate() const {
    if (dim == 0 || weight_angles.size() != dim - 1 || branches.size() != dim) {
        throw Error(ErrorKind::BadShape, "circuit parameters do not match dimension " + std::to_string(dim));
    }
    for (double a : weight_angles) {
        check_angle(a, "weight angle");
    }
    for (size_t k = 0; k < dim; k++) {
        const auto &b = branches[k];
        size_t m = dim - k;
        if (b.dim != m || b.angles.size() != m - 1 || b.phases.size() != m - 1) {
            throw Error(ErrorKind::BadShape, "branch " + std::to_string(k) + " must have dimension " +
                                                 std::to_string(m) + " with " + std::to_string(m - 1) +
                                                 " angles and phases");
        }
        for (double a : b.angles) {
            check_angle(a, "branch angle");
        }
        for (double p : b.phases) {
            if (!(p >= 0 && p < kTwoPi)) {
                std::ostringstream msg;
                msg << "phase " << p << " outside [0, 2 pi)";
                throw Error(ErrorKind::BadRange, msg.str());
            }
        }
    }
}

CircuitParameters extract_parameters(const CoefficientMatrix &c, const ToleranceConfig &tol) {
    size_t n = c.dimension();
    CircuitParameters params = CircuitParameters::zeros(n);

    std::vector<double> weights(n);
    for (size_t k = 0; k < n; k++) {
        double p = 0;
        for (size_t i = 0; i < n; i++) {
            p += std::norm(c(k, i));
        }
        if (!std::isfinite(p)) {
            throw Error(ErrorKind::DegenerateBranch, "non-finite coefficients in row " + std::to_string(k));
        }
        weights[k] = std::sqrt(p);
    }
    if (n > 1) {
        params.weight_angles = chain_angles(weights);
    }

    for (size_t k = 0; k < n; k++) {
        size_t m = n - k;
        if (m < 2 || weights[k] * weights[k] <= tol.pivot) {
            continue;
        }
        std::vector<double> mags(m);
        for (size_t i = 0; i < m; i++) {
            mags[i] = std::abs(c(k, i));
        }
        auto &branch = params.branches[k];
        branch.angles = chain_angles(mags);
        for (size_t i = 0; i + 1 < m; i++) {
            branch.phases[i] = c(k, i) == Complex(0) ? 0.0 : wrap_phase(std::arg(c(k, i)));
        }
    }
    return params;
}

PureState simulate_circuit(const CircuitParameters &params, SimulationMode mode) {
    params.validate();
    if (mode == SimulationMode::Gates) {
        return apply_schedule(schedule_from_parameters(params));
    }
    size_t n = params.dim;
    std::vector<double> weights = chain_magnitudes(params.weight_angles, n);
    std::vector<Complex> amps(n * n);
    for (size_t k = 0; k < n; k++) {
        std::vector<Complex> branch = branch_amplitudes(params.branches[k]);
        for (size_t i = 0; i < branch.size(); i++) {
            amps[flat_index(k, i, n)] = weights[k] * branch[i];
        }
    }
    return PureState(n, n, std::move(amps));
}

GateSchedule schedule_from_parameters(const CircuitParameters &params) {
    params.validate();
    size_t n = params.dim;
    GateSchedule schedule{n, {}};
    for (size_t j = 0; j < params.weight_angles.size(); j++) {
        schedule.gates.push_back(RotationGate{std::nullopt, 0, n - 1 - j, params.weight_angles[j]});
    }
    for (size_t k = 0; k < n; k++) {
        const auto &b = params.branches[k];
        for (size_t j = 0; j < b.angles.size(); j++) {
            schedule.gates.push_back(RotationGate{k, 0, b.dim - 1 - j, b.angles[j]});
        }
        for (size_t i = 0; i < b.phases.size(); i++) {
            schedule.gates.push_back(PhaseGate{k, i, b.phases[i]});
        }
    }
    return schedule;
}

PureState apply_schedule(const GateSchedule &schedule) {
    size_t n = schedule.dim;
    if (n == 0) {
        throw Error(ErrorKind::BadShape, "schedule dimension must be positive");
    }
    std::vector<Complex> amps(n * n);
    amps[0] = 1;

    auto check_level = [n](size_t level) {
        if (level >= n) {
            throw Error(ErrorKind::OutOfRange, "gate level " + std::to_string(level) + " outside dimension " +
                                                   std::to_string(n));
        }
    };

    for (const Gate &gate : schedule.gates) {
        if (const auto *rot = std::get_if<RotationGate>(&gate)) {
            check_level(rot->a);
            check_level(rot->b);
            if (rot->a == rot->b) {
                throw Error(ErrorKind::OutOfRange, "rotation needs two distinct levels");
            }
            double cs = std::cos(rot->angle);
            double sn = std::sin(rot->angle);
            auto rotate = [&](size_t ia, size_t ib) {
                Complex xa = amps[ia];
                Complex xb = amps[ib];
                amps[ia] = cs * xa - sn * xb;
                amps[ib] = sn * xa + cs * xb;
            };
            if (rot->control) {
                check_level(*rot->control);
                rotate(flat_index(*rot->control, rot->a, n), flat_index(*rot->control, rot->b, n));
            } else {
                for (size_t i = 0; i < n; i++) {
                    rotate(flat_index(rot->a, i, n), flat_index(rot->b, i, n));
                }
            }
        } else {
            const auto &ph = std::get<PhaseGate>(gate);
            check_level(ph.basis);
            Complex factor = std::polar(1.0, ph.phase);
            if (ph.control) {
                check_level(*ph.control);
                amps[flat_index(*ph.control, ph.basis, n)] *= factor;
            } else {
                for (size_t i = 0; i < n; i++) {
                    amps[flat_index(ph.basis, i, n)] *= factor;
                }
            }
        }
    }
    return PureState(n, n, std::move(amps));
}

CoefficientMatrix invert_qubit(const CircuitParameters &params) {
    params.validate();
    if (params.dim != 2) {
        throw Error(ErrorKind::ShapeMismatch, "qubit inversion needs dimension 2");
    }
    double alpha = params.weight_angles[0];
    double theta = params.branches[0].angles[0];
    double phi = params.branches[0].phases[0];
    CMatrix c(2, 2);
    c(0, 0) = std::polar(std::cos(alpha) * std::cos(theta), phi);
    c(0, 1) = std::cos(alpha) * std::sin(theta);
    c(1, 0) = std::sin(alpha);
    return CoefficientMatrix(std::move(c));
}

}  // namespace qpurify
