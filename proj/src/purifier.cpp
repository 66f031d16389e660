#include "qpurify/purifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qpurify/linalg.hpp"

namespace qpurify {

namespace {

double reconstruction_error(const CMatrix &c, const CMatrix &rho) {
    size_t n = c.rows();
    double worst = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            Complex s = 0;
            for (size_t alpha = 0; alpha < n; alpha++) {
                s += c(alpha, i) * std::conj(c(alpha, j));
            }
            worst = std::max(worst, std::abs(s - rho(i, j)));
        }
    }
    return worst;
}

}  // namespace

CoefficientMatrix cholesky_purify(const DensityMatrix &rho, const ToleranceConfig &tol) {
    size_t n = rho.dimension();
    CMatrix c(n, n);
    // Undivided row entries and squared pivots. Inner products are formed as
    // num * conj(num) / q^2, so sqrt rounding in q never leaks into a later
    // residual (|+><+| gives an exactly zero second pivot this way).
    CMatrix num(n, n);
    std::vector<double> q2(n, 0.0);
    for (size_t alpha = 0; alpha < n; alpha++) {
        size_t t = n - 1 - alpha;
        double residual = rho(t, t).real();
        for (size_t beta = 0; beta < alpha; beta++) {
            if (q2[beta] > 0) {
                residual -= std::norm(num(beta, t)) / q2[beta];
            }
        }
        double q = std::sqrt(std::max(residual, 0.0));
        c(alpha, t) = q;
        if (q <= tol.pivot) {
            continue;
        }
        q2[alpha] = residual;
        num(alpha, t) = residual;
        for (size_t j = t; j-- > 0;) {
            Complex s = rho(j, t);
            for (size_t beta = 0; beta < alpha; beta++) {
                if (q2[beta] > 0) {
                    s -= num(beta, j) * std::conj(num(beta, t)) / q2[beta];
                }
            }
            num(alpha, j) = s;
            c(alpha, j) = s / q;
        }
    }

    double err = reconstruction_error(c, rho.matrix());
    if (!(err <= tol.recon)) {
        std::ostringstream msg;
        msg << "max |sum_a C_ai conj(C_aj) - rho_ij| = " << err << " > " << tol.recon;
        throw Error(ErrorKind::ReconstructionFailure, msg.str());
    }
    return CoefficientMatrix(std::move(c));
}

CoefficientMatrix qubit_closed_form(const DensityMatrix &rho, const ToleranceConfig &tol) {
    if (rho.dimension() != 2) {
        throw Error(ErrorKind::ShapeMismatch, "closed form applies to a single qubit");
    }
    double r00 = rho(0, 0).real();
    double r11 = rho(1, 1).real();
    Complex r01 = rho(0, 1);
    Complex r10 = rho(1, 0);

    CMatrix c(2, 2);
    double c01 = std::sqrt(std::max(r11, 0.0));
    c(0, 1) = c01;
    if (c01 <= tol.pivot) {
        // rho = |0><0| up to the pivot tolerance; the purification is |10>.
        c(1, 0) = std::sqrt(std::max(r00, 0.0));
    } else {
        c(0, 0) = r01 / c01;
        double det = (r00 * r11 - r10 * r01).real();
        c(1, 0) = std::sqrt(std::max(det / r11, 0.0));
    }
    return CoefficientMatrix(std::move(c));
}

PureState spectral_purify(const DensityMatrix &rho, const ToleranceConfig &tol) {
    size_t n = rho.dimension();
    EigenDecomposition eig = hermitian_eigen(rho.matrix());

    std::vector<double> weights(n);
    double total = 0;
    for (size_t k = 0; k < n; k++) {
        weights[k] = std::max(eig.eigenvalues[k], 0.0);
        total += weights[k];
    }
    std::vector<Complex> amps(n * n);
    for (size_t k = 0; k < n; k++) {
        double w = std::sqrt(weights[k] / total);
        for (size_t i = 0; i < n; i++) {
            amps[flat_index(k, i, n)] = w * eig.eigenvectors(i, k);
        }
    }
    return PureState(n, n, std::move(amps), tol.norm);
}

PureState coefficients_to_state(const CoefficientMatrix &c, const ToleranceConfig &tol) {
    size_t n = c.dimension();
    std::vector<Complex> amps(n * n);
    for (size_t alpha = 0; alpha < n; alpha++) {
        for (size_t i = 0; i < n; i++) {
            amps[flat_index(alpha, i, n)] = c(alpha, i);
        }
    }
    return PureState(n, n, std::move(amps), tol.norm);
}

VerificationReport verify_purification(const PureState &state, const DensityMatrix &rho,
                                       const ToleranceConfig &tol) {
    if (state.system_dim() != rho.dimension()) {
        throw Error(ErrorKind::ShapeMismatch, "state system dimension " + std::to_string(state.system_dim()) +
                                                  " != density dimension " + std::to_string(rho.dimension()));
    }
    VerificationReport report;
    report.max_abs_error = max_abs_diff(partial_trace_ancilla(state), rho.matrix());
    report.pass = report.max_abs_error <= tol.recon;
    return report;
}

PureState gauge_transform(const PureState &state, const CMatrix &ancilla_unitary, double unitary_tol) {
    size_t m = state.ancilla_dim();
    size_t n = state.system_dim();
    if (ancilla_unitary.rows() != m || ancilla_unitary.cols() != m) {
        throw Error(ErrorKind::ShapeMismatch, "ancilla unitary must be " + std::to_string(m) + "x" + std::to_string(m));
    }
    if (!is_unitary(ancilla_unitary, unitary_tol)) {
        throw Error(ErrorKind::NotUnitary, "ancilla operator is not unitary");
    }
    std::vector<Complex> out(m * n);
    for (size_t beta = 0; beta < m; beta++) {
        for (size_t alpha = 0; alpha < m; alpha++) {
            Complex u = ancilla_unitary(beta, alpha);
            if (u == Complex(0)) {
                continue;
            }
            for (size_t i = 0; i < n; i++) {
                out[flat_index(beta, i, n, m)] += u * state.at(alpha, i);
            }
        }
    }
    // The unitary check above bounds the norm drift well inside this.
    return PureState(m, n, std::move(out), 1e-8);
}

ReshuffledPurification reshuffled_purify(const DensityMatrix &rho, const ToleranceConfig &tol) {
    size_t n = rho.dimension();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return rho(a, a).real() < rho(b, b).real(); });

    CMatrix permuted(n, n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            permuted(i, j) = rho(order[i], order[j]);
        }
    }
    DensityMatrix permuted_rho = validate_density(permuted, rho.shape(), tol);
    CoefficientMatrix c = cholesky_purify(permuted_rho, tol);

    std::vector<Complex> amps(n * n);
    for (size_t alpha = 0; alpha < n; alpha++) {
        for (size_t k = 0; k < n; k++) {
            amps[flat_index(alpha, order[k], n)] = c(alpha, k);
        }
    }
    PureState state(n, n, std::move(amps), tol.norm);
    return ReshuffledPurification{std::move(order), std::move(c), std::move(state)};
}

}  // namespace qpurify
