#include "qpurify/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qpurify {

namespace {

double frobenius_sq(const CMatrix &a) {
    double s = 0;
    for (const auto &z : a.data()) {
        s += std::norm(z);
    }
    return s;
}

double off_diagonal_sq(const CMatrix &a) {
    double s = 0;
    for (size_t p = 0; p < a.rows(); p++) {
        for (size_t q = p + 1; q < a.cols(); q++) {
            s += std::norm(a(p, q));
        }
    }
    return 2 * s;
}

// Annihilates a(p, q) with the unitary J = [[c, s e], [-s conj(e), c]] acting
// on the (p, q) plane, where e is the phase of a(p, q).
void jacobi_rotate(CMatrix &a, CMatrix &v, size_t p, size_t q) {
    Complex apq = a(p, q);
    double mag = std::abs(apq);
    if (mag == 0) {
        return;
    }
    Complex e = apq / mag;
    double tau = (a(q, q).real() - a(p, p).real()) / (2 * mag);
    double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
    double c = 1 / std::sqrt(1 + t * t);
    double s = t * c;
    Complex se = s * e;
    Complex sec = s * std::conj(e);

    size_t n = a.rows();
    for (size_t k = 0; k < n; k++) {
        Complex akp = a(k, p);
        Complex akq = a(k, q);
        a(k, p) = c * akp - sec * akq;
        a(k, q) = se * akp + c * akq;
    }
    for (size_t k = 0; k < n; k++) {
        Complex apk = a(p, k);
        Complex aqk = a(q, k);
        a(p, k) = c * apk - se * aqk;
        a(q, k) = sec * apk + c * aqk;
    }
    for (size_t k = 0; k < n; k++) {
        Complex vkp = v(k, p);
        Complex vkq = v(k, q);
        v(k, p) = c * vkp - sec * vkq;
        v(k, q) = se * vkp + c * vkq;
    }
    a(p, q) = 0;
    a(q, p) = 0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

// Index of the first component within a relative 1e-12 of the largest magnitude.
size_t leading_component(const CMatrix &v, size_t col) {
    double best = 0;
    for (size_t r = 0; r < v.rows(); r++) {
        best = std::max(best, std::abs(v(r, col)));
    }
    for (size_t r = 0; r < v.rows(); r++) {
        if (std::abs(v(r, col)) >= best * (1 - 1e-12)) {
            return r;
        }
    }
    return 0;
}

}  // namespace

EigenDecomposition hermitian_eigen(const CMatrix &matrix) {
    if (!matrix.is_square()) {
        throw Error(ErrorKind::ShapeMismatch, "eigensolver needs a square matrix");
    }
    size_t n = matrix.rows();
    CMatrix a = matrix;
    CMatrix v = CMatrix::identity(n);

    // Converged once the off-diagonal mass is at rounding level.
    double rel = static_cast<double>(std::max<size_t>(n, 1)) * std::numeric_limits<double>::epsilon();
    double threshold = rel * rel * frobenius_sq(a);
    int sweep = 0;
    while (off_diagonal_sq(a) > threshold) {
        if (sweep++ == kMaxJacobiSweeps) {
            throw Error(ErrorKind::NoConvergence, "Jacobi iteration exceeded " + std::to_string(kMaxJacobiSweeps) +
                                                      " sweeps");
        }
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                jacobi_rotate(a, v, p, q);
            }
        }
    }

    std::vector<size_t> lead(n);
    for (size_t k = 0; k < n; k++) {
        lead[k] = leading_component(v, k);
        Complex z = v(lead[k], k);
        double mag = std::abs(z);
        if (mag > 0) {
            Complex phase = std::conj(z) / mag;
            for (size_t r = 0; r < n; r++) {
                v(r, k) *= phase;
            }
            v(lead[k], k) = std::abs(v(lead[k], k));
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        double lx = a(x, x).real();
        double ly = a(y, y).real();
        if (lx != ly) {
            return lx > ly;
        }
        return lead[x] < lead[y];
    });

    EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
    for (size_t k = 0; k < n; k++) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (size_t r = 0; r < n; r++) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

CMatrix partial_trace_ancilla(const PureState &state) {
    size_t m = state.ancilla_dim();
    size_t n = state.system_dim();
    CMatrix sigma(n, n);
    for (size_t i = 0; i < n; i++) {
        double diag = 0;
        for (size_t alpha = 0; alpha < m; alpha++) {
            diag += std::norm(state.at(alpha, i));
        }
        sigma(i, i) = diag;
        for (size_t j = i + 1; j < n; j++) {
            Complex s = 0;
            for (size_t alpha = 0; alpha < m; alpha++) {
                s += state.at(alpha, i) * std::conj(state.at(alpha, j));
            }
            sigma(i, j) = s;
            sigma(j, i) = std::conj(s);
        }
    }
    return sigma;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    size_t rows = a.rows() * b.rows();
    size_t cols = a.cols() * b.cols();
    if (rows > kMaxKronDimension || cols > kMaxKronDimension) {
        throw Error(ErrorKind::SizeOverflow, "tensor product dimension " + std::to_string(rows) + "x" +
                                                 std::to_string(cols) + " exceeds cap");
    }
    CMatrix out(rows, cols);
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            Complex s = a(i, j);
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
                }
            }
        }
    }
    return out;
}

CMatrix reference_cholesky(const CMatrix &matrix, double pivot_tol) {
    if (!matrix.is_square()) {
        throw Error(ErrorKind::ShapeMismatch, "Cholesky needs a square matrix");
    }
    size_t n = matrix.rows();
    auto rev = [n](size_t k) { return n - 1 - k; };

    // Lower factor of the basis-reversed matrix.
    CMatrix lower(n, n);
    for (size_t j = 0; j < n; j++) {
        double r = matrix(rev(j), rev(j)).real();
        for (size_t k = 0; k < j; k++) {
            r -= std::norm(lower(j, k));
        }
        if (r < -pivot_tol) {
            throw Error(ErrorKind::NotPSD, "Cholesky pivot " + std::to_string(r) + " at column " + std::to_string(j));
        }
        double q = std::sqrt(std::max(r, 0.0));
        lower(j, j) = q;
        if (q <= pivot_tol) {
            continue;
        }
        for (size_t i = j + 1; i < n; i++) {
            Complex s = matrix(rev(i), rev(j));
            for (size_t k = 0; k < j; k++) {
                s -= lower(i, k) * std::conj(lower(j, k));
            }
            lower(i, j) = s / q;
        }
    }

    CMatrix upper(n, n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            upper(i, j) = lower(rev(i), rev(j));
        }
    }
    return upper;
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "cannot compare " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " with " + std::to_string(b.rows()) +
                                                  "x" + std::to_string(b.cols()));
    }
    return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::ShapeMismatch, "vector lengths differ");
    }
    double m = 0;
    for (size_t k = 0; k < a.size(); k++) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

bool is_unitary(const CMatrix &u, double tol) {
    if (!u.is_square()) {
        return false;
    }
    return max_abs_diff(u.adjoint() * u, CMatrix::identity(u.rows())) <= tol;
}

}  // namespace qpurify
