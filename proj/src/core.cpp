#include "qpurify/core.hpp"

#include <cmath>
#include <sstream>

#include "qpurify/linalg.hpp"

namespace qpurify {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian:
            return "NotHermitian";
        case ErrorKind::TraceDeviation:
            return "TraceDeviation";
        case ErrorKind::NotPSD:
            return "NotPSD";
        case ErrorKind::ShapeMismatch:
            return "ShapeMismatch";
        case ErrorKind::OutOfRange:
            return "OutOfRange";
        case ErrorKind::BadShape:
            return "BadShape";
        case ErrorKind::SizeOverflow:
            return "SizeOverflow";
        case ErrorKind::NoConvergence:
            return "NoConvergence";
        case ErrorKind::ReconstructionFailure:
            return "ReconstructionFailure";
        case ErrorKind::NormFailure:
            return "NormFailure";
        case ErrorKind::NotUnitary:
            return "NotUnitary";
        case ErrorKind::DegenerateBranch:
            return "DegenerateBranch";
        case ErrorKind::BadRange:
            return "BadRange";
        case ErrorKind::OutsideBall:
            return "OutsideBall";
        case ErrorKind::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &detail)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) {
}

void ToleranceConfig::validate() const {
    for (double v : {herm, trace, psd, recon, norm, pivot}) {
        if (!(v >= 0)) {
            throw Error(ErrorKind::BadRange, "tolerances must be nonnegative");
        }
    }
}

CMatrix CMatrix::identity(size_t n) {
    CMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<double> &values) {
    CMatrix m(values.size(), values.size());
    for (size_t k = 0; k < values.size(); k++) {
        m(k, k) = values[k];
    }
    return m;
}

CMatrix CMatrix::from_rows(const std::vector<std::vector<Complex>> &rows) {
    size_t cols = rows.empty() ? 0 : rows.front().size();
    CMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw Error(ErrorKind::ShapeMismatch, "ragged row list");
        }
        for (size_t c = 0; c < cols; c++) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

CMatrix CMatrix::conj() const {
    CMatrix out(*this);
    for (auto &z : out.data_) {
        z = std::conj(z);
    }
    return out;
}

Complex CMatrix::trace() const {
    Complex t = 0;
    for (size_t k = 0; k < std::min(rows_, cols_); k++) {
        t += (*this)(k, k);
    }
    return t;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    if (a.cols_ != b.rows_) {
        throw Error(ErrorKind::ShapeMismatch, "matrix product dimensions");
    }
    CMatrix out(a.rows_, b.cols_);
    for (size_t r = 0; r < a.rows_; r++) {
        for (size_t k = 0; k < a.cols_; k++) {
            Complex s = a(r, k);
            if (s == Complex(0)) {
                continue;
            }
            for (size_t c = 0; c < b.cols_; c++) {
                out(r, c) += s * b(k, c);
            }
        }
    }
    return out;
}

CMatrix operator+(const CMatrix &a, const CMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw Error(ErrorKind::ShapeMismatch, "matrix sum dimensions");
    }
    CMatrix out(a);
    for (size_t k = 0; k < out.data_.size(); k++) {
        out.data_[k] += b.data_[k];
    }
    return out;
}

CMatrix operator-(const CMatrix &a, const CMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw Error(ErrorKind::ShapeMismatch, "matrix difference dimensions");
    }
    CMatrix out(a);
    for (size_t k = 0; k < out.data_.size(); k++) {
        out.data_[k] -= b.data_[k];
    }
    return out;
}

CMatrix operator*(Complex s, const CMatrix &a) {
    CMatrix out(a);
    for (auto &z : out.data_) {
        z *= s;
    }
    return out;
}

QuditShape::QuditShape(size_t d, size_t n, size_t cap) : d_(d), n_(n), dim_(1) {
    if (d < 2 || n < 1) {
        throw Error(ErrorKind::BadShape, "need d >= 2 and n >= 1");
    }
    for (size_t k = 0; k < n; k++) {
        if (dim_ > cap / d) {
            throw Error(ErrorKind::BadShape, "d^n exceeds the dimension cap " + std::to_string(cap));
        }
        dim_ *= d;
    }
}

size_t flat_index(size_t alpha, size_t i, size_t system_dim, size_t ancilla_dim) {
    if (alpha >= ancilla_dim || i >= system_dim) {
        throw Error(ErrorKind::OutOfRange, "index pair (" + std::to_string(alpha) + ", " + std::to_string(i) +
                                               ") outside " + std::to_string(ancilla_dim) + "x" +
                                               std::to_string(system_dim));
    }
    return alpha * system_dim + i;
}

DensityMatrix validate_density(const CMatrix &matrix, const QuditShape &shape, const ToleranceConfig &tol) {
    tol.validate();
    size_t n = shape.dimension();
    if (matrix.rows() != n || matrix.cols() != n) {
        throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                                                  std::to_string(matrix.rows()) + "x" +
                                                  std::to_string(matrix.cols()));
    }

    double asym = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            double dev = std::abs(matrix(i, j) - std::conj(matrix(j, i)));
            if (!std::isfinite(dev)) {
                throw Error(ErrorKind::NotHermitian, "non-finite entry");
            }
            asym = std::max(asym, dev);
        }
    }
    if (asym > tol.herm) {
        std::ostringstream msg;
        msg << "max |rho_ij - conj(rho_ji)| = " << asym << " > " << tol.herm;
        throw Error(ErrorKind::NotHermitian, msg.str());
    }

    CMatrix sym(n, n);
    for (size_t i = 0; i < n; i++) {
        sym(i, i) = matrix(i, i).real();
        for (size_t j = i + 1; j < n; j++) {
            Complex z = 0.5 * (matrix(i, j) + std::conj(matrix(j, i)));
            sym(i, j) = z;
            sym(j, i) = std::conj(z);
        }
    }

    double tr = sym.trace().real();
    if (std::abs(tr - 1) > tol.trace) {
        std::ostringstream msg;
        msg << "trace " << tr << " deviates from 1 by more than " << tol.trace;
        throw Error(ErrorKind::TraceDeviation, msg.str());
    }

    double min_eig = hermitian_eigen(sym).eigenvalues.back();
    if (min_eig < -tol.psd) {
        std::ostringstream msg;
        msg << "min eigenvalue " << min_eig << " < " << -tol.psd;
        throw Error(ErrorKind::NotPSD, msg.str());
    }
    return DensityMatrix(shape, std::move(sym));
}

PureState::PureState(size_t ancilla_dim, size_t system_dim, std::vector<Complex> amplitudes, double norm_tol)
    : ancilla_dim_(ancilla_dim), system_dim_(system_dim), amplitudes_(std::move(amplitudes)) {
    if (ancilla_dim == 0 || system_dim == 0 || amplitudes_.size() != ancilla_dim * system_dim) {
        throw Error(ErrorKind::ShapeMismatch, "amplitude count " + std::to_string(amplitudes_.size()) +
                                                  " != " + std::to_string(ancilla_dim) + "*" +
                                                  std::to_string(system_dim));
    }
    double nrm = norm();
    if (!(std::abs(nrm - 1) <= norm_tol)) {
        std::ostringstream msg;
        msg << "state norm " << nrm << " deviates from 1 by more than " << norm_tol;
        throw Error(ErrorKind::NormFailure, msg.str());
    }
}

double PureState::norm() const {
    double s = 0;
    for (const auto &z : amplitudes_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

bool satisfies_gauge(const CMatrix &c) {
    if (!c.is_square()) {
        return false;
    }
    size_t n = c.rows();
    for (size_t alpha = 0; alpha < n; alpha++) {
        size_t t = n - 1 - alpha;
        const Complex &pivot = c(alpha, t);
        if (pivot.imag() != 0 || !(pivot.real() >= 0)) {
            return false;
        }
        for (size_t i = t + 1; i < n; i++) {
            if (c(alpha, i) != Complex(0)) {
                return false;
            }
        }
    }
    return true;
}

CoefficientMatrix::CoefficientMatrix(CMatrix c) : c_(std::move(c)) {
    if (!c_.is_square() || c_.rows() == 0) {
        throw Error(ErrorKind::ShapeMismatch, "coefficient matrix must be square and nonempty");
    }
    if (!satisfies_gauge(c_)) {
        throw Error(ErrorKind::BadRange, "coefficients violate the anti-triangular gauge");
    }
}

size_t CoefficientMatrix::free_parameter_count() const {
    // Complex slots strictly inside the pattern count twice, the real
    // anti-diagonal once; unit trace removes one.
    size_t n = dimension();
    size_t count = 0;
    for (size_t alpha = 0; alpha < n; alpha++) {
        size_t t = n - 1 - alpha;
        count += 2 * t + 1;
    }
    return count - 1;
}

}  // namespace qpurify
