#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpurify {

using Complex = std::complex<double>;

/// Failure categories. The names double as the machine-greppable stderr
/// prefixes of the command-line tool.
enum class ErrorKind {
    NotHermitian,
    TraceDeviation,
    NotPSD,
    ShapeMismatch,
    OutOfRange,
    BadShape,
    SizeOverflow,
    NoConvergence,
    ReconstructionFailure,
    NormFailure,
    NotUnitary,
    DegenerateBranch,
    BadRange,
    OutsideBall,
    ParseError,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &detail);
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

struct ToleranceConfig {
    double herm = 1e-10;
    double trace = 1e-10;
    double psd = 1e-9;
    double recon = 1e-10;
    double norm = 1e-10;
    double pivot = 1e-12;

    /// Throws BadRange if any field is negative or NaN.
    void validate() const;
};

/// Dense row-major complex matrix.
class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(size_t n);
    static CMatrix diagonal(const std::vector<double> &values);
    /// Row-list literal; every row must have the same length.
    static CMatrix from_rows(const std::vector<std::vector<Complex>> &rows);

    size_t rows() const noexcept { return rows_; }
    size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex> &data() const noexcept { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conj() const;
    Complex trace() const;

    friend CMatrix operator*(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator+(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator-(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator*(Complex s, const CMatrix &a);
    friend bool operator==(const CMatrix &a, const CMatrix &b) = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// n qudits of local dimension d; dimension() = d^n.
class QuditShape {
   public:
    static constexpr size_t kDefaultCap = 4096;

    QuditShape(size_t d, size_t n, size_t cap = kDefaultCap);

    size_t d() const noexcept { return d_; }
    size_t n() const noexcept { return n_; }
    size_t dimension() const noexcept { return dim_; }

    friend bool operator==(const QuditShape &, const QuditShape &) = default;

   private:
    size_t d_;
    size_t n_;
    size_t dim_;
};

/// Amplitude slot of |alpha>|i> in a register pair where the ancilla is the
/// most significant block. Every module indexes joint states through this.
size_t flat_index(size_t alpha, size_t i, size_t system_dim, size_t ancilla_dim);
inline size_t flat_index(size_t alpha, size_t i, size_t system_dim) {
    return flat_index(alpha, i, system_dim, system_dim);
}

/// A validated density matrix. Only validate_density() constructs one.
class DensityMatrix {
   public:
    const QuditShape &shape() const noexcept { return shape_; }
    size_t dimension() const noexcept { return shape_.dimension(); }
    const CMatrix &matrix() const noexcept { return matrix_; }
    const Complex &operator()(size_t i, size_t j) const { return matrix_(i, j); }

   private:
    friend DensityMatrix validate_density(const CMatrix &, const QuditShape &, const ToleranceConfig &);
    DensityMatrix(QuditShape shape, CMatrix matrix) : shape_(shape), matrix_(std::move(matrix)) {}

    QuditShape shape_;
    CMatrix matrix_;
};

/// Symmetrizes, then checks Hermiticity, unit trace and positivity.
DensityMatrix validate_density(const CMatrix &matrix, const QuditShape &shape,
                               const ToleranceConfig &tol = {});

/// Joint ancilla-system pure state, amplitude of |alpha>|i> at alpha*N + i.
class PureState {
   public:
    /// Throws ShapeMismatch on a size mismatch and NormFailure when the
    /// norm deviates from one by more than norm_tol.
    PureState(size_t ancilla_dim, size_t system_dim, std::vector<Complex> amplitudes,
              double norm_tol = ToleranceConfig{}.norm);

    size_t ancilla_dim() const noexcept { return ancilla_dim_; }
    size_t system_dim() const noexcept { return system_dim_; }
    const std::vector<Complex> &amplitudes() const noexcept { return amplitudes_; }
    const Complex &at(size_t alpha, size_t i) const {
        return amplitudes_[flat_index(alpha, i, system_dim_, ancilla_dim_)];
    }
    double norm() const;

   private:
    size_t ancilla_dim_;
    size_t system_dim_;
    std::vector<Complex> amplitudes_;
};

/// Purification coefficients C[alpha][i] in the anti-triangular gauge:
/// C[alpha][i] == 0 for i > N-1-alpha, anti-diagonal real and nonnegative.
class CoefficientMatrix {
   public:
    /// Throws ShapeMismatch unless square, BadRange if the gauge is violated.
    explicit CoefficientMatrix(CMatrix c);

    size_t dimension() const noexcept { return c_.rows(); }
    const CMatrix &matrix() const noexcept { return c_; }
    const Complex &operator()(size_t alpha, size_t i) const { return c_(alpha, i); }

    /// Number of real slots the gauge leaves free, minus the trace constraint.
    size_t free_parameter_count() const;

   private:
    CMatrix c_;
};

/// True iff c has bit-zero entries above the anti-diagonal and a real
/// nonnegative anti-diagonal.
bool satisfies_gauge(const CMatrix &c);

}  // namespace qpurify
