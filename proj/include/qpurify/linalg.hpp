#pragma once

#include <vector>

#include "qpurify/core.hpp"

namespace qpurify {

struct EigenDecomposition {
    /// Sorted descending.
    std::vector<double> eigenvalues;
    /// Column k pairs with eigenvalues[k].
    CMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Deterministic for a fixed input: sweeps visit (p, q) pairs in row-major
/// order. Each eigenvector is scaled so its first largest-magnitude component
/// is real positive. Exactly tied eigenvalues are ordered by the position of
/// that component. Throws NoConvergence after kMaxJacobiSweeps sweeps.
EigenDecomposition hermitian_eigen(const CMatrix &matrix);

inline constexpr int kMaxJacobiSweeps = 100;

/// sigma_ij = sum_alpha psi[alpha*N + i] * conj(psi[alpha*N + j]).
CMatrix partial_trace_ancilla(const PureState &state);

/// Tensor product with blocks a_ij * b. Throws SizeOverflow when either
/// result dimension exceeds kMaxKronDimension.
CMatrix kron(const CMatrix &a, const CMatrix &b);

inline constexpr size_t kMaxKronDimension = QuditShape::kDefaultCap;

/// Upper-triangular D with real nonnegative diagonal and D D^dagger = rho.
///
/// Computed as the textbook lower Cholesky factor L of J rho J (J reverses the
/// basis), eliminated column by column, then mapped back as D = J L J. A pivot
/// whose square root is at most pivot_tol zeroes the rest of its column; a
/// squared pivot below -pivot_tol throws NotPSD.
CMatrix reference_cholesky(const CMatrix &matrix, double pivot_tol = ToleranceConfig{}.pivot);

/// max_ij |a_ij - b_ij|; throws ShapeMismatch.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

/// Same for flat vectors.
double max_abs_diff(const std::vector<Complex> &a, const std::vector<Complex> &b);

bool is_unitary(const CMatrix &u, double tol);

}  // namespace qpurify
