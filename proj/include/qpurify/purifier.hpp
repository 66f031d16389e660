#pragma once

#include <vector>

#include "qpurify/core.hpp"

namespace qpurify {

/// Triangular purification of rho.
///
/// Rows are filled in the order alpha = 0..N-1. Row alpha owns the pivot column
/// t = N-1-alpha: C[alpha][t] is the square root of the residual diagonal
/// rho_tt - sum_{beta<alpha} |C[beta][t]|^2 (clamped at zero), and C[alpha][j]
/// for j < t solves rho_jt = sum_beta C[beta][j] conj(C[beta][t]). A pivot at or
/// below tol.pivot leaves the rest of its row zero. The result is checked
/// against rho and a deviation above tol.recon throws ReconstructionFailure.
CoefficientMatrix cholesky_purify(const DensityMatrix &rho, const ToleranceConfig &tol = {});

/// Closed-form single-qubit coefficients:
///   C01 = sqrt(rho11), C00 = rho01 / sqrt(rho11),
///   C10 = sqrt((rho00 rho11 - rho10 rho01) / rho11), C11 = 0,
/// with C00 = 0 when sqrt(rho11) is at or below tol.pivot.
CoefficientMatrix qubit_closed_form(const DensityMatrix &rho, const ToleranceConfig &tol = {});

/// sum_k sqrt(p_k) |k>|v_k> over the eigenpairs of rho, in hermitian_eigen order.
PureState spectral_purify(const DensityMatrix &rho, const ToleranceConfig &tol = {});

PureState coefficients_to_state(const CoefficientMatrix &c, const ToleranceConfig &tol = {});

struct VerificationReport {
    double max_abs_error = 0;
    bool pass = false;
};

/// Compares Tr_A |psi><psi| with rho.
VerificationReport verify_purification(const PureState &state, const DensityMatrix &rho,
                                       const ToleranceConfig &tol = {});

/// (U_A (x) 1_S)|psi>. Throws NotUnitary if U_A is not unitary within unitary_tol.
PureState gauge_transform(const PureState &state, const CMatrix &ancilla_unitary, double unitary_tol = 1e-10);

/// Alternate strategy for singular inputs: relabel the system basis so the
/// diagonal of rho is nondecreasing (largest entries are eliminated first),
/// purify, and map the system index back.
struct ReshuffledPurification {
    /// order[k] is the original basis index placed at position k.
    std::vector<size_t> order;
    /// Gauge-form coefficients in the relabelled basis.
    CoefficientMatrix permuted_coefficients;
    /// Purification of rho in the original basis.
    PureState state;
};

ReshuffledPurification reshuffled_purify(const DensityMatrix &rho, const ToleranceConfig &tol = {});

}  // namespace qpurify
