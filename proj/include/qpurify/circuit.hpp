#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qpurify/core.hpp"

namespace qpurify {

/// State-preparation parameters of one branch: a pure state on the first
/// `dim` system basis states.
///
/// angles[j] fixes amplitude dim-1-j:   b[dim-1-j] = cos(angles[0])...cos(angles[j-1]) sin(angles[j])
/// and b[0] is the product of all cosines. phases[i] is the argument of b[i]
/// for i < dim-1; the last amplitude is real and nonnegative.
struct BranchParameters {
    size_t dim = 1;
    std::vector<double> angles;
    std::vector<double> phases;

    friend bool operator==(const BranchParameters &, const BranchParameters &) = default;
};

/// Chain layout of the full circuit.
///
/// weight_angles[j] splits ancilla weight onto branch N-1-j:
///   w[N-1-j] = cos(a_0)...cos(a_{j-1}) sin(a_j),  w[0] = prod cos(a_j).
/// Branch k has dimension N-k.
struct CircuitParameters {
    size_t dim = 1;
    std::vector<double> weight_angles;
    std::vector<BranchParameters> branches;

    /// All parameters zero; prepares |0>|0>.
    static CircuitParameters zeros(size_t dim);

    /// (N-1) + sum_m 2(m-1) = N^2 - 1 for a well-formed instance.
    size_t parameter_count() const;

    /// Throws BadShape on inconsistent lengths, BadRange when an angle leaves
    /// [0, pi/2] or a phase leaves [0, 2 pi).
    void validate() const;

    friend bool operator==(const CircuitParameters &, const CircuitParameters &) = default;
};

/// Rotation R(angle) = [[cos, -sin], [sin, cos]] on the span of |a>, |b>.
/// Uncontrolled gates act on the ancilla register; a control value k
/// restricts the gate to the system register of the ancilla-k branch.
struct RotationGate {
    std::optional<size_t> control;
    size_t a = 0;
    size_t b = 0;
    double angle = 0;

    friend bool operator==(const RotationGate &, const RotationGate &) = default;
};

/// Multiplies |basis> by exp(i * phase); same register rule as RotationGate.
struct PhaseGate {
    std::optional<size_t> control;
    size_t basis = 0;
    double phase = 0;

    friend bool operator==(const PhaseGate &, const PhaseGate &) = default;
};

using Gate = std::variant<RotationGate, PhaseGate>;

struct GateSchedule {
    size_t dim = 1;
    std::vector<Gate> gates;

    friend bool operator==(const GateSchedule &, const GateSchedule &) = default;
};

/// Reads the chain parameters off gauge-form coefficients. Rows whose
/// weight is at or below tol.pivot get all-zero branch parameters.
CircuitParameters extract_parameters(const CoefficientMatrix &c, const ToleranceConfig &tol = {});

enum class SimulationMode { Product, Gates };

/// Output state for input |0>|0>. Product mode multiplies the closed-form
/// chain factors; gate mode runs schedule_from_parameters().
PureState simulate_circuit(const CircuitParameters &params, SimulationMode mode = SimulationMode::Product);

/// Weight rotations on the ancilla, then for each branch its Givens chain
/// and phases, all controlled on that branch's ancilla value.
GateSchedule schedule_from_parameters(const CircuitParameters &params);

/// Applies the gates in order to |0>|0> over a dim x dim register pair.
PureState apply_schedule(const GateSchedule &schedule);

/// C00 = cos a cos t e^{i p}, C01 = cos a sin t, C10 = sin a, C11 = 0.
CoefficientMatrix invert_qubit(const CircuitParameters &params);

/// Maps a real angle into [0, 2 pi).
double wrap_phase(double phi);

}  // namespace qpurify
