#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpurify/bloch.hpp"
#include "qpurify/circuit.hpp"
#include "qpurify/core.hpp"

namespace qpurify {

/// Shortest decimal that parses back to the same double; -0 prints as 0.
/// Throws BadRange for non-finite values.
std::string format_double(double v);

/// Deterministic JSON text: keys in insertion order, two-space indent, arrays
/// of scalars (or of scalar arrays) on one line, floats via format_double,
/// trailing newline.
std::string canonical_dump(const nlohmann::ordered_json &j);

// Density matrix file: {"d", "n", "matrix": N rows of [re, im] pairs}.
nlohmann::ordered_json density_to_json(const DensityMatrix &rho);
/// Parses and validates; malformed documents throw ParseError.
DensityMatrix density_from_json(const nlohmann::json &j, const ToleranceConfig &tol = {});

// Pure state file: {"ancilla_dim", "system_dim", "amplitudes": [[re, im], ...]}.
nlohmann::ordered_json state_to_json(const PureState &state);
PureState state_from_json(const nlohmann::json &j, const ToleranceConfig &tol = {});

// Coefficient file: {"N", "coefficients": N rows of [re, im] pairs}.
nlohmann::ordered_json coefficients_to_json(const CoefficientMatrix &c);
CoefficientMatrix coefficients_from_json(const nlohmann::json &j);

struct CircuitFile {
    size_t d = 2;
    size_t n = 1;
    CircuitParameters parameters;
    GateSchedule schedule;
};

/// {"N", "d", "n", "parameters": {"weight_angles", "branches": [{"dim",
/// "angles", "phases"}]}, "schedule": [{"gate": "rotation"|"phase",
/// "control_value": int|null, "subspace": [a, b] | "basis": i, "value"}]}
nlohmann::ordered_json circuit_to_json(const CircuitFile &file);
CircuitFile circuit_from_json(const nlohmann::json &j);

/// Header `alpha,theta,phi,X,Y,Z`, one row per sample.
std::string bloch_csv(const std::vector<BlochSample> &samples);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);
/// Reads and parses JSON; IO and syntax failures throw ParseError.
nlohmann::json read_json_file(const std::filesystem::path &path);

}  // namespace qpurify
