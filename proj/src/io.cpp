#include "qpurify/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qpurify {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename F>
auto parsing(const char *what, F &&body) -> decltype(body()) {
    try {
        return body();
    } catch (const json::exception &e) {
        throw Error(ErrorKind::ParseError, std::string(what) + ": " + e.what());
    }
}

ordered_json complex_json(const Complex &z) {
    return ordered_json::array({z.real(), z.imag()});
}

Complex complex_from(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorKind::ParseError, "complex entries must be [re, im] number pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json matrix_json(const CMatrix &m) {
    ordered_json rows = ordered_json::array();
    for (size_t r = 0; r < m.rows(); r++) {
        ordered_json row = ordered_json::array();
        for (size_t c = 0; c < m.cols(); c++) {
            row.push_back(complex_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from(const json &j) {
    if (!j.is_array()) {
        throw Error(ErrorKind::ParseError, "matrix must be an array of rows");
    }
    std::vector<std::vector<Complex>> rows;
    for (const auto &row : j) {
        if (!row.is_array()) {
            throw Error(ErrorKind::ParseError, "matrix rows must be arrays");
        }
        std::vector<Complex> parsed;
        for (const auto &z : row) {
            parsed.push_back(complex_from(z));
        }
        rows.push_back(std::move(parsed));
    }
    return CMatrix::from_rows(rows);
}

size_t size_field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_unsigned()) {
        throw Error(ErrorKind::ParseError, std::string("missing or non-integer field \"") + key + "\"");
    }
    return j.at(key).get<size_t>();
}

std::vector<double> doubles_from(const json &j, const char *what) {
    if (!j.is_array()) {
        throw Error(ErrorKind::ParseError, std::string(what) + " must be an array");
    }
    std::vector<double> out;
    for (const auto &v : j) {
        if (!v.is_number()) {
            throw Error(ErrorKind::ParseError, std::string(what) + " must hold numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

bool is_scalar(const ordered_json &j) {
    return !j.is_array() && !j.is_object();
}

bool inline_array(const ordered_json &j) {
    for (const auto &e : j) {
        if (e.is_object()) {
            return false;
        }
        if (e.is_array()) {
            for (const auto &inner : e) {
                if (!is_scalar(inner)) {
                    return false;
                }
            }
        }
    }
    return true;
}

void emit(const ordered_json &j, size_t indent, std::string &out) {
    switch (j.type()) {
        case ordered_json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (inline_array(j)) {
                out += '[';
                bool first = true;
                for (const auto &e : j) {
                    if (!first) {
                        out += ", ";
                    }
                    first = false;
                    emit(e, indent, out);
                }
                out += ']';
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto &e : j) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out.append(indent + 2, ' ');
                emit(e, indent + 2, out);
            }
            out += '\n';
            out.append(indent, ' ');
            out += ']';
            return;
        }
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto &[key, value] : j.items()) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out.append(indent + 2, ' ');
                out += ordered_json(key).dump();
                out += ": ";
                emit(value, indent + 2, out);
            }
            out += '\n';
            out.append(indent, ' ');
            out += '}';
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::BadRange, "cannot serialize a non-finite number");
    }
    if (v == 0) {
        v = 0.0;
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string canonical_dump(const ordered_json &j) {
    std::string out;
    emit(j, 0, out);
    out += '\n';
    return out;
}

ordered_json density_to_json(const DensityMatrix &rho) {
    ordered_json j;
    j["d"] = rho.shape().d();
    j["n"] = rho.shape().n();
    j["matrix"] = matrix_json(rho.matrix());
    return j;
}

DensityMatrix density_from_json(const json &j, const ToleranceConfig &tol) {
    QuditShape shape(size_field(j, "d"), size_field(j, "n"));
    if (!j.contains("matrix")) {
        throw Error(ErrorKind::ParseError, "missing field \"matrix\"");
    }
    CMatrix m = parsing("matrix", [&] { return matrix_from(j.at("matrix")); });
    return validate_density(m, shape, tol);
}

ordered_json state_to_json(const PureState &state) {
    ordered_json amps = ordered_json::array();
    for (const auto &z : state.amplitudes()) {
        amps.push_back(complex_json(z));
    }
    ordered_json j;
    j["ancilla_dim"] = state.ancilla_dim();
    j["system_dim"] = state.system_dim();
    j["amplitudes"] = std::move(amps);
    return j;
}

PureState state_from_json(const json &j, const ToleranceConfig &tol) {
    size_t m = size_field(j, "ancilla_dim");
    size_t n = size_field(j, "system_dim");
    if (!j.contains("amplitudes") || !j.at("amplitudes").is_array()) {
        throw Error(ErrorKind::ParseError, "missing array \"amplitudes\"");
    }
    std::vector<Complex> amps;
    for (const auto &z : j.at("amplitudes")) {
        amps.push_back(complex_from(z));
    }
    return PureState(m, n, std::move(amps), tol.norm);
}

ordered_json coefficients_to_json(const CoefficientMatrix &c) {
    ordered_json j;
    j["N"] = c.dimension();
    j["coefficients"] = matrix_json(c.matrix());
    return j;
}

CoefficientMatrix coefficients_from_json(const json &j) {
    size_t n = size_field(j, "N");
    if (!j.contains("coefficients")) {
        throw Error(ErrorKind::ParseError, "missing field \"coefficients\"");
    }
    CMatrix c = parsing("coefficients", [&] { return matrix_from(j.at("coefficients")); });
    if (c.rows() != n || c.cols() != n) {
        throw Error(ErrorKind::ShapeMismatch, "coefficient matrix is not " + std::to_string(n) + "x" +
                                                  std::to_string(n));
    }
    return CoefficientMatrix(std::move(c));
}

ordered_json circuit_to_json(const CircuitFile &file) {
    ordered_json params;
    params["weight_angles"] = file.parameters.weight_angles;
    ordered_json branches = ordered_json::array();
    for (const auto &b : file.parameters.branches) {
        ordered_json bj;
        bj["dim"] = b.dim;
        bj["angles"] = b.angles;
        bj["phases"] = b.phases;
        branches.push_back(std::move(bj));
    }
    params["branches"] = std::move(branches);

    ordered_json gates = ordered_json::array();
    for (const Gate &gate : file.schedule.gates) {
        ordered_json g;
        if (const auto *rot = std::get_if<RotationGate>(&gate)) {
            g["gate"] = "rotation";
            g["control_value"] = rot->control ? ordered_json(*rot->control) : ordered_json(nullptr);
            g["subspace"] = ordered_json::array({rot->a, rot->b});
            g["value"] = rot->angle;
        } else {
            const auto &ph = std::get<PhaseGate>(gate);
            g["gate"] = "phase";
            g["control_value"] = ph.control ? ordered_json(*ph.control) : ordered_json(nullptr);
            g["basis"] = ph.basis;
            g["value"] = ph.phase;
        }
        gates.push_back(std::move(g));
    }

    ordered_json j;
    j["N"] = file.parameters.dim;
    j["d"] = file.d;
    j["n"] = file.n;
    j["parameters"] = std::move(params);
    j["schedule"] = std::move(gates);
    return j;
}

CircuitFile circuit_from_json(const json &j) {
    CircuitFile file;
    size_t dim = size_field(j, "N");
    file.d = size_field(j, "d");
    file.n = size_field(j, "n");
    if (QuditShape(file.d, file.n).dimension() != dim) {
        throw Error(ErrorKind::ShapeMismatch, "N != d^n in circuit file");
    }

    return parsing("circuit", [&] {
        const json &pj = j.at("parameters");
        file.parameters.dim = dim;
        file.parameters.weight_angles = doubles_from(pj.at("weight_angles"), "weight_angles");
        for (const auto &bj : pj.at("branches")) {
            file.parameters.branches.push_back(BranchParameters{size_field(bj, "dim"),
                                                                doubles_from(bj.at("angles"), "angles"),
                                                                doubles_from(bj.at("phases"), "phases")});
        }
        file.parameters.validate();

        file.schedule.dim = dim;
        for (const auto &g : j.at("schedule")) {
            const json &cv = g.at("control_value");
            std::optional<size_t> control;
            if (!cv.is_null()) {
                control = cv.get<size_t>();
            }
            const json &value = g.at("value");
            if (!value.is_number()) {
                throw Error(ErrorKind::ParseError, "gate value must be a number");
            }
            std::string kind = g.at("gate").get<std::string>();
            if (kind == "rotation") {
                const json &sub = g.at("subspace");
                if (!sub.is_array() || sub.size() != 2) {
                    throw Error(ErrorKind::ParseError, "rotation subspace must be [a, b]");
                }
                file.schedule.gates.push_back(
                    RotationGate{control, sub[0].get<size_t>(), sub[1].get<size_t>(), value.get<double>()});
            } else if (kind == "phase") {
                file.schedule.gates.push_back(PhaseGate{control, g.at("basis").get<size_t>(), value.get<double>()});
            } else {
                throw Error(ErrorKind::ParseError, "unknown gate kind \"" + kind + "\"");
            }
        }
        return file;
    });
}

std::string bloch_csv(const std::vector<BlochSample> &samples) {
    std::string out = "alpha,theta,phi,X,Y,Z\n";
    for (const auto &s : samples) {
        for (double v : {s.alpha, s.theta, s.phi, s.point.x, s.point.y}) {
            out += format_double(v);
            out += ',';
        }
        out += format_double(s.point.z);
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw Error(ErrorKind::ParseError, "cannot write " + path.string());
    }
}

json read_json_file(const std::filesystem::path &path) {
    std::string text = read_text_file(path);
    return parsing(path.string().c_str(), [&] { return json::parse(text); });
}

}  // namespace qpurify
