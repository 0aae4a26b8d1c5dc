#include "trisynth/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace trisynth {

namespace {

using json = nlohmann::ordered_json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError(where + ": expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix3 matrix3_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw FormatError(where + ": expected a 3x3 matrix");
    Matrix3 m;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3) {
            throw FormatError(where + ": expected a 3x3 matrix");
        }
        for (int k = 0; k < 3; ++k) {
            m(i, k) = complex_from_json(j[i][k], where + "[" + std::to_string(i) + "][" +
                                                     std::to_string(k) + "]");
        }
    }
    return m;
}

unsigned get_uint(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw FormatError(where + ": missing or non-integer \"" + key + "\"");
    }
    return j[key].get<unsigned>();
}

std::vector<Wire> wires_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw FormatError(where + ": expected an array of wire indices");
    std::vector<Wire> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number_unsigned()) throw FormatError(where + ": wires must be nonnegative integers");
        out.push_back(e.get<Wire>());
    }
    return out;
}

json gate_to_json(const Gate& g) {
    return std::visit(
        [](const auto& gate) -> json {
            using T = std::decay_t<decltype(gate)>;
            json j;
            if constexpr (std::is_same_v<T, SingleQutrit>) {
                j["kind"] = "single";
                j["wire"] = gate.wire;
                j["matrix"] = matrix_to_json(gate.u);
            } else if constexpr (std::is_same_v<T, MSControlled>) {
                j["kind"] = "ms";
                j["control"] = gate.control;
                j["target"] = gate.target;
                j["matrix"] = matrix_to_json(gate.u);
            } else if constexpr (std::is_same_v<T, UniformlyControlledGate>) {
                j["kind"] = "ucg";
                j["controls"] = gate.controls;
                j["target"] = gate.target;
                json table = json::array();
                for (const Matrix3& u : gate.table) table.push_back(matrix_to_json(u));
                j["table"] = std::move(table);
            } else {
                j["kind"] = "ucr";
                j["controls"] = gate.controls;
                j["target"] = gate.target;
                j["axis"] = gate.axis == RotationAxis::R01 ? "01" : "12";
                j["angles"] = gate.angles;
            }
            return j;
        },
        g);
}

Gate gate_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw FormatError(where + ": expected a gate object");
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw FormatError(where + ": missing \"kind\"");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "single") {
        SingleQutrit g;
        g.wire = get_uint(j, "wire", where);
        g.u = matrix3_from_json(j.value("matrix", json()), where + ".matrix");
        return g;
    }
    if (kind == "ms") {
        MSControlled g;
        g.control = get_uint(j, "control", where);
        g.target = get_uint(j, "target", where);
        g.u = matrix3_from_json(j.value("matrix", json()), where + ".matrix");
        return g;
    }
    if (kind == "ucg") {
        UniformlyControlledGate g;
        g.controls = wires_from_json(j.value("controls", json()), where + ".controls");
        g.target = get_uint(j, "target", where);
        const json& table = j.value("table", json());
        if (!table.is_array()) throw FormatError(where + ": missing \"table\"");
        for (std::size_t i = 0; i < table.size(); ++i) {
            g.table.push_back(
                matrix3_from_json(table[i], where + ".table[" + std::to_string(i) + "]"));
        }
        return g;
    }
    if (kind == "ucr") {
        UniformlyControlledRotation g;
        g.controls = wires_from_json(j.value("controls", json()), where + ".controls");
        g.target = get_uint(j, "target", where);
        const json& axis = j.value("axis", json());
        if (!axis.is_string() || (axis != "01" && axis != "12")) {
            throw FormatError(where + ": \"axis\" must be \"01\" or \"12\"");
        }
        g.axis = axis == "01" ? RotationAxis::R01 : RotationAxis::R12;
        const json& angles = j.value("angles", json());
        if (!angles.is_array()) throw FormatError(where + ": missing \"angles\"");
        for (const auto& a : angles) {
            if (!a.is_number()) throw FormatError(where + ": angles must be numbers");
            g.angles.push_back(a.get<double>());
        }
        return g;
    }
    throw FormatError(where + ": unknown gate kind \"" + kind + "\"");
}

json parse(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

int log3_or_minus_one(Index dim) {
    if (dim < 1) return -1;
    int n = 0;
    Index v = dim;
    while (v % 3 == 0) {
        v /= 3;
        ++n;
    }
    return v == 1 ? n : -1;
}

// Hard cap on register width for file input; keeps 3^n arithmetic far from
// overflow and rejects absurd allocations with a diagnostic instead of OOM.
constexpr unsigned kMaxQutrits = 12;

void check_qutrit_count(unsigned qutrits, const char* what) {
    if (qutrits > kMaxQutrits) {
        throw FormatError(std::string(what) + ": " + std::to_string(qutrits) +
                          " qutrits exceeds the supported maximum of " +
                          std::to_string(kMaxQutrits));
    }
}

}  // namespace

std::string serialize(const Circuit& c) {
    json j;
    j["qutrits"] = c.qutrits;
    json gates = json::array();
    for (const Gate& g : c.gates) gates.push_back(gate_to_json(g));
    j["gates"] = std::move(gates);
    return j.dump(2) + "\n";
}

Circuit deserialize(const std::string& text) {
    const json j = parse(text, "circuit");
    if (!j.is_object()) throw FormatError("circuit: expected a JSON object");
    Circuit c;
    c.qutrits = get_uint(j, "qutrits", "circuit");
    if (c.qutrits < 1) throw FormatError("circuit: \"qutrits\" must be at least 1");
    check_qutrit_count(c.qutrits, "circuit");
    if (!j.contains("gates") || !j["gates"].is_array()) {
        throw FormatError("circuit: missing \"gates\" array");
    }
    const json& gates = j["gates"];
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string where = "gates[" + std::to_string(i) + "]";
        Gate g = gate_from_json(gates[i], where);
        try {
            validate_gate(g, c.qutrits);
        } catch (const Error& e) {
            throw FormatError(where + ": " + e.what());
        }
        c.gates.push_back(std::move(g));
    }
    return c;
}

std::string write_unitary_json(const CMatrix& m, unsigned qutrits) {
    json j;
    j["qutrits"] = qutrits;
    j["dim"] = m.rows();
    j["matrix"] = matrix_to_json(m);
    return j.dump(2) + "\n";
}

UnitaryFile read_unitary_json(const std::string& text) {
    const json j = parse(text, "unitary file");
    if (!j.is_object()) throw FormatError("unitary file: expected a JSON object");
    const unsigned qutrits = get_uint(j, "qutrits", "unitary file");
    if (qutrits < 1) throw FormatError("unitary file: \"qutrits\" must be at least 1");
    check_qutrit_count(qutrits, "unitary file");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned()) {
        throw FormatError("unitary file: missing \"dim\"");
    }
    const auto dim = j["dim"].get<Index>();
    if (!j.contains("matrix") || !j["matrix"].is_array()) {
        throw FormatError("unitary file: missing \"matrix\"");
    }
    const json& rows = j["matrix"];
    if (static_cast<Index>(rows.size()) != dim) {
        throw FormatError("unitary file: \"dim\" is " + std::to_string(dim) + " but matrix has " +
                          std::to_string(rows.size()) + " rows");
    }
    CMatrix m(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
            throw FormatError("unitary file: matrix row " + std::to_string(i) +
                              " is not length " + std::to_string(dim));
        }
        for (Index k = 0; k < dim; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)],
                                        "unitary file: matrix[" + std::to_string(i) + "][" +
                                            std::to_string(k) + "]");
        }
    }
    const int n = log3_or_minus_one(dim);
    if (n < 0) {
        throw DimensionError("unitary file: dimension " + std::to_string(dim) +
                             " is not a power of 3");
    }
    if (pow3(qutrits) != dim) {
        throw FormatError("unitary file: dim " + std::to_string(dim) + " does not equal 3^" +
                          std::to_string(qutrits));
    }
    require_unitary(m, "unitary file");
    return {qutrits, std::move(m)};
}

std::string write_state_json(const StateVector& s) {
    json j;
    j["dim"] = s.dim();
    json amps = json::array();
    for (Index i = 0; i < s.dim(); ++i) amps.push_back(complex_to_json(s.amplitudes(i)));
    j["amplitudes"] = std::move(amps);
    return j.dump(2) + "\n";
}

StateVector read_state_json(const std::string& text) {
    const json j = parse(text, "state file");
    if (!j.is_object()) throw FormatError("state file: expected a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned()) {
        throw FormatError("state file: missing \"dim\"");
    }
    const auto dim = j["dim"].get<Index>();
    if (dim < 1) throw FormatError("state file: \"dim\" must be positive");
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array() ||
        static_cast<Index>(j["amplitudes"].size()) != dim) {
        throw FormatError("state file: \"amplitudes\" must be an array of length dim");
    }
    CVector v(dim);
    for (Index i = 0; i < dim; ++i) {
        v(i) = complex_from_json(j["amplitudes"][static_cast<std::size_t>(i)],
                                 "state file: amplitudes[" + std::to_string(i) + "]");
    }
    StateVector s(std::move(v));
    const double sq = s.norm() * s.norm();
    if (std::abs(sq - 1.0) > 1e-6) {
        throw FormatError("state file: squared norm is " + std::to_string(sq) +
                          ", expected 1 within 1e-6");
    }
    s.normalize();
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open file for writing: " + path);
    out << contents;
    if (!out) throw FormatError("write failed: " + path);
}

}  // namespace trisynth
