#include "trisynth/circuit.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <type_traits>

namespace trisynth {

Index pow3(unsigned k) {
    Index v = 1;
    for (unsigned i = 0; i < k; ++i) v *= 3;
    return v;
}

Matrix3 shift_matrix(int amount) {
    const int a = ((amount % 3) + 3) % 3;
    Matrix3 m = Matrix3::Zero();
    for (int v = 0; v < 3; ++v) m((v + a) % 3, v) = Complex(1.0, 0.0);
    return m;
}

Matrix3 rotation_matrix(RotationAxis axis, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Matrix3 m = Matrix3::Identity();
    if (axis == RotationAxis::R01) {
        m(0, 0) = c;
        m(0, 1) = -s;
        m(1, 0) = s;
        m(1, 1) = c;
    } else {
        m(1, 1) = c;
        m(1, 2) = -s;
        m(2, 1) = s;
        m(2, 2) = c;
    }
    return m;
}

namespace {

void check_wire(Wire w, unsigned n, const char* what) {
    if (w >= n) {
        throw DimensionError(std::string(what) + ": wire " + std::to_string(w) +
                             " out of range for " + std::to_string(n) + " qutrits");
    }
}

void check_controls(const std::vector<Wire>& controls, Wire target, unsigned n,
                    std::size_t table_size, const char* what) {
    check_wire(target, n, what);
    for (std::size_t i = 0; i < controls.size(); ++i) {
        check_wire(controls[i], n, what);
        if (controls[i] == target) {
            throw DimensionError(std::string(what) + ": control coincides with target wire " +
                                 std::to_string(target));
        }
        for (std::size_t j = i + 1; j < controls.size(); ++j) {
            if (controls[i] == controls[j]) {
                throw DimensionError(std::string(what) + ": duplicate control wire " +
                                     std::to_string(controls[i]));
            }
        }
    }
    const auto expected = static_cast<std::size_t>(pow3(static_cast<unsigned>(controls.size())));
    if (table_size != expected) {
        throw DimensionError(std::string(what) + ": expected 3^" +
                             std::to_string(controls.size()) + " = " + std::to_string(expected) +
                             " entries, got " + std::to_string(table_size));
    }
}

void check_payload(const Matrix3& u, const char* what) {
    require_unitary(u, what, tolerances().unitarity);
}

inline int digit_of(Index index, Wire wire, unsigned n) {
    return static_cast<int>((index / pow3(n - 1 - wire)) % 3);
}

// Control-string value of a basis index: first listed control is the most
// significant ternary digit.
inline Index control_value(Index index, const std::vector<Wire>& controls, unsigned n) {
    Index v = 0;
    for (Wire c : controls) v = v * 3 + digit_of(index, c, n);
    return v;
}

// Every gate variant is a control-selected 3x3 payload on one target wire;
// Body receives (base index with target digit 0, target stride, payload).
template <typename PayloadFn, typename Body>
void for_each_target_triple(unsigned n, Wire target, PayloadFn&& payload_for, Body&& body) {
    const Index dim = pow3(n);
    const Index stride = pow3(n - 1 - target);
    for (Index hi = 0; hi < dim; hi += 3 * stride) {
        for (Index lo = 0; lo < stride; ++lo) {
            const Index base = hi + lo;
            body(base, stride, payload_for(base));
        }
    }
}

struct TargetPayload {
    Wire target;
    // payload as a function of a basis index whose target digit is 0
    std::function<Matrix3(Index)> select;
};

TargetPayload resolve(const Gate& g, unsigned n) {
    return std::visit(
        [n](const auto& gate) -> TargetPayload {
            using T = std::decay_t<decltype(gate)>;
            if constexpr (std::is_same_v<T, SingleQutrit>) {
                return {gate.wire, [u = gate.u](Index) { return u; }};
            } else if constexpr (std::is_same_v<T, MSControlled>) {
                return {gate.target, [&gate, n](Index base) {
                            return digit_of(base, gate.control, n) == 2 ? gate.u
                                                                        : Matrix3(Matrix3::Identity());
                        }};
            } else if constexpr (std::is_same_v<T, UniformlyControlledGate>) {
                return {gate.target, [&gate, n](Index base) {
                            return gate.table[static_cast<std::size_t>(
                                control_value(base, gate.controls, n))];
                        }};
            } else {
                return {gate.target, [&gate, n](Index base) {
                            const auto k = static_cast<std::size_t>(
                                control_value(base, gate.controls, n));
                            return rotation_matrix(gate.axis, gate.angles[k]);
                        }};
            }
        },
        g);
}

}  // namespace

void validate_gate(const Gate& g, unsigned qutrits) {
    std::visit(
        [qutrits](const auto& gate) {
            using T = std::decay_t<decltype(gate)>;
            if constexpr (std::is_same_v<T, SingleQutrit>) {
                check_wire(gate.wire, qutrits, "SingleQutrit");
                check_payload(gate.u, "SingleQutrit");
            } else if constexpr (std::is_same_v<T, MSControlled>) {
                check_controls({gate.control}, gate.target, qutrits, 3, "MSControlled");
                check_payload(gate.u, "MSControlled");
            } else if constexpr (std::is_same_v<T, UniformlyControlledGate>) {
                check_controls(gate.controls, gate.target, qutrits, gate.table.size(),
                               "UniformlyControlledGate");
                for (const Matrix3& u : gate.table) check_payload(u, "UniformlyControlledGate");
            } else {
                check_controls(gate.controls, gate.target, qutrits, gate.angles.size(),
                               "UniformlyControlledRotation");
            }
        },
        g);
}

CMatrix gate_to_matrix(const Gate& g, unsigned qutrits) {
    validate_gate(g, qutrits);
    const Index dim = pow3(qutrits);
    CMatrix out = CMatrix::Zero(dim, dim);
    TargetPayload tp = resolve(g, qutrits);
    for_each_target_triple(qutrits, tp.target, tp.select,
                           [&out](Index base, Index stride, const Matrix3& p) {
                               const Index idx[3] = {base, base + stride, base + 2 * stride};
                               for (int a = 0; a < 3; ++a) {
                                   for (int b = 0; b < 3; ++b) {
                                       out(idx[a], idx[b]) = p(a, b);
                                   }
                               }
                           });
    return out;
}

CMatrix circuit_to_matrix(const Circuit& c) {
    const Index dim = pow3(c.qutrits);
    CMatrix m = CMatrix::Identity(dim, dim);
    for (const Gate& g : c.gates) {
        m = gate_to_matrix(g, c.qutrits) * m;
    }
    return m;
}

void apply_in_place(const Gate& g, unsigned qutrits, CVector& amplitudes) {
    validate_gate(g, qutrits);
    if (amplitudes.size() != pow3(qutrits)) {
        throw DimensionError("apply: state dimension " + std::to_string(amplitudes.size()) +
                             " does not match " + std::to_string(qutrits) + " qutrits");
    }
    TargetPayload tp = resolve(g, qutrits);
    for_each_target_triple(qutrits, tp.target, tp.select,
                           [&amplitudes](Index base, Index stride, const Matrix3& p) {
                               const Complex a0 = amplitudes(base);
                               const Complex a1 = amplitudes(base + stride);
                               const Complex a2 = amplitudes(base + 2 * stride);
                               amplitudes(base) = p(0, 0) * a0 + p(0, 1) * a1 + p(0, 2) * a2;
                               amplitudes(base + stride) = p(1, 0) * a0 + p(1, 1) * a1 + p(1, 2) * a2;
                               amplitudes(base + 2 * stride) = p(2, 0) * a0 + p(2, 1) * a1 + p(2, 2) * a2;
                           });
}

StateVector apply(const Circuit& c, const StateVector& s) {
    if (s.dim() != pow3(c.qutrits)) {
        throw DimensionError("apply: state dimension " + std::to_string(s.dim()) +
                             " does not match " + std::to_string(c.qutrits) + " qutrits");
    }
    StateVector out = s;
    for (const Gate& g : c.gates) {
        apply_in_place(g, c.qutrits, out.amplitudes);
    }
    return out;
}

namespace {

bool exactly_equal(const Matrix3& a, const Matrix3& b) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (a(i, j) != b(i, j)) return false;
        }
    }
    return true;
}

bool is_shift_gate(const Matrix3& u) {
    return exactly_equal(u, shift_matrix(1)) || exactly_equal(u, shift_matrix(2));
}

bool is_rotation_gate(const Matrix3& u) {
    constexpr double tol = 1e-12;
    if (u.imag().cwiseAbs().maxCoeff() > tol) return false;
    const Eigen::Matrix3d re = u.real();
    auto matches_plane = [&](int fixed) {
        // `fixed` is the untouched basis level: 2 for R01, 0 for R12
        const int a = (fixed == 2) ? 0 : 1;
        const int b = (fixed == 2) ? 1 : 2;
        if (std::abs(re(fixed, fixed) - 1.0) > tol) return false;
        if (std::abs(re(fixed, a)) > tol || std::abs(re(fixed, b)) > tol) return false;
        if (std::abs(re(a, fixed)) > tol || std::abs(re(b, fixed)) > tol) return false;
        if (std::abs(re(a, a) - re(b, b)) > tol) return false;
        if (std::abs(re(a, b) + re(b, a)) > tol) return false;
        return std::abs(re(a, a) * re(a, a) + re(b, a) * re(b, a) - 1.0) <= tol;
    };
    return matches_plane(2) || matches_plane(0);
}

}  // namespace

GateCounts gate_counts(const Circuit& c) {
    GateCounts counts;
    for (const Gate& g : c.gates) {
        std::visit(
            [&counts](const auto& gate) {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, SingleQutrit>) {
                    ++counts.single_qutrit;
                    if (is_shift_gate(gate.u)) {
                        ++counts.shift;
                    } else if (is_rotation_gate(gate.u)) {
                        ++counts.rotation;
                    }
                } else if constexpr (std::is_same_v<T, MSControlled>) {
                    ++counts.ms_controlled;
                } else if constexpr (std::is_same_v<T, UniformlyControlledGate>) {
                    ++counts.ucg;
                } else {
                    ++counts.ucr;
                }
            },
            g);
    }
    return counts;
}

}  // namespace trisynth
