/** \file
 * Gate-level IR: the gate variants and their 3×3 building blocks.
 *
 * Wire 0 is the topmost/highest-order qutrit: a product basis state with
 * digit v_j on wire j has index Σ_j v_j · 3^(n−1−j).
 */
#pragma once

#include <variant>
#include <vector>

#include "trisynth/types.hpp"

namespace trisynth {

using Wire = unsigned;

/// Plane a rotation acts in: {|0⟩,|1⟩} or {|1⟩,|2⟩}.
enum class RotationAxis { R01, R12 };

/// Cyclic shift |v⟩ → |v + amount mod 3⟩ as a 3×3 permutation matrix.
Matrix3 shift_matrix(int amount);

/// R01(θ) = [[c,−s,0],[s,c,0],[0,0,1]] or R12(θ) = [[1,0,0],[0,c,−s],[0,s,c]].
Matrix3 rotation_matrix(RotationAxis axis, double theta);

/// Arbitrary one-qutrit unitary on a single wire.
struct SingleQutrit {
    Wire wire;
    Matrix3 u;
};

/**
 * Muthukrishnan–Stroud two-qutrit gate: applies u to the target iff the
 * control carries |2⟩, and is the identity otherwise.
 */
struct MSControlled {
    Wire control;
    Wire target;
    Matrix3 u;
};

/**
 * Ternary multiplexer over k controls: the joint control value selects which
 * of the 3^k table entries acts on the target. Control strings are indexed
 * with the first listed control as the most significant digit.
 */
struct UniformlyControlledGate {
    std::vector<Wire> controls;
    Wire target;
    std::vector<Matrix3> table;  // size 3^k
};

/// Rotation on the target whose angle is selected by the joint control value.
struct UniformlyControlledRotation {
    std::vector<Wire> controls;
    Wire target;
    RotationAxis axis;
    std::vector<double> angles;  // size 3^k, radians
};

using Gate = std::variant<SingleQutrit, MSControlled, UniformlyControlledGate,
                          UniformlyControlledRotation>;

/// 3^k for small k.
Index pow3(unsigned k);

}  // namespace trisynth
