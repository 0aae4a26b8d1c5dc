/** \file
 * Circuits over n qutrit wires, their exact matrix semantics, a gate-by-gate
 * statevector simulator, and gate counting.
 */
#pragma once

#include <cstddef>

#include "trisynth/gates.hpp"
#include "trisynth/matrix.hpp"

namespace trisynth {

/// Ordered gate list; gates[0] acts first.
struct Circuit {
    unsigned qutrits = 0;
    std::vector<Gate> gates;
};

/// Throws DimensionError on out-of-range, duplicate, or size-inconsistent wires.
void validate_gate(const Gate& g, unsigned qutrits);

/// Full 3ⁿ×3ⁿ matrix of a single gate embedded per the wire-ordering convention.
CMatrix gate_to_matrix(const Gate& g, unsigned qutrits);

/**
 * Full matrix of the circuit: the product of the gate matrices in reverse
 * list order (gates[0] is applied first, so it sits rightmost).
 */
CMatrix circuit_to_matrix(const Circuit& c);

/// Apply one gate to a statevector in place, without building the full matrix.
void apply_in_place(const Gate& g, unsigned qutrits, CVector& amplitudes);

/// Run the whole circuit on a state; dim must be 3^qutrits.
StateVector apply(const Circuit& c, const StateVector& s);

struct GateCounts {
    std::size_t single_qutrit = 0;
    std::size_t ms_controlled = 0;
    std::size_t ucg = 0;
    std::size_t ucr = 0;
    // sub-counts of single_qutrit
    std::size_t shift = 0;     // exactly Shift(+1) or Shift(+2)
    std::size_t rotation = 0;  // exactly R01(θ) or R12(θ) for some θ

    std::size_t total() const { return single_qutrit + ms_controlled + ucg + ucr; }
};

GateCounts gate_counts(const Circuit& c);

}  // namespace trisynth
