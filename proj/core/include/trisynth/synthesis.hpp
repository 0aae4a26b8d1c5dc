/** \file
 * The compiler proper: recursive CSD synthesis into structured gates,
 * lowering of singly-controlled structured gates to Muthukrishnan–Stroud +
 * shift sequences, and circuit verification.
 */
#pragma once

#include "trisynth/circuit.hpp"
#include "trisynth/csd.hpp"

namespace trisynth {

enum class LoweringLevel { structured, elementary };

struct SynthesisOptions {
    /// Drop MS gates whose payload is the identity (within 1e-14); shifts are
    /// retained so the sequence semantics are unchanged.
    bool skip_identity_blocks = false;
};

struct LowerReport {
    /// Gates with ≥ 2 controls left intact (no elementary expansion exists for them).
    std::size_t multi_control_retained = 0;
};

/**
 * Decompose a 3ⁿ-dim unitary (n ≥ 1) into a circuit of UniformlyControlledGate
 * (single-qutrit targets), UniformlyControlledRotation, and — for n = 1 — a
 * lone SingleQutrit gate. The output contains exactly 4ⁿ⁻¹ multiplexers and
 * 4ⁿ⁻¹ − 1 rotations, in the axis pattern 12, 01, 12 per recursion level.
 */
Circuit synthesize_structured(const CMatrix& w);

/**
 * Expand a one-control multiplexer into the seven-gate sequence
 *   +2 on control, MS(table[0]), +1, +1, MS(table[1]), +2, MS(table[2])
 * (3 MS + 4 shifts; the net control shift is 0 mod 3).
 */
std::vector<Gate> lower_ucg_single_control(const UniformlyControlledGate& g,
                                           const SynthesisOptions& opts = {});

/// Same shift/MS pattern with rotation payloads R01(θ_i) or R12(θ_i).
std::vector<Gate> lower_ucr_single_control(const UniformlyControlledRotation& g,
                                           const SynthesisOptions& opts = {});

/**
 * Pass driver. At `elementary`, every one-control structured gate is expanded;
 * SingleQutrit and MSControlled pass through; gates with ≥ 2 controls are kept
 * and counted in the report. At `structured` the circuit is returned as is.
 */
Circuit lower_circuit(const Circuit& c, LoweringLevel level,
                      const SynthesisOptions& opts = {},
                      LowerReport* report = nullptr);

struct VerifyReport {
    double residual = 0.0;
    bool pass = false;
};

/// residual = ‖circuit_to_matrix(c) − w‖_F; pass iff residual ≤ tol.
VerifyReport verify(const Circuit& c, const CMatrix& w, double tol);

}  // namespace trisynth
