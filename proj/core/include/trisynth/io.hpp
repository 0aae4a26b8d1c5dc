/** \file
 * JSON serialization: circuits, unitary files, and statevector files.
 *
 * Circuit schema:
 *   {"qutrits": n, "gates": [{"kind": "single"|"ms"|"ucg"|"ucr", ...}]}
 *   "single": {wire, matrix}          "ms":  {control, target, matrix}
 *   "ucg":    {controls, target, table}  "ucr": {controls, target, axis, angles}
 * 3×3 matrices are [[ [re,im] ×3 ] ×3] row-major; angles are radians.
 *
 * Unitary file: {"qutrits": n, "dim": 3^n, "matrix": [[[re,im],...],...]} row-major.
 * Statevector file: {"dim": d, "amplitudes": [[re,im],...]}.
 */
#pragma once

#include <string>

#include "trisynth/circuit.hpp"
#include "trisynth/matrix.hpp"

namespace trisynth {

/// Deterministic, bit-exact re-serializable circuit JSON (trailing newline included).
std::string serialize(const Circuit& c);

/// Throws FormatError with positional diagnostics on malformed input.
Circuit deserialize(const std::string& text);

struct UnitaryFile {
    unsigned qutrits = 0;
    CMatrix matrix;
};

std::string write_unitary_json(const CMatrix& m, unsigned qutrits);

/**
 * Parses and validates a unitary file. Distinct failures throw distinct
 * types: FormatError (malformed JSON / schema / inconsistent header),
 * DimensionError (dimension not a power of 3), UnitarityError (the matrix
 * fails ‖M†M−I‖_F ≤ tol·dim; the defect is reported).
 */
UnitaryFile read_unitary_json(const std::string& text);

std::string write_state_json(const StateVector& s);
StateVector read_state_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace trisynth
