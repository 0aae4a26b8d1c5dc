/** \file
 * Cosine-Sine Decomposition of unitary matrices, plus the ternary
 * seven-factor form used by the synthesizer.
 */
#pragma once

#include <array>
#include <vector>

#include "trisynth/matrix.hpp"
#include "trisynth/types.hpp"

namespace trisynth {

/**
 * Factors of W = diag(U1,U2) · Mid(θ) · diag(V1,V2) with
 * Mid(θ) = [[C,−S,0],[S,C,0],[0,0,I_{m−2r}]], C = diag(cos θ_i),
 * S = diag(sin θ_i). Angles are stored (ascending, in [0, π/2]); C and S are
 * always derived from them, so cos²+sin² = 1 holds identically.
 */
struct CSDFactors {
    Index r = 0;  // top-left block size
    Index m = 0;  // total size
    CMatrix u1;   // r×r
    CMatrix u2;   // (m−r)×(m−r)
    CMatrix v1;   // r×r
    CMatrix v2;   // (m−r)×(m−r)
    std::vector<double> thetas;  // r angles, ascending, radians

    Eigen::VectorXd cosines() const;
    Eigen::VectorXd sines() const;
};

/**
 * CSD of a unitary W partitioned with top-left block size r, 2r ≤ dim.
 * Deterministic for identical input. Factor non-uniqueness (clustered or
 * degenerate angles) is resolved arbitrarily but reproducibly; only the
 * reconstruction identity is contractual.
 */
CSDFactors csd_general(const CMatrix& w, Index r);

/// CSD with square blocks, r = dim/2 (dim must be even).
CSDFactors csd_square(const CMatrix& w);

/**
 * Seven-factor ternary form of a 3ⁿ-dimensional unitary (n ≥ 2):
 *
 *   W = D1 · MidX(sigma_x) · D2 · MidZ(mid_z) · D3 · MidX(gamma_x) · D4
 *
 * where each Di = diag(di[0], di[1], di[2]) over 3ⁿ⁻¹-dim blocks,
 * MidZ(θ) = [[C,−S,0],[S,C,0],[0,0,I]] and MidX(θ) = [[I,0,0],[0,C,−S],[0,S,C]]
 * in the same 3×3 block layout. d2[0] and d4[0] are exact identities.
 */
struct TernaryCSDFactors {
    unsigned qutrits = 0;  // n
    std::array<CMatrix, 3> d1;
    std::array<CMatrix, 3> d2;  // d2[0] == I exactly
    std::array<CMatrix, 3> d3;
    std::array<CMatrix, 3> d4;  // d4[0] == I exactly
    std::vector<double> sigma_x_thetas;  // 3ⁿ⁻¹ angles, axis 12
    std::vector<double> mid_z_thetas;    // 3ⁿ⁻¹ angles, axis 01
    std::vector<double> gamma_x_thetas;  // 3ⁿ⁻¹ angles, axis 12
};

/// Decompose a 3ⁿ-dim unitary, n ≥ 2. n = 1 is the synthesis base case and is rejected.
TernaryCSDFactors ternary_csd(const CMatrix& w);

}  // namespace trisynth
