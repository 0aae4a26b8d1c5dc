/** \file
 * Dense complex linear-algebra foundation: products, norms, unitarity checks,
 * block partitioning, Kronecker products, Haar-random unitaries and state
 * vectors.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "trisynth/types.hpp"

namespace trisynth {

/// ‖M†M − I‖_F. Zero for an exactly unitary matrix.
double unitarity_defect(const CMatrix& m);

/// True iff ‖M†M − I‖_F ≤ tol_per_dim · dim.
bool is_unitary(const CMatrix& m, double tol_per_dim);
bool is_unitary(const CMatrix& m);

/// Throws UnitarityError (with the defect) if the check fails.
void require_unitary(const CMatrix& m, const std::string& what, double tol_per_dim);
void require_unitary(const CMatrix& m, const std::string& what);

/// Matrix product with an explicit dimension check.
CMatrix multiply(const CMatrix& a, const CMatrix& b);

/// ‖A − B‖_F; throws DimensionError on shape mismatch.
double frobenius_distance(const CMatrix& a, const CMatrix& b);

/// Kronecker product; A's index is the more significant one.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/**
 * Row/column partition of a square matrix into a block grid. Splits are
 * ordered lists of positive block sizes that must sum to the matrix dims.
 */
struct BlockSpec {
    std::vector<Index> row_split;
    std::vector<Index> col_split;
};

using BlockGrid = std::vector<std::vector<CMatrix>>;

BlockGrid block_partition(const CMatrix& m, const BlockSpec& spec);

/// Inverse of block_partition; the grid rows/cols must be size-consistent.
CMatrix block_assemble(const BlockGrid& grid);

/**
 * Haar-distributed random unitary, deterministic for a fixed seed.
 *
 * Recipe: fill a dim×dim matrix with standard complex Gaussians (Box–Muller
 * over mt19937_64 draws), take its Householder QR, and absorb the phases of
 * R's diagonal into Q so the triangular factor has a positive real diagonal.
 */
CMatrix haar_random_unitary(Index dim, std::uint64_t seed);

/// Unit-norm complex amplitude vector.
struct StateVector {
    CVector amplitudes;

    StateVector() = default;
    explicit StateVector(CVector amps) : amplitudes(std::move(amps)) {}

    Index dim() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
    void normalize();

    /// Computational basis state |index⟩ of the given dimension.
    static StateVector basis(Index dim, Index index);
};

}  // namespace trisynth
