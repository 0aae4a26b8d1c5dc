#include "trisynth/csd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace trisynth {

Eigen::VectorXd CSDFactors::cosines() const {
    Eigen::VectorXd c(static_cast<Index>(thetas.size()));
    for (Index i = 0; i < c.size(); ++i) c(i) = std::cos(thetas[static_cast<std::size_t>(i)]);
    return c;
}

Eigen::VectorXd CSDFactors::sines() const {
    Eigen::VectorXd s(static_cast<Index>(thetas.size()));
    for (Index i = 0; i < s.size(); ++i) s(i) = std::sin(thetas[static_cast<std::size_t>(i)]);
    return s;
}

namespace {

std::string format_scalar(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Two-sided Jacobi is the more accurate choice for small blocks; the
// divide-and-conquer SVD is much faster once blocks grow past desk size.
// Both are deterministic.
constexpr Index kJacobiSvdLimit = 32;

struct FullSVD {
    CMatrix u;
    CMatrix v;
    Eigen::VectorXd singular_values;
};

FullSVD full_svd(const CMatrix& m) {
    if (m.rows() <= kJacobiSvdLimit) {
        Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        return {svd.matrixU(), svd.matrixV(), svd.singularValues()};
    }
    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.matrixU(), svd.matrixV(), svd.singularValues()};
}

/// Closest unitary in Frobenius norm: the polar factor X·Y† of M = X·Σ·Y†.
CMatrix polar_unitary(const CMatrix& m) {
    const FullSVD svd = full_svd(m);
    return svd.u * svd.v.adjoint();
}

// Reconstruction columns r..m-1 as a function of U1, U2 and the angles:
// A = [ -U1·S  0 ; U2·[[C,0],[0,I]] ], an m×q matrix with orthonormal columns.
CMatrix right_column_frame(const CMatrix& u1, const CMatrix& u2, const Eigen::VectorXd& cosv,
                           const Eigen::VectorXd& sinv) {
    const Index p = u1.rows();
    const Index q = u2.rows();
    CMatrix a = CMatrix::Zero(p + q, q);
    a.topLeftCorner(p, p) = -u1 * sinv.asDiagonal();
    a.bottomLeftCorner(q, p) = u2.leftCols(p) * cosv.asDiagonal();
    a.bottomRightCorner(q, q - p) = u2.rightCols(q - p);
    return a;
}

// Reconstruction columns 0..r-1: [ U1·C ; U2·[S;0] ], m×p.
CMatrix left_column_frame(const CMatrix& u1, const CMatrix& u2, const Eigen::VectorXd& cosv,
                          const Eigen::VectorXd& sinv) {
    const Index p = u1.rows();
    const Index q = u2.rows();
    CMatrix a(p + q, p);
    a.topRows(p) = u1 * cosv.asDiagonal();
    a.bottomRows(q) = u2.leftCols(p) * sinv.asDiagonal();
    return a;
}

CMatrix assemble_reconstruction(const CSDFactors& f) {
    const Eigen::VectorXd cosv = f.cosines();
    const Eigen::VectorXd sinv = f.sines();
    CMatrix out(f.m, f.m);
    out.leftCols(f.r) = left_column_frame(f.u1, f.u2, cosv, sinv) * f.v1;
    out.rightCols(f.m - f.r) = right_column_frame(f.u1, f.u2, cosv, sinv) * f.v2;
    return out;
}

}  // namespace

CSDFactors csd_general(const CMatrix& w, Index r) {
    const Index m = w.rows();
    if (w.cols() != m) {
        throw DimensionError("csd_general: matrix is not square");
    }
    if (r < 1 || 2 * r > m) {
        throw DimensionError("csd_general: partition size " + std::to_string(r) +
                             " out of range for dimension " + std::to_string(m) +
                             " (need 1 <= r and 2r <= dim)");
    }
    require_unitary(w, "csd_general");

    const Index p = r;
    const Index q = m - r;

    // Cosines from the SVD of the top-left block. Singular values descend, so
    // the angles come out (close to) ascending, the canonical order.
    const FullSVD svd = full_svd(w.topLeftCorner(p, p));
    CMatrix u1 = svd.u;
    CMatrix v1 = svd.v.adjoint();

    // The columns of Z = W21·V1† are orthogonal with norms sin θ_i, so the
    // angle is recovered as atan2(‖z_i‖, σ_i). Near θ = 0 the column norm
    // carries the sine at full precision where sqrt(1−σ²) would cancel
    // catastrophically (a σ one ulp below 1 fakes a sine of ~1.5e-8).
    CMatrix z = w.bottomLeftCorner(q, p) * v1.adjoint();

    std::vector<double> thetas(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) {
        const double sigma = std::clamp(svd.singular_values(i), 0.0, 1.0);
        thetas[static_cast<std::size_t>(i)] = std::atan2(z.col(i).norm(), sigma);
    }

    // Rounding can leave ties a hair out of order; restore ascending angles
    // and absorb the permutation into the factors.
    std::vector<Index> order(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&thetas](Index a, Index b) {
        return thetas[static_cast<std::size_t>(a)] < thetas[static_cast<std::size_t>(b)];
    });
    {
        std::vector<double> sorted_thetas(static_cast<std::size_t>(p));
        CMatrix u1_sorted(p, p), v1_sorted(p, p), z_sorted(q, p);
        for (Index i = 0; i < p; ++i) {
            const Index src = order[static_cast<std::size_t>(i)];
            sorted_thetas[static_cast<std::size_t>(i)] = thetas[static_cast<std::size_t>(src)];
            u1_sorted.col(i) = u1.col(src);
            v1_sorted.row(i) = v1.row(src);
            z_sorted.col(i) = z.col(src);
        }
        thetas = std::move(sorted_thetas);
        u1 = std::move(u1_sorted);
        v1 = std::move(v1_sorted);
        z = std::move(z_sorted);
    }

    Eigen::VectorXd cosv(p), sinv(p);
    for (Index i = 0; i < p; ++i) {
        cosv(i) = std::cos(thetas[static_cast<std::size_t>(i)]);
        sinv(i) = std::sin(thetas[static_cast<std::size_t>(i)]);
    }

    // Householder QR over Z's columns in descending-sine order yields an
    // exactly unitary U2 (completion columns included) whose discarded R
    // factor is diag(sin θ) up to rounding, so the substitution below does
    // not disturb the residual even when angles cluster or vanish. Ties keep
    // their original positions so that exactly-degenerate inputs (identity,
    // block-diagonal) come out as identity factors rather than permutations.
    std::vector<Index> desc(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) desc[static_cast<std::size_t>(i)] = i;
    std::stable_sort(desc.begin(), desc.end(), [&thetas](Index a, Index b) {
        return thetas[static_cast<std::size_t>(a)] > thetas[static_cast<std::size_t>(b)];
    });
    CMatrix z_perm(q, p);
    for (Index k = 0; k < p; ++k) z_perm.col(k) = z.col(desc[static_cast<std::size_t>(k)]);
    Eigen::HouseholderQR<CMatrix> qr(z_perm);
    const CMatrix q_full = qr.householderQ();
    CMatrix u2(q, q);
    for (Index k = 0; k < p; ++k) {
        const Complex diag = qr.matrixQR()(k, k);
        const double mag = std::abs(diag);
        const Complex phase = (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
        u2.col(desc[static_cast<std::size_t>(k)]) = q_full.col(k) * phase;
    }
    u2.rightCols(q - p) = q_full.rightCols(q - p);

    // V2 from the unitary Procrustes problem on the right block column, then
    // alternating sweeps over all four factors. Each update is the exact
    // minimizer of its block residual, so the total is non-increasing.
    CMatrix v2 = polar_unitary(right_column_frame(u1, u2, cosv, sinv).adjoint() * w.rightCols(q));

    for (int sweep = 0; sweep < 2; ++sweep) {
        v1 = polar_unitary(left_column_frame(u1, u2, cosv, sinv).adjoint() * w.leftCols(p));
        v2 = polar_unitary(right_column_frame(u1, u2, cosv, sinv).adjoint() * w.rightCols(q));

        // [W11 W12] = U1 · [C·V1 | -S·(top rows of V2)]
        CMatrix top(p, m);
        top.leftCols(p) = cosv.asDiagonal() * v1;
        top.rightCols(q) = -(sinv.asDiagonal() * v2.topRows(p));
        u1 = polar_unitary(w.topRows(p) * top.adjoint());

        // [W21 W22] = U2 · [[S;0]·V1 | [[C,0],[0,I]]·V2]
        CMatrix bottom = CMatrix::Zero(q, m);
        bottom.topLeftCorner(p, p) = sinv.asDiagonal() * v1;
        bottom.topRightCorner(p, q) = cosv.asDiagonal() * v2.topRows(p);
        bottom.bottomRightCorner(q - p, q) = v2.bottomRows(q - p);
        u2 = polar_unitary(w.bottomRows(q) * bottom.adjoint());
    }

    CSDFactors out;
    out.r = r;
    out.m = m;
    out.u1 = std::move(u1);
    out.u2 = std::move(u2);
    out.v1 = std::move(v1);
    out.v2 = std::move(v2);
    out.thetas = std::move(thetas);

    // The reconstruction identity is the normative contract; refuse to return
    // factors that do not meet it.
    const double residual = (assemble_reconstruction(out) - w).norm();
    const double budget = tolerances().csd_reconstruction * static_cast<double>(m);
    if (residual > budget) {
        throw Error("csd_general: reconstruction residual " + format_scalar(residual) +
                    " exceeds " + format_scalar(budget));
    }
    return out;
}

CSDFactors csd_square(const CMatrix& w) {
    if (w.rows() != w.cols() || w.rows() < 2 || w.rows() % 2 != 0) {
        throw DimensionError("csd_square: dimension must be even and positive, got " +
                             std::to_string(w.rows()));
    }
    return csd_general(w, w.rows() / 2);
}

namespace {

CMatrix block_diag3(const std::array<CMatrix, 3>& blocks) {
    const Index b = blocks[0].rows();
    CMatrix out = CMatrix::Zero(3 * b, 3 * b);
    for (int i = 0; i < 3; ++i) out.block(i * b, i * b, b, b) = blocks[static_cast<std::size_t>(i)];
    return out;
}

// [[C,−S,0],[S,C,0],[0,0,I]] when the rotated planes are blocks (0,1),
// [[I,0,0],[0,C,−S],[0,S,C]] when they are blocks (1,2).
CMatrix middle_factor(const std::vector<double>& thetas, int lo_block) {
    const Index b = static_cast<Index>(thetas.size());
    CMatrix out = CMatrix::Identity(3 * b, 3 * b);
    const Index lo = lo_block * b;
    const Index hi = lo + b;
    for (Index i = 0; i < b; ++i) {
        const double c = std::cos(thetas[static_cast<std::size_t>(i)]);
        const double s = std::sin(thetas[static_cast<std::size_t>(i)]);
        out(lo + i, lo + i) = c;
        out(lo + i, hi + i) = -s;
        out(hi + i, lo + i) = s;
        out(hi + i, hi + i) = c;
    }
    return out;
}

CMatrix assemble_ternary(const TernaryCSDFactors& f) {
    return block_diag3(f.d1) * middle_factor(f.sigma_x_thetas, 1) * block_diag3(f.d2) *
           middle_factor(f.mid_z_thetas, 0) * block_diag3(f.d3) *
           middle_factor(f.gamma_x_thetas, 1) * block_diag3(f.d4);
}

/// Largest n with 3ⁿ == dim, or -1 if dim is not a power of 3.
int log3_exact(Index dim) {
    if (dim < 1) return -1;
    int n = 0;
    Index v = dim;
    while (v % 3 == 0) {
        v /= 3;
        ++n;
    }
    return (v == 1) ? n : -1;
}

}  // namespace

TernaryCSDFactors ternary_csd(const CMatrix& w) {
    const Index dim = w.rows();
    const int n = log3_exact(dim);
    if (w.cols() != dim || n < 1) {
        throw DimensionError("ternary_csd: dimension " + std::to_string(dim) +
                             " is not a power of 3");
    }
    if (n == 1) {
        throw DimensionError("ternary_csd: a single qutrit is the synthesis base case "
                             "and is not decomposed");
    }

    const Index b = dim / 3;
    CSDFactors top = csd_general(w, b);       // W = diag(U1,U2)·MidZ·diag(V1,V2)
    CSDFactors left = csd_square(top.u2);     // U2 = diag(A1,A2)·MidSq·diag(B1,B2)
    CSDFactors right = csd_square(top.v2);

    TernaryCSDFactors f;
    f.qutrits = static_cast<unsigned>(n);
    f.d1 = {std::move(top.u1), std::move(left.u1), std::move(left.u2)};
    f.d2 = {CMatrix::Identity(b, b), std::move(left.v1), std::move(left.v2)};
    f.d3 = {std::move(top.v1), std::move(right.u1), std::move(right.u2)};
    f.d4 = {CMatrix::Identity(b, b), std::move(right.v1), std::move(right.v2)};
    f.sigma_x_thetas = std::move(left.thetas);
    f.mid_z_thetas = std::move(top.thetas);
    f.gamma_x_thetas = std::move(right.thetas);

    const double residual = (assemble_ternary(f) - w).norm();
    const double budget = tolerances().ternary_reconstruction * static_cast<double>(dim);
    if (residual > budget) {
        throw Error("ternary_csd: reconstruction residual " + format_scalar(residual) +
                    " exceeds " + format_scalar(budget));
    }
    return f;
}

}  // namespace trisynth
