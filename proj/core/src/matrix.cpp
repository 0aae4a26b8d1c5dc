#include "trisynth/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace trisynth {

namespace {

std::string format_scalar(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

Tolerances& tolerances() {
    static Tolerances instance;
    return instance;
}

double unitarity_defect(const CMatrix& m) {
    const Index n = m.cols();
    return (m.adjoint() * m - CMatrix::Identity(n, n)).norm();
}

bool is_unitary(const CMatrix& m, double tol_per_dim) {
    if (m.rows() != m.cols() || m.rows() < 1) return false;
    return unitarity_defect(m) <= tol_per_dim * static_cast<double>(m.rows());
}

bool is_unitary(const CMatrix& m) { return is_unitary(m, tolerances().unitarity); }

void require_unitary(const CMatrix& m, const std::string& what, double tol_per_dim) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionError(what + ": expected a nonempty square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const double defect = unitarity_defect(m);
    if (defect > tol_per_dim * static_cast<double>(m.rows())) {
        throw UnitarityError(what + ": matrix is not unitary, ||M†M - I||_F = " +
                                 format_scalar(defect),
                             defect);
    }
}

void require_unitary(const CMatrix& m, const std::string& what) {
    require_unitary(m, what, tolerances().unitarity);
}

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("multiply: inner dimensions disagree (" + std::to_string(a.cols()) +
                             " vs " + std::to_string(b.rows()) + ")");
    }
    return a * b;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("frobenius_distance: shape mismatch");
    }
    return (a - b).norm();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

void check_split(const std::vector<Index>& split, Index dim, const char* which) {
    Index sum = 0;
    for (Index s : split) {
        if (s < 1) throw DimensionError(std::string("block_partition: nonpositive ") + which + " block size");
        sum += s;
    }
    if (sum != dim) {
        throw DimensionError(std::string("block_partition: ") + which + " split sums to " +
                             std::to_string(sum) + ", matrix has " + std::to_string(dim));
    }
}

}  // namespace

BlockGrid block_partition(const CMatrix& m, const BlockSpec& spec) {
    check_split(spec.row_split, m.rows(), "row");
    check_split(spec.col_split, m.cols(), "col");
    BlockGrid grid(spec.row_split.size());
    Index r0 = 0;
    for (std::size_t i = 0; i < spec.row_split.size(); ++i) {
        Index c0 = 0;
        grid[i].reserve(spec.col_split.size());
        for (std::size_t j = 0; j < spec.col_split.size(); ++j) {
            grid[i].push_back(m.block(r0, c0, spec.row_split[i], spec.col_split[j]));
            c0 += spec.col_split[j];
        }
        r0 += spec.row_split[i];
    }
    return grid;
}

CMatrix block_assemble(const BlockGrid& grid) {
    if (grid.empty() || grid.front().empty()) throw DimensionError("block_assemble: empty grid");
    const std::size_t cols = grid.front().size();
    Index total_rows = 0, total_cols = 0;
    for (const auto& b : grid.front()) total_cols += b.cols();
    for (const auto& row : grid) {
        if (row.size() != cols) throw DimensionError("block_assemble: ragged grid");
        total_rows += row.front().rows();
    }
    CMatrix out(total_rows, total_cols);
    Index r0 = 0;
    for (const auto& row : grid) {
        const Index rh = row.front().rows();
        Index c0 = 0;
        for (const auto& b : row) {
            if (b.rows() != rh) throw DimensionError("block_assemble: inconsistent block heights");
            out.block(r0, c0, b.rows(), b.cols()) = b;
            c0 += b.cols();
        }
        if (c0 != total_cols) throw DimensionError("block_assemble: inconsistent block widths");
        r0 += rh;
    }
    return out;
}

namespace {

// Standard complex Gaussian via Box-Muller over raw mt19937_64 draws; avoids
// std::normal_distribution so samples are identical across standard libraries.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    Complex next() {
        const double u1 = unit_open();
        const double u2 = unit_open();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    // uniform on (0, 1]: guards the log
    double unit_open() {
        const std::uint64_t bits = engine_() >> 11;  // 53 bits
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
};

}  // namespace

CMatrix haar_random_unitary(Index dim, std::uint64_t seed) {
    if (dim < 1) throw DimensionError("haar_random_unitary: dimension must be positive");
    GaussianSource gauss(seed);
    CMatrix g(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            g(i, j) = gauss.next();
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR();
    for (Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

void StateVector::normalize() {
    const double n = amplitudes.norm();
    if (n == 0.0) throw DimensionError("StateVector::normalize: zero vector");
    amplitudes /= n;
}

StateVector StateVector::basis(Index dim, Index index) {
    if (dim < 1 || index < 0 || index >= dim) {
        throw DimensionError("StateVector::basis: index " + std::to_string(index) +
                             " out of range for dimension " + std::to_string(dim));
    }
    CVector v = CVector::Zero(dim);
    v(index) = Complex(1.0, 0.0);
    return StateVector(std::move(v));
}

}  // namespace trisynth
