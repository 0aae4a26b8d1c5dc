/** \file
 * Fundamental scalar/matrix aliases, error types, and global tolerances.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace trisynth {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Matrix3 = Eigen::Matrix3cd;
using Index = Eigen::Index;

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimension or precondition violation (mismatched sizes, bad partition, ...).
struct DimensionError : Error {
    using Error::Error;
};

/// Malformed or schema-violating input (JSON parse errors, unknown gate kinds, ...).
struct FormatError : Error {
    using Error::Error;
};

/// A matrix required to be unitary failed the check; carries the defect ‖M†M−I‖_F.
struct UnitarityError : Error {
    double defect;
    UnitarityError(const std::string& msg, double defect_) : Error(msg), defect(defect_) {}
};

/**
 * Global tolerances, all relative to the matrix dimension. Mutable through
 * tolerances(); set before use, values are read at call time.
 */
struct Tolerances {
    double unitarity = 1e-12;              // factor unitarity: ‖M†M−I‖_F ≤ unitarity·dim
    double csd_reconstruction = 1e-10;     // single CSD multiply-out residual
    double ternary_reconstruction = 1e-9;  // three stacked CSDs (seven-factor form)
};

Tolerances& tolerances();

}  // namespace trisynth
