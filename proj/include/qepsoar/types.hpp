#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace qepsoar {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex matrix, column-major.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

/// Compressed sparse complex matrix.
using SparseMatrix = Eigen::SparseMatrix<Complex>;

}  // namespace qepsoar
