#pragma once

// Random fixtures and reference computations that deliberately avoid the
// library code paths they are used to check.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qepsoar/problem.hpp"
#include "qepsoar/types.hpp"

namespace qepsoar::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double real() { return normal_(gen_); }
  Complex complex() { return {normal_(gen_), normal_(gen_)}; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  Index index(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(gen_); }

  Matrix matrix(Index rows, Index cols) {
    Matrix a(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) a(i, j) = complex();
    return a;
  }
  Vector vector(Index n) { return matrix(n, 1).col(0); }
  RowVector row(Index n) { return matrix(1, n).row(0); }
  Matrix hessenberg(Index n) {
    Matrix a = matrix(n, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = j + 2; i < n; ++i) a(i, j) = 0.0;
    return a;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

inline SparseMatrix to_sparse(const Matrix& a) { return a.sparseView(); }

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

/// Random QEP with a well-conditioned M (identity plus a small perturbation).
inline QepProblem random_qep(Rng& rng, Index n) {
  const Matrix m = identity(n) + 0.1 * rng.matrix(n, n) / std::sqrt(double(n));
  return QepProblem(to_sparse(m), to_sparse(rng.matrix(n, n)), to_sparse(rng.matrix(n, n)));
}

/// All 2n eigenvalues of (l^2 M + l C + K) through the first companion form
/// [[0, I], [-M^{-1} K, -M^{-1} C]] (block order differs from the library's).
inline std::vector<Complex> qep_eigenvalues(const Matrix& m, const Matrix& c, const Matrix& k) {
  const Index n = m.rows();
  Eigen::FullPivLU<Matrix> lu(m);
  Matrix l = Matrix::Zero(2 * n, 2 * n);
  l.topRightCorner(n, n) = identity(n);
  l.bottomLeftCorner(n, n) = -lu.solve(k);
  l.bottomRightCorner(n, n) = -lu.solve(c);
  Eigen::ComplexEigenSolver<Matrix> es(l, false);
  const Vector ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline std::vector<Complex> qep_eigenvalues(const QepProblem& p) {
  return qep_eigenvalues(Matrix(p.M()), Matrix(p.C()), Matrix(p.K()));
}

/// The `count` values nearest to sigma, ties by real then imaginary part.
inline std::vector<Complex> nearest(std::vector<Complex> values, Complex sigma, std::size_t count) {
  std::sort(values.begin(), values.end(), [sigma](Complex a, Complex b) {
    const double da = std::abs(a - sigma), db = std::abs(b - sigma);
    if (da != db) return da < db;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  values.resize(std::min(count, values.size()));
  return values;
}

/// Distance from z to the closest element of a set.
inline double distance_to_set(Complex z, const std::vector<Complex>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (Complex w : set) best = std::min(best, std::abs(z - w));
  return best;
}

/// Largest distance from an element of `a` to its closest partner in `b`,
/// matched greedily without reuse.
inline double matching_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Complex z : a) {
    auto it = std::min_element(b.begin(), b.end(), [z](Complex x, Complex y) {
      return std::abs(x - z) < std::abs(y - z);
    });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

/// Orthonormal basis of the column span (rank decided at tol).
inline Matrix orth(const Matrix& a, double tol = 1e-10) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > tol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Sine of the largest principal angle between span(a) and span(b), both
/// of the same dimension.
inline double subspace_gap(const Matrix& a, const Matrix& b) {
  const Matrix qa = orth(a), qb = orth(b);
  const Matrix resid = qb - qa * (qa.adjoint() * qb);
  return Eigen::JacobiSVD<Matrix>(resid).singularValues()(0);
}

/// Numerical rank via singular values.
inline Index rank_of(const Matrix& a, double tol = 1e-10) { return orth(a, tol).cols(); }

/// Smallest singular value and vector from the Gram matrix S^H S.
inline std::pair<double, Vector> gram_smallest(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.adjoint() * s);
  return {std::sqrt(std::max(0.0, es.eigenvalues()(0))), es.eigenvectors().col(0)};
}

}  // namespace qepsoar::testing
