#pragma once

#include <vector>

#include "qepsoar/types.hpp"

/// Complex dense kernels: Householder reflectors, QR, explicit shifted QR
/// sweeps on Hessenberg matrices, small eigensolves and smallest singular
/// vectors. Everything here is a pure value transformation.
namespace qepsoar::dense {

/// Relative threshold under which a vector handed to a reflector is
/// treated as zero.
inline constexpr double kDropTol = 1e-14;

/// Householder reflector I - beta * v * v^H acting on entries
/// [offset, offset + v.size()). beta is real, so the reflector is both
/// unitary and Hermitian.
struct Reflector {
  Vector v;
  double beta = 0.0;
  Index offset = 0;

  Index size() const { return v.size(); }
  bool is_identity() const { return beta == 0.0; }

  /// A <- H * A on rows [offset, offset + size()).
  void apply_left(Matrix& a) const;
  /// A <- A * H on columns [offset, offset + size()).
  void apply_right(Matrix& a) const;
  void apply_right(RowVector& row) const;
  /// Dense dim x dim form, mostly for tests.
  Matrix to_matrix(Index dim) const;
};

struct ReflectorToLast {
  Reflector reflector;
  Complex alpha;
};

/// Builds W with W * b = alpha * e_last, |alpha| = ||b||.
/// Throws ZeroVector when ||b|| <= kDropTol * scale.
ReflectorToLast householder_to_last(const Vector& b, double scale = 1.0);

/// Reflector mapping x onto alpha * e_target. Returns an identity reflector
/// (beta = 0) for the zero vector instead of throwing.
Reflector make_reflector(const Vector& x, Index target, Complex* alpha = nullptr);

struct QrFactors {
  Matrix v;  ///< rows x rows unitary
  Matrix r;  ///< rows x cols upper triangular
};

/// Householder QR of a (rows >= cols). Columns that are already zero below
/// the diagonal are skipped, so a Hessenberg input yields an exactly
/// Hessenberg V.
QrFactors qr_factor(const Matrix& a);

struct SweepResult {
  Matrix t;
  RowVector b;
  Matrix v;
};

/// One explicit shifted QR step: T - mu*I = V*R, T' = V^H*T*V, b' = b*V.
SweepResult shifted_qr_sweep(const Matrix& t, const RowVector& b, Complex mu);

struct EigenPair {
  Complex value;
  Vector vector;  ///< unit 2-norm
};

/// All eigenpairs of a small square matrix. Throws NoConvergence after
/// 50 * size QR iterations.
std::vector<EigenPair> dense_eig(const Matrix& a);

/// Eigenvalues only.
std::vector<Complex> eigenvalues(const Matrix& a);

struct SingularTriple {
  double sigma_min = 0.0;
  Vector z;  ///< unit right singular vector, largest entry real positive
};

/// Right singular vector of S (rows >= cols) for its smallest singular value.
SingularTriple smallest_right_singular_vector(const Matrix& s);

/// ||U^H U - I||_F.
double unitarity_defect(const Matrix& u);

/// Frobenius norm of the entries strictly below the first subdiagonal.
double below_subdiagonal_norm(const Matrix& t);

/// Zeroes entries strictly below the first subdiagonal.
void clear_below_subdiagonal(Matrix& t);

}  // namespace qepsoar::dense
