#pragma once

#include <vector>

#include "qepsoar/problem.hpp"
#include "qepsoar/types.hpp"

namespace qepsoar {

/// m-step generalized second-order Arnoldi decomposition
///
///   [A B; I 0] [Q_j; P_j] = [Q_{j+1}; P_{j+1}] That_j
///
/// with Q's nonzero columns orthonormal and That_j (j+1 x j) upper
/// Hessenberg. Columns of Q that are identically zero mark deflation steps.
struct GsoarDecomposition {
  Matrix q;                    ///< n x (steps + 1)
  Matrix p;                    ///< n x (steps + 1)
  Matrix t;                    ///< (steps + 1) x steps
  std::vector<bool> deflated;  ///< size steps + 1; true where q column is zero
  Index steps = 0;
  bool soar_mode = false;
  double max_residual_norm = 0.0;  ///< running max of ||r|| before orthogonalization

  Index n() const { return q.rows(); }
  /// True if any of the first `steps` columns of Q is zero.
  bool has_deflation() const;
  /// Leading square block T_j.
  Matrix t_square() const { return t.topLeftCorner(steps, steps); }
  Complex t_last() const { return t(steps, steps - 1); }
  /// Nonzero columns among the first `count` columns of Q.
  Matrix nonzero_q(Index count) const;
  std::vector<Index> nonzero_indices(Index count) const;
};

enum class ExtendStatus { Completed, Breakdown };

/// q1 = u1/||u1||, p1 = u2/||u2||. With soar_mode the second vector is
/// ignored and p1 = 0. Throws ZeroStart for a zero starting vector.
GsoarDecomposition gsoar_start(const SpectralTransform& t, const Vector& u1, const Vector& u2,
                               bool soar_mode = false);

/// Advances d to target_steps in place. Returns Breakdown when the
/// generalized Krylov space is exhausted; d is then left at the breakdown
/// step with a zero subdiagonal and the relation still exact.
ExtendStatus gsoar_extend(GsoarDecomposition& d, const SpectralTransform& t, Index target_steps);

struct DecompositionResidual {
  double first_row = 0.0;   ///< ||A Q_j + B P_j - Q_{j+1} That_j||_F / scale
  double second_row = 0.0;  ///< ||Q_j - P_{j+1} That_j||_F / scale
  double scale = 0.0;       ///< ||That_j||_F * max(||Q||_F, ||P||_F)
  double orthonormality = 0.0;  ///< ||Qnz^H Qnz - I||_F over nonzero columns
  double worst() const { return first_row > second_row ? first_row : second_row; }
};

/// Checks both block rows of the decomposition relation.
DecompositionResidual decomposition_residual(const GsoarDecomposition& d,
                                             const SpectralTransform& t);

}  // namespace qepsoar
