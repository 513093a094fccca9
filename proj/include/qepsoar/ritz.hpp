#pragma once

#include <vector>

#include "qepsoar/dense.hpp"
#include "qepsoar/gsoar.hpp"
#include "qepsoar/problem.hpp"
#include "qepsoar/types.hpp"

namespace qepsoar {

enum class PairKind { Ritz, Refined };

/// Approximate eigenpair. theta lives in the transformed (mu) variable,
/// lambda in the original one; y = Q g is a unit vector.
struct ApproxEigenpair {
  Complex theta;
  Complex lambda;
  Vector g;
  Vector y;
  double residual = 0.0;
  PairKind kind = PairKind::Ritz;
  bool wanted = false;
};

struct ProjectedQep {
  Matrix m, c, k;
  Index dim() const { return m.rows(); }
};

/// (Q^H M Q, Q^H C Q, Q^H K Q).
ProjectedQep project_qep(const SparseMatrix& m, const SparseMatrix& c, const SparseMatrix& k,
                         const Matrix& q);

struct SmallQepPair {
  Complex theta;
  Vector g;  ///< unit
};

/// All 2s eigenpairs of theta^2 Ms + theta Cs + Ks through the companion
/// linearization. Throws SingularMassMatrix when Ms is too ill-conditioned
/// to invert (condition estimate above 1e14).
std::vector<SmallQepPair> solve_small_qep(const Matrix& ms, const Matrix& cs, const Matrix& ks);

/// Everything one restart cycle needs from a fixed orthonormal basis Q:
/// the mu-domain projected QEP and the triangular factor R of
/// [MQ CQ KQ] (original coefficients). With R,
///   ||(l^2 M + l C + K) Q z|| = ||R [l^2 z; l z; z]||,
/// so residuals and refined vectors cost O(s^3) per pair instead of O(n s^2).
class SubspaceProjection {
 public:
  SubspaceProjection(const QepProblem& p, const SpectralTransform& t, Matrix basis);

  const Matrix& basis() const { return basis_; }
  Index dim() const { return basis_.cols(); }
  const ProjectedQep& mu_projection() const { return mu_; }

  /// ||(l^2 M + l C + K) Q z|| / (|l|^2 ||M|| + |l| ||C|| + ||K||) / ||z||
  double relative_residual(Complex lambda, const Vector& z) const;

  /// Minimizer z of ||(l^2 M + l C + K) Q z|| over unit z.
  dense::SingularTriple refine(Complex lambda) const;

 private:
  Matrix stacked(Complex lambda) const;
  double denominator(Complex lambda) const;

  Matrix basis_;
  ProjectedQep mu_;
  Matrix r_;
  double norm_m_, norm_c_, norm_k_;
};

/// Ritz pairs from a projection, sorted nearest-target first (|lambda - sigma|
/// ascending when the transform has a target, otherwise |lambda| descending;
/// ties by real then imaginary part). The first how_many are marked wanted.
std::vector<ApproxEigenpair> ritz_pairs(const SubspaceProjection& proj, const SpectralTransform& t,
                                        Index how_many);

/// Same, projecting onto the nonzero columns of d's first d.steps columns.
std::vector<ApproxEigenpair> ritz_pairs(const GsoarDecomposition& d, const SpectralTransform& t,
                                        const QepProblem& p, Index how_many);

/// Refined Ritz vector for pair.lambda inside span(Q). Works on the
/// original coefficients, residual recomputed directly.
ApproxEigenpair refine_pair(const ApproxEigenpair& pair, const Matrix& q, const QepProblem& p);

/// Refined vector through the cached triangular factor.
ApproxEigenpair refine_pair(const ApproxEigenpair& pair, const SubspaceProjection& proj);

struct ConvergenceCheck {
  bool converged = false;
  double worst = 0.0;
};

/// All pairs passed in are treated as wanted.
ConvergenceCheck check_convergence(const std::vector<ApproxEigenpair>& pairs, double tol);

/// Strict weak order used to sort approximations, nearest to target first.
bool nearer_target(const SpectralTransform& t, Complex lambda_a, Complex lambda_b);

}  // namespace qepsoar
