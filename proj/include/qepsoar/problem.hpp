#pragma once

#include <memory>
#include <optional>

#include <Eigen/SparseLU>

#include "qepsoar/types.hpp"

namespace qepsoar {

/// The sparse quadratic eigenproblem (lambda^2 M + lambda C + K) x = 0.
class QepProblem {
 public:
  QepProblem(SparseMatrix m, SparseMatrix c, SparseMatrix k);

  Index n() const { return m_.rows(); }
  const SparseMatrix& M() const { return m_; }
  const SparseMatrix& C() const { return c_; }
  const SparseMatrix& K() const { return k_; }
  double norm_m() const { return norm_m_; }
  double norm_c() const { return norm_c_; }
  double norm_k() const { return norm_k_; }

  /// (lambda^2 M + lambda C + K) * y
  Vector apply(Complex lambda, const Vector& y) const;

 private:
  SparseMatrix m_, c_, k_;
  double norm_m_ = 0.0, norm_c_ = 0.0, norm_k_ = 0.0;
};

/// ||(lambda^2 M + lambda C + K) y|| / (|lambda|^2 ||M||_F + |lambda| ||C||_F + ||K||_F)
double relative_residual(const QepProblem& p, Complex lambda, const Vector& y);

enum class TransformMode { Direct, ShiftInvert };

/// Operator pair (A, B) that GSOAR iterates, together with the
/// coefficients of the QEP in the transformed variable mu.
///
/// Direct:       mu = lambda, A = -M^{-1} C, B = -M^{-1} K.
/// ShiftInvert:  lambda = sigma + 1/mu, the QEP becomes
///               mu^2 K_s + mu (2 sigma M + C) + M with K_s = sigma^2 M + sigma C + K,
///               A = -K_s^{-1} (2 sigma M + C), B = -K_s^{-1} M.
///
/// A sigma given in Direct mode only sets the ordering target.
/// Immutable after construction; copies share the factorization.
class SpectralTransform {
 public:
  using Factorization = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

  SpectralTransform(const QepProblem& p, TransformMode mode, std::optional<Complex> sigma);

  TransformMode mode() const { return mode_; }
  Complex sigma() const { return sigma_; }
  /// Point the wanted eigenvalues are nearest to; none means largest |lambda|.
  std::optional<Complex> target() const { return target_; }
  Index n() const { return mu_m_.rows(); }

  /// A q + B p, one solve against the cached factorization.
  Vector apply(const Vector& q, const Vector& p) const;
  /// A X + B Y column by column.
  Matrix apply(const Matrix& q, const Matrix& p) const;

  /// mu -> lambda. Throws ZeroMu in shift-invert mode for mu == 0.
  Complex to_lambda(Complex mu) const;
  /// lambda -> mu (inverse of to_lambda).
  Complex to_mu(Complex lambda) const;

  /// QEP coefficients in the mu variable: mu^2 mu_m + mu mu_c + mu_k.
  const SparseMatrix& mu_m() const { return mu_m_; }
  const SparseMatrix& mu_c() const { return mu_c_; }
  const SparseMatrix& mu_k() const { return mu_k_; }

 private:
  TransformMode mode_;
  Complex sigma_{0.0, 0.0};
  std::optional<Complex> target_;
  SparseMatrix mu_m_, mu_c_, mu_k_;
  std::shared_ptr<const Factorization> lu_;
};

SpectralTransform build_transform(const QepProblem& p, TransformMode mode,
                                  std::optional<Complex> sigma = std::nullopt);

inline Vector apply_operator(const SpectralTransform& t, const Vector& q, const Vector& p) {
  return t.apply(q, p);
}

inline Complex map_eigenvalue(const SpectralTransform& t, Complex mu) { return t.to_lambda(mu); }

}  // namespace qepsoar
