#include "qepsoar/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qepsoar/error.hpp"

namespace qepsoar {

namespace {

double frobenius(const SparseMatrix& a) {
  double sum = 0.0;
  for (Index k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) sum += std::norm(it.value());
  }
  return std::sqrt(sum);
}

// Nonsingular within a relative pivot tolerance of 1e-13. The largest growth
// over two inverse power steps bounds ||K^{-1}|| from below.
constexpr double kPivotTol = 1e-13;

}  // namespace

QepProblem::QepProblem(SparseMatrix m, SparseMatrix c, SparseMatrix k)
    : m_(std::move(m)), c_(std::move(c)), k_(std::move(k)) {
  const Index n = m_.rows();
  auto check = [n](const SparseMatrix& a, const char* name) {
    if (a.rows() != n || a.cols() != n || n < 1) {
      throw Error(ErrorKind::InvalidInput, std::string(name) + " is not n x n");
    }
  };
  check(m_, "M");
  check(c_, "C");
  check(k_, "K");
  m_.makeCompressed();
  c_.makeCompressed();
  k_.makeCompressed();
  norm_m_ = frobenius(m_);
  norm_c_ = frobenius(c_);
  norm_k_ = frobenius(k_);
  if (!std::isfinite(norm_m_) || !std::isfinite(norm_c_) || !std::isfinite(norm_k_)) {
    throw Error(ErrorKind::InvalidInput, "non-finite matrix entries");
  }
}

Vector QepProblem::apply(Complex lambda, const Vector& y) const {
  Vector out = k_ * y;
  out.noalias() += lambda * (c_ * y);
  out.noalias() += (lambda * lambda) * (m_ * y);
  return out;
}

double relative_residual(const QepProblem& p, Complex lambda, const Vector& y) {
  const double a = std::abs(lambda);
  const double denom = a * a * p.norm_m() + a * p.norm_c() + p.norm_k();
  return p.apply(lambda, y).norm() / denom;
}

SpectralTransform::SpectralTransform(const QepProblem& p, TransformMode mode,
                                     std::optional<Complex> sigma)
    : mode_(mode), target_(sigma) {
  if (mode == TransformMode::Direct) {
    mu_m_ = p.M();
    mu_c_ = p.C();
    mu_k_ = p.K();
  } else {
    if (!sigma) throw Error(ErrorKind::InvalidConfig, "shift-invert requires a target sigma");
    sigma_ = *sigma;
    mu_m_ = (sigma_ * sigma_) * p.M() + sigma_ * p.C() + p.K();
    mu_c_ = (2.0 * sigma_) * p.M() + p.C();
    mu_k_ = p.M();
  }
  mu_m_.makeCompressed();
  mu_c_.makeCompressed();
  mu_k_.makeCompressed();

  auto lu = std::make_shared<Factorization>();
  lu->compute(mu_m_);
  if (lu->info() != Eigen::Success) {
    throw Error(ErrorKind::SingularPivot, "factorization of the pivot matrix failed: " +
                                              lu->lastErrorMessage());
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Vector x(n());
  for (Index i = 0; i < n(); ++i) x(i) = Complex(normal(rng), normal(rng));
  x.normalize();
  double growth = 0.0;
  for (int step = 0; step < 2; ++step) {
    x = lu->solve(x);
    const double g = x.norm();
    if (!std::isfinite(g) || g == 0.0) {
      throw Error(ErrorKind::SingularPivot, "pivot matrix solve produced non-finite values");
    }
    growth = std::max(growth, g);
    x /= g;
  }
  const double scale = frobenius(mu_m_);
  if (growth * scale * kPivotTol > 1.0) {
    throw Error(ErrorKind::SingularPivot, "pivot matrix is numerically singular; perturb sigma");
  }
  lu_ = std::move(lu);
}

Vector SpectralTransform::apply(const Vector& q, const Vector& p) const {
  Vector rhs = mu_c_ * q;
  rhs.noalias() += mu_k_ * p;
  Vector out = lu_->solve(rhs);
  return -out;
}

Matrix SpectralTransform::apply(const Matrix& q, const Matrix& p) const {
  Matrix rhs = mu_c_ * q;
  rhs.noalias() += mu_k_ * p;
  Matrix out = lu_->solve(rhs);
  return -out;
}

Complex SpectralTransform::to_lambda(Complex mu) const {
  if (mode_ == TransformMode::Direct) return mu;
  if (mu == Complex(0.0, 0.0)) {
    throw Error(ErrorKind::ZeroMu, "mu = 0 maps to an infinite eigenvalue");
  }
  return sigma_ + 1.0 / mu;
}

Complex SpectralTransform::to_mu(Complex lambda) const {
  if (mode_ == TransformMode::Direct) return lambda;
  return 1.0 / (lambda - sigma_);
}

SpectralTransform build_transform(const QepProblem& p, TransformMode mode,
                                  std::optional<Complex> sigma) {
  return SpectralTransform(p, mode, sigma);
}

}  // namespace qepsoar
