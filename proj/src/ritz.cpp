#include "qepsoar/ritz.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include <Eigen/LU>
#include <Eigen/QR>

#include "qepsoar/error.hpp"

namespace qepsoar {

namespace {

constexpr double kMassCondLimit = 1e14;

}  // namespace

ProjectedQep project_qep(const SparseMatrix& m, const SparseMatrix& c, const SparseMatrix& k,
                         const Matrix& q) {
  ProjectedQep out;
  const Matrix mq = m * q;
  const Matrix cq = c * q;
  const Matrix kq = k * q;
  out.m = q.adjoint() * mq;
  out.c = q.adjoint() * cq;
  out.k = q.adjoint() * kq;
  return out;
}

std::vector<SmallQepPair> solve_small_qep(const Matrix& ms, const Matrix& cs, const Matrix& ks) {
  const Index s = ms.rows();
  if (s < 1) return {};
  Eigen::PartialPivLU<Matrix> lu(ms);
  // rcond() is unreliable on an exactly zero pivot, so check the pivots too.
  const double rcond = lu.rcond();
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!(rcond * kMassCondLimit > 1.0) || !(pivots.minCoeff() * kMassCondLimit > pivots.maxCoeff())) {
    throw Error(ErrorKind::SingularMassMatrix, "projected leading coefficient is singular (rcond " + std::to_string(rcond) + ", dim " + std::to_string(s) + ")");
  }
  Matrix companion = Matrix::Zero(2 * s, 2 * s);
  companion.topLeftCorner(s, s) = -lu.solve(cs);
  companion.topRightCorner(s, s) = -lu.solve(ks);
  companion.bottomLeftCorner(s, s).setIdentity();

  std::vector<SmallQepPair> out;
  out.reserve(static_cast<std::size_t>(2 * s));
  for (auto& pair : dense::dense_eig(companion)) {
    // The eigenvector is [theta g; g]; take whichever block carries more
    // of the weight.
    const auto top = pair.vector.head(s);
    const auto bottom = pair.vector.tail(s);
    Vector g = top.norm() > bottom.norm() ? Vector(top) : Vector(bottom);
    const double gn = g.norm();
    if (gn == 0.0) continue;
    out.push_back({pair.value, g / gn});
  }
  return out;
}

SubspaceProjection::SubspaceProjection(const QepProblem& p, const SpectralTransform& t,
                                       Matrix basis)
    : basis_(std::move(basis)),
      norm_m_(p.norm_m()),
      norm_c_(p.norm_c()),
      norm_k_(p.norm_k()) {
  const Index n = basis_.rows();
  const Index s = basis_.cols();
  Matrix stacked(n, 3 * s);
  stacked.leftCols(s) = p.M() * basis_;
  stacked.middleCols(s, s) = p.C() * basis_;
  stacked.rightCols(s) = p.K() * basis_;

  const Matrix mm = basis_.adjoint() * stacked.leftCols(s);
  const Matrix cm = basis_.adjoint() * stacked.middleCols(s, s);
  const Matrix km = basis_.adjoint() * stacked.rightCols(s);
  if (t.mode() == TransformMode::Direct) {
    mu_ = {mm, cm, km};
  } else {
    const Complex sg = t.sigma();
    mu_ = {(sg * sg) * mm + sg * cm + km, (2.0 * sg) * mm + cm, mm};
  }

  Eigen::HouseholderQR<Matrix> qr(stacked);
  const Index rank_rows = std::min(n, 3 * s);
  r_ = qr.matrixQR().topRows(rank_rows).triangularView<Eigen::Upper>();
}

Matrix SubspaceProjection::stacked(Complex lambda) const {
  const Index s = dim();
  Matrix x = Matrix::Zero(3 * s, s);
  x.topRows(s).diagonal().setConstant(lambda * lambda);
  x.middleRows(s, s).diagonal().setConstant(lambda);
  x.bottomRows(s).diagonal().setOnes();
  return r_ * x;
}

double SubspaceProjection::denominator(Complex lambda) const {
  const double a = std::abs(lambda);
  return a * a * norm_m_ + a * norm_c_ + norm_k_;
}

double SubspaceProjection::relative_residual(Complex lambda, const Vector& z) const {
  const Index s = dim();
  Vector x(3 * s);
  x.head(s) = (lambda * lambda) * z;
  x.segment(s, s) = lambda * z;
  x.tail(s) = z;
  return (r_ * x).norm() / denominator(lambda) / z.norm();
}

dense::SingularTriple SubspaceProjection::refine(Complex lambda) const {
  return dense::smallest_right_singular_vector(stacked(lambda));
}

bool nearer_target(const SpectralTransform& t, Complex a, Complex b) {
  double ka, kb;
  if (const auto target = t.target()) {
    ka = std::abs(a - *target);
    kb = std::abs(b - *target);
  } else {
    ka = -std::abs(a);
    kb = -std::abs(b);
  }
  return std::make_tuple(ka, a.real(), a.imag()) < std::make_tuple(kb, b.real(), b.imag());
}

std::vector<ApproxEigenpair> ritz_pairs(const SubspaceProjection& proj, const SpectralTransform& t,
                                        Index how_many) {
  const auto& mu = proj.mu_projection();
  std::vector<ApproxEigenpair> pairs;
  for (auto& small : solve_small_qep(mu.m, mu.c, mu.k)) {
    if (t.mode() == TransformMode::ShiftInvert && small.theta == Complex(0.0, 0.0)) continue;
    ApproxEigenpair pair;
    pair.theta = small.theta;
    pair.lambda = t.to_lambda(small.theta);
    pair.g = std::move(small.g);
    pairs.push_back(std::move(pair));
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&t](const auto& a, const auto& b) {
    return nearer_target(t, a.lambda, b.lambda);
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& pair = pairs[i];
    pair.y = proj.basis() * pair.g;
    pair.y.normalize();
    pair.residual = proj.relative_residual(pair.lambda, pair.g);
    pair.kind = PairKind::Ritz;
    pair.wanted = static_cast<Index>(i) < how_many;
  }
  return pairs;
}

std::vector<ApproxEigenpair> ritz_pairs(const GsoarDecomposition& d, const SpectralTransform& t,
                                        const QepProblem& p, Index how_many) {
  if (how_many <= 0) return {};
  SubspaceProjection proj(p, t, d.nonzero_q(d.steps));
  return ritz_pairs(proj, t, how_many);
}

ApproxEigenpair refine_pair(const ApproxEigenpair& pair, const Matrix& q, const QepProblem& p) {
  const Complex l = pair.lambda;
  const Matrix s = (l * l) * (p.M() * q) + l * (p.C() * q) + p.K() * q;
  const auto sv = dense::smallest_right_singular_vector(s);
  ApproxEigenpair out = pair;
  out.kind = PairKind::Refined;
  out.g = sv.z;
  out.y = q * sv.z;
  out.y.normalize();
  out.residual = relative_residual(p, l, out.y);
  return out;
}

ApproxEigenpair refine_pair(const ApproxEigenpair& pair, const SubspaceProjection& proj) {
  const auto sv = proj.refine(pair.lambda);
  ApproxEigenpair out = pair;
  out.kind = PairKind::Refined;
  out.g = sv.z;
  out.y = proj.basis() * sv.z;
  out.y.normalize();
  out.residual = proj.relative_residual(pair.lambda, sv.z);
  return out;
}

ConvergenceCheck check_convergence(const std::vector<ApproxEigenpair>& pairs, double tol) {
  ConvergenceCheck out;
  out.converged = !pairs.empty();
  for (const auto& pair : pairs) {
    out.worst = std::max(out.worst, pair.residual);
    if (!(pair.residual <= tol)) out.converged = false;
  }
  return out;
}

}  // namespace qepsoar
