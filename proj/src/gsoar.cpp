#include "qepsoar/gsoar.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "qepsoar/dense.hpp"
#include "qepsoar/error.hpp"

namespace qepsoar {

namespace {

constexpr double kBreakdownTol = 1e-12;
constexpr double kSpanTol = 1e-10;
constexpr double kReorthFactor = 0.707;
// q_j is a unit vector, so s = q_j - P h is judged on an absolute scale.
constexpr double kZeroS = 1e-12;

}  // namespace

bool GsoarDecomposition::has_deflation() const {
  // Only columns inside the basis matter; a zero residual column q_{j+1}
  // does not break orthonormality of anything that survives a restart.
  const auto end = std::min<std::size_t>(static_cast<std::size_t>(steps), deflated.size());
  return std::any_of(deflated.begin(), deflated.begin() + static_cast<std::ptrdiff_t>(end),
                     [](bool b) { return b; });
}

std::vector<Index> GsoarDecomposition::nonzero_indices(Index count) const {
  std::vector<Index> idx;
  for (Index i = 0; i < count; ++i) {
    if (!deflated[static_cast<std::size_t>(i)]) idx.push_back(i);
  }
  return idx;
}

Matrix GsoarDecomposition::nonzero_q(Index count) const {
  const auto idx = nonzero_indices(count);
  Matrix out(n(), static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Index>(c)) = q.col(idx[c]);
  return out;
}

GsoarDecomposition gsoar_start(const SpectralTransform& t, const Vector& u1, const Vector& u2,
                               bool soar_mode) {
  const Index n = t.n();
  if (u1.size() != n || (!soar_mode && u2.size() != n)) {
    throw Error(ErrorKind::InvalidInput, "starting vector length does not match the problem");
  }
  const double n1 = u1.norm();
  const double n2 = soar_mode ? 1.0 : u2.norm();
  if (n1 == 0.0 || n2 == 0.0) throw Error(ErrorKind::ZeroStart, "starting vector is zero");

  GsoarDecomposition d;
  d.soar_mode = soar_mode;
  d.q = u1 / n1;
  d.p = soar_mode ? Matrix(Vector::Zero(n)) : Matrix(u2 / n2);
  d.t = Matrix::Zero(1, 0);
  d.deflated = {false};
  d.steps = 0;
  return d;
}

ExtendStatus gsoar_extend(GsoarDecomposition& d, const SpectralTransform& t, Index target_steps) {
  const Index n = d.n();
  if (target_steps <= d.steps) return ExtendStatus::Completed;

  d.q.conservativeResize(n, target_steps + 1);
  d.p.conservativeResize(n, target_steps + 1);
  d.t.conservativeResize(target_steps + 1, target_steps);
  d.t.rightCols(target_steps - d.steps).setZero();
  d.t.bottomRows(target_steps - d.steps).setZero();
  d.deflated.resize(static_cast<std::size_t>(target_steps + 1), false);

  for (Index j = d.steps; j < target_steps; ++j) {
    const auto basis_q = d.q.leftCols(j + 1);
    const auto basis_p = d.p.leftCols(j + 1);

    Vector r = t.apply(Vector(d.q.col(j)), Vector(d.p.col(j)));
    Vector s = d.q.col(j);
    const double before = r.norm();
    d.max_residual_norm = std::max(d.max_residual_norm, before);

    Vector h = basis_q.adjoint() * r;
    r.noalias() -= basis_q * h;
    s.noalias() -= basis_p * h;
    double after = r.norm();
    if (after < kReorthFactor * before) {
      const Vector h2 = basis_q.adjoint() * r;
      r.noalias() -= basis_q * h2;
      s.noalias() -= basis_p * h2;
      h += h2;
      after = r.norm();
    }
    d.t.col(j).head(j + 1) = h;

    if (after > kBreakdownTol * d.max_residual_norm) {
      d.t(j + 1, j) = after;
      d.q.col(j + 1) = r / after;
      d.p.col(j + 1) = s / after;
      d.deflated[static_cast<std::size_t>(j + 1)] = false;
      continue;
    }

    // r vanished: either s lies in span{p_i : q_i = 0} (breakdown) or the
    // pair sequence is still independent (deflation).
    std::vector<Index> zero_cols;
    for (Index i = 0; i <= j; ++i) {
      if (d.deflated[static_cast<std::size_t>(i)]) zero_cols.push_back(i);
    }
    const double s_norm = s.norm();
    bool in_span = s_norm <= kZeroS;
    Vector coeff;
    if (!in_span && !zero_cols.empty()) {
      Matrix pd(n, static_cast<Index>(zero_cols.size()));
      for (std::size_t c = 0; c < zero_cols.size(); ++c) pd.col(static_cast<Index>(c)) = d.p.col(zero_cols[c]);
      coeff = pd.colPivHouseholderQr().solve(s);
      in_span = (s - pd * coeff).norm() <= kSpanTol * s_norm;
    }

    if (in_span) {
      // Fold s into the zero-q rows of the current column so both block
      // rows stay exact; q_i = 0 leaves the first block row untouched.
      if (coeff.size() > 0) {
        for (std::size_t c = 0; c < zero_cols.size(); ++c) d.t(zero_cols[c], j) += coeff(static_cast<Index>(c));
      }
      d.t(j + 1, j) = 0.0;
      d.q.col(j + 1).setZero();
      d.p.col(j + 1).setZero();
      d.deflated[static_cast<std::size_t>(j + 1)] = true;
      d.steps = j + 1;
      d.q.conservativeResize(n, d.steps + 1);
      d.p.conservativeResize(n, d.steps + 1);
      d.t.conservativeResize(d.steps + 1, d.steps);
      d.deflated.resize(static_cast<std::size_t>(d.steps + 1));
      return ExtendStatus::Breakdown;
    }

    d.t(j + 1, j) = 1.0;
    d.q.col(j + 1).setZero();
    d.p.col(j + 1) = s;
    d.deflated[static_cast<std::size_t>(j + 1)] = true;
  }
  d.steps = target_steps;
  return ExtendStatus::Completed;
}

DecompositionResidual decomposition_residual(const GsoarDecomposition& d,
                                             const SpectralTransform& t) {
  DecompositionResidual out;
  const Index j = d.steps;
  if (j == 0) return out;
  const auto qj = d.q.leftCols(j);
  const auto pj = d.p.leftCols(j);
  const Matrix first = t.apply(Matrix(qj), Matrix(pj)) - d.q * d.t;
  const Matrix second = qj - d.p * d.t;
  out.scale = d.t.norm() * std::max(d.q.norm(), d.p.norm());
  const double denom = out.scale > 0.0 ? out.scale : 1.0;
  out.first_row = first.norm() / denom;
  out.second_row = second.norm() / denom;
  const Matrix qnz = d.nonzero_q(j + 1);
  out.orthonormality = dense::unitarity_defect(qnz);
  return out;
}

}  // namespace qepsoar
