#include "qepsoar/restart.hpp"

#include <cmath>
#include <string>

#include "qepsoar/dense.hpp"
#include "qepsoar/error.hpp"

namespace qepsoar {

namespace {

constexpr double kTruncationTol = 1e-12;

}  // namespace

SweptState apply_shifts(const Matrix& t0, Complex t_last, const std::vector<Complex>& shifts) {
  const Index m = t0.rows();
  SweptState s{t0, RowVector::Zero(m), Matrix::Identity(m, m), t_last};
  s.b(m - 1) = t_last;
  for (const Complex mu : shifts) {
    auto sweep = dense::shifted_qr_sweep(s.t, s.b, mu);
    s.t = std::move(sweep.t);
    s.b = std::move(sweep.b);
    s.vacc = s.vacc * sweep.v;
  }
  return s;
}

RestoredState restore_hessenberg(const SweptState& s) {
  const Index m = s.t.rows();
  const double scale = std::max(s.t.norm(), 1.0);
  const double b_norm = s.b.norm();
  if (b_norm <= dense::kDropTol * scale) {
    throw Error(ErrorKind::ZeroResidualRow, "residual row vanished; the subspace is invariant");
  }

  RestoredState out{s.t, Matrix::Identity(m, m), Complex(0.0, 0.0)};
  const auto w1 = dense::householder_to_last(s.b.adjoint(), scale);
  w1.reflector.apply_left(out.t);
  w1.reflector.apply_right(out.t);
  w1.reflector.apply_right(out.w);

  for (Index row = m - 1; row >= 2; --row) {
    const Vector c = out.t.row(row).head(row).adjoint();
    if (c.head(row - 1).squaredNorm() == 0.0) continue;
    dense::Reflector r = dense::make_reflector(c, row - 1);
    r.apply_left(out.t);
    r.apply_right(out.t);
    r.apply_right(out.w);
    out.t.row(row).head(row - 1).setZero();
  }
  dense::clear_below_subdiagonal(out.t);

  RowVector bw = s.b * out.w;
  out.b_last = bw(m - 1);
  return out;
}

GsoarDecomposition truncate(const GsoarDecomposition& d, const Matrix& transform,
                            const Matrix& t_new, const RowVector& b, Index keep) {
  const Index m = d.steps;
  if (keep < 1 || keep >= m) {
    throw Error(ErrorKind::InvalidTruncation, "keep must satisfy 1 <= keep < m");
  }
  const double b_norm = b.norm();
  const double leak = b.head(keep - 1).norm();
  if (leak > kTruncationTol * b_norm) {
    throw Error(ErrorKind::InvalidTruncation,
                "residual row is not confined to columns >= keep (leak " + std::to_string(leak / b_norm) +
                    "); too many shifts without restoration");
  }

  const Matrix x = transform.leftCols(keep + 1);
  GsoarDecomposition out;
  out.soar_mode = false;
  out.max_residual_norm = d.max_residual_norm;
  out.steps = keep;
  out.q.resize(d.n(), keep + 1);
  out.p.resize(d.n(), keep + 1);
  out.q.noalias() = d.q.leftCols(m) * x;
  out.p.noalias() = d.p.leftCols(m) * x;
  out.t = t_new.topLeftCorner(keep + 1, keep);
  out.deflated.assign(static_cast<std::size_t>(keep + 1), false);

  const Complex sub = t_new(keep, keep - 1);
  const Complex tail = b(keep - 1);
  Vector rq = sub * out.q.col(keep) + tail * d.q.col(m);
  Vector rp = sub * out.p.col(keep) + tail * d.p.col(m);
  const double beta = rq.norm();
  if (beta <= dense::kDropTol * std::max(t_new.norm(), 1.0)) {
    out.t(keep, keep - 1) = 0.0;
    out.q.col(keep).setZero();
    out.p.col(keep).setZero();
    return out;
  }
  out.t(keep, keep - 1) = beta;
  out.q.col(keep) = rq / beta;
  out.p.col(keep) = rp / beta;
  return out;
}

GsoarDecomposition truncate(const GsoarDecomposition& d, const SweptState& s,
                            const RestoredState& r, Index keep) {
  RowVector b = RowVector::Zero(s.t.rows());
  b(b.size() - 1) = r.b_last;
  return truncate(d, s.vacc * r.w, r.t, b, keep);
}

GsoarDecomposition truncate(const GsoarDecomposition& d, const SweptState& s, Index keep) {
  return truncate(d, s.vacc, s.t, s.b, keep);
}

void reseed_residual(GsoarDecomposition& d, const Vector& fresh) {
  const Index k = d.steps;
  const auto basis = d.q.leftCols(k);
  Vector v = fresh;
  for (int pass = 0; pass < 2; ++pass) v -= basis * (basis.adjoint() * v);
  const double vn = v.norm();
  if (vn == 0.0) throw Error(ErrorKind::ZeroVector, "reseed vector lies in the kept subspace");
  d.q.col(k) = v / vn;
  d.p.col(k).setZero();
  d.t(k, k - 1) = 0.0;
  d.deflated[static_cast<std::size_t>(k)] = false;
}

}  // namespace qepsoar
