#include "qepsoar/dense.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qepsoar/error.hpp"

namespace qepsoar::dense {

namespace {

Complex unit_phase(Complex z) {
  const double a = std::abs(z);
  return a == 0.0 ? Complex(1.0, 0.0) : z / a;
}

}  // namespace

void Reflector::apply_left(Matrix& a) const {
  if (is_identity()) return;
  auto block = a.middleRows(offset, size());
  const RowVector w = v.adjoint() * block;
  block.noalias() -= (beta * v) * w;
}

void Reflector::apply_right(Matrix& a) const {
  if (is_identity()) return;
  auto block = a.middleCols(offset, size());
  const Vector w = block * v;
  block.noalias() -= (beta * w) * v.adjoint();
}

void Reflector::apply_right(RowVector& row) const {
  if (is_identity()) return;
  auto seg = row.segment(offset, size());
  const Complex w = (seg * v).value();
  seg -= (beta * w) * v.adjoint();
}

Matrix Reflector::to_matrix(Index dim) const {
  Matrix h = Matrix::Identity(dim, dim);
  apply_left(h);
  return h;
}

Reflector make_reflector(const Vector& x, Index target, Complex* alpha) {
  Reflector h;
  h.v = x;
  const double nx = x.norm();
  if (nx == 0.0) {
    if (alpha) *alpha = Complex(0.0, 0.0);
    return h;
  }
  const Complex phase = unit_phase(x(target));
  h.v(target) += phase * nx;
  h.beta = 2.0 / h.v.squaredNorm();
  if (alpha) *alpha = -phase * nx;
  return h;
}

ReflectorToLast householder_to_last(const Vector& b, double scale) {
  if (b.size() == 0 || b.norm() <= kDropTol * scale) {
    throw Error(ErrorKind::ZeroVector, "vector norm below drop tolerance");
  }
  ReflectorToLast out;
  out.reflector = make_reflector(b, b.size() - 1, &out.alpha);
  return out;
}

QrFactors qr_factor(const Matrix& a) {
  const Index rows = a.rows();
  const Index cols = a.cols();
  QrFactors f{Matrix::Identity(rows, rows), a};
  const Index steps = std::min(rows - 1, cols);
  for (Index j = 0; j < steps; ++j) {
    const Index len = rows - j;
    if (f.r.col(j).tail(len - 1).squaredNorm() == 0.0) continue;
    Reflector h = make_reflector(f.r.col(j).tail(len), 0);
    h.offset = j;
    h.apply_left(f.r);
    h.apply_right(f.v);
    f.r.col(j).tail(len - 1).setZero();
  }
  return f;
}

SweepResult shifted_qr_sweep(const Matrix& t, const RowVector& b, Complex mu) {
  Matrix shifted = t;
  shifted.diagonal().array() -= mu;
  SweepResult out;
  out.v = qr_factor(shifted).v;
  out.t = out.v.adjoint() * t * out.v;
  clear_below_subdiagonal(out.t);
  out.b = b * out.v;
  return out;
}

std::vector<EigenPair> dense_eig(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> solver;
  solver.setMaxIterations(50 * std::max<Index>(a.rows(), 1));
  solver.compute(a, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "dense eigensolver exceeded its sweep budget");
  }
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(a.rows()));
  for (Index i = 0; i < a.rows(); ++i) {
    Vector v = solver.eigenvectors().col(i);
    v.normalize();
    pairs.push_back({solver.eigenvalues()(i), std::move(v)});
  }
  return pairs;
}

std::vector<Complex> eigenvalues(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> solver;
  solver.setMaxIterations(50 * std::max<Index>(a.rows(), 1));
  solver.compute(a, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "dense eigensolver exceeded its sweep budget");
  }
  const Vector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SingularTriple smallest_right_singular_vector(const Matrix& s) {
  // The QR preconditioner reduces a tall S to its triangular factor before
  // the one-sided Jacobi sweeps; squaring through S^H S is never formed.
  Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> svd(s, Eigen::ComputeFullV);
  const Index last = s.cols() - 1;
  SingularTriple out;
  out.sigma_min = svd.singularValues()(last);
  out.z = svd.matrixV().col(last);
  Index big = 0;
  out.z.cwiseAbs().maxCoeff(&big);
  out.z *= std::conj(unit_phase(out.z(big)));
  out.z.normalize();
  return out;
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

double below_subdiagonal_norm(const Matrix& t) {
  double sum = 0.0;
  for (Index j = 0; j < t.cols(); ++j) {
    for (Index i = j + 2; i < t.rows(); ++i) sum += std::norm(t(i, j));
  }
  return std::sqrt(sum);
}

void clear_below_subdiagonal(Matrix& t) {
  for (Index j = 0; j < t.cols(); ++j) {
    for (Index i = j + 2; i < t.rows(); ++i) t(i, j) = Complex(0.0, 0.0);
  }
}

}  // namespace qepsoar::dense
