#include "qepsoar/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "qepsoar/dense.hpp"
#include "qepsoar/error.hpp"

namespace qepsoar {

namespace {

constexpr double kRankTol = 1e-10;

bool farther(Complex a, Complex b) {
  return std::make_tuple(std::abs(a), a.real(), a.imag()) <
         std::make_tuple(std::abs(b), b.real(), b.imag());
}

}  // namespace

Matrix complement_basis(const Matrix& g) {
  const Index m = g.rows();
  const Index k = g.cols();
  if (k > m) throw Error(ErrorKind::RankDeficient, "more kept vectors than basis dimension");
  if (k == 0) return Matrix::Identity(m, m);
  Matrix normalized = g;
  for (Index j = 0; j < k; ++j) {
    const double nj = normalized.col(j).norm();
    if (nj == 0.0) throw Error(ErrorKind::RankDeficient, "zero kept vector");
    normalized.col(j) /= nj;
  }
  const auto f = dense::qr_factor(normalized);
  for (Index j = 0; j < k; ++j) {
    if (std::abs(f.r(j, j)) <= kRankTol) {
      throw Error(ErrorKind::RankDeficient, "kept vectors are linearly dependent");
    }
  }
  return f.v.rightCols(m - k);
}

Matrix independent_columns(const std::vector<Vector>& coords, Index keep, double tol) {
  if (coords.empty() || keep <= 0) return Matrix(0, 0);
  const Index m = coords.front().size();
  Matrix picked(m, std::min(keep, m));
  Matrix ortho(m, picked.cols());
  Index count = 0;
  for (const auto& v : coords) {
    if (count == picked.cols()) break;
    Vector w = v / v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      w -= ortho.leftCols(count) * (ortho.leftCols(count).adjoint() * w);
    }
    const double wn = w.norm();
    if (wn <= tol) continue;
    ortho.col(count) = w / wn;
    picked.col(count) = v;
    ++count;
  }
  return picked.leftCols(count);
}

ShiftSet shift_candidates(const ProjectedQep& mu, const Matrix& kept, PairKind kind) {
  ShiftSet out;
  out.kind = kind;
  const Matrix z = complement_basis(kept);
  if (z.cols() == 0) return out;
  const Matrix ms = z.adjoint() * mu.m * z;
  const Matrix cs = z.adjoint() * mu.c * z;
  const Matrix ks = z.adjoint() * mu.k * z;
  for (const auto& pair : solve_small_qep(ms, cs, ks)) out.candidates.push_back(pair.theta);
  return out;
}

ShiftSet select_shifts(ShiftSet s, ShiftStrategy strategy, Index count) {
  s.strategy = strategy;
  s.selected = s.candidates;
  std::stable_sort(s.selected.begin(), s.selected.end(), farther);
  if (strategy == ShiftStrategy::FarthestP) {
    const auto keep = static_cast<std::size_t>(std::clamp<Index>(count, 0, static_cast<Index>(s.selected.size())));
    s.selected.resize(keep);
  }
  return s;
}

}  // namespace qepsoar
