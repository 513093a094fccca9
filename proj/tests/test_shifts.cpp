#include <doctest.h>

#include "qepsoar/error.hpp"
#include "qepsoar/shifts.hpp"
#include "support.hpp"

using namespace qepsoar;
using testing::Rng;

TEST_CASE("complement_basis of coordinate and random vectors") {
  const Matrix z = complement_basis(Matrix(Vector::Unit(3, 0)));
  REQUIRE(z.cols() == 2);
  CHECK(z.row(0).norm() < 1e-15);
  CHECK((z.adjoint() * z - testing::identity(2)).norm() < 1e-14);

  Rng rng(61);
  const Matrix g = rng.matrix(9, 4);
  const Matrix c = complement_basis(g);
  REQUIRE(c.cols() == 5);
  CHECK((g.adjoint() * c).norm() <= 1e-13 * g.norm());
  CHECK((c.adjoint() * c - testing::identity(5)).norm() < 1e-13);

  CHECK(complement_basis(Matrix(4, 0)).cols() == 4);
}

TEST_CASE("complement_basis rejects dependent kept vectors") {
  Matrix g(3, 2);
  g.col(0) = Vector::Unit(3, 0);
  g.col(1) = 2.0 * Vector::Unit(3, 0);
  try {
    complement_basis(g);
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankDeficient);
  }
}

TEST_CASE("independent_columns skips dependent coordinates") {
  std::vector<Vector> coords{Vector::Unit(4, 0), 3.0 * Vector::Unit(4, 0), Vector::Unit(4, 1),
                             Vector::Unit(4, 2)};
  const Matrix picked = independent_columns(coords, 2);
  REQUIRE(picked.cols() == 2);
  CHECK((picked.col(0) - Vector::Unit(4, 0)).norm() == 0.0);
  CHECK((picked.col(1) - Vector::Unit(4, 1)).norm() == 0.0);
}

TEST_CASE("no complement means no candidates") {
  Rng rng(62);
  const ProjectedQep mu{testing::identity(3), rng.matrix(3, 3), rng.matrix(3, 3)};
  const auto s = shift_candidates(mu, testing::identity(3), PairKind::Ritz);
  CHECK(s.candidates.empty());
  CHECK(select_shifts(s, ShiftStrategy::AllShifts, 0).selected.empty());
}

TEST_CASE("proportional damping: candidates are the unwanted eigenvalues") {
  // M = I, C = a I, K = diag(d) in eigenvector coordinates; keeping the
  // first k coordinates leaves the roots of t^2 + a t + d_i, i > k.
  const Index m = 7, k = 3;
  const double a = 0.4;
  Vector d(m);
  for (Index i = 0; i < m; ++i) d(i) = double(i + 1);
  const ProjectedQep mu{testing::identity(m), a * testing::identity(m), Matrix(d.asDiagonal())};
  const auto s = shift_candidates(mu, testing::identity(m).leftCols(k), PairKind::Ritz);
  REQUIRE(s.candidates.size() == static_cast<std::size_t>(2 * (m - k)));
  std::vector<Complex> expected;
  for (Index i = k; i < m; ++i) {
    const Complex disc = std::sqrt(Complex(a * a - 4.0 * d(i).real(), 0.0));
    expected.push_back((-a + disc) / 2.0);
    expected.push_back((-a - disc) / 2.0);
  }
  CHECK(testing::matching_distance(s.candidates, expected) < 1e-12);
}

TEST_CASE("FarthestP keeps the smallest |mu| and AllShifts keeps all") {
  ShiftSet s;
  s.candidates = {3.0, Complex(0.0, 2.0), -1.0, 0.5};
  const auto far = select_shifts(s, ShiftStrategy::FarthestP, 2);
  REQUIRE(far.selected.size() == 2);
  CHECK(far.selected[0] == Complex(0.5, 0.0));
  CHECK(far.selected[1] == Complex(-1.0, 0.0));
  CHECK(far.strategy == ShiftStrategy::FarthestP);

  Rng rng(63);
  ShiftSet ten;
  for (int i = 0; i < 10; ++i) ten.candidates.push_back(rng.complex());
  const auto all = select_shifts(ten, ShiftStrategy::AllShifts, 3);
  REQUIRE(all.selected.size() == 10);
  for (std::size_t i = 1; i < 10; ++i) CHECK(std::abs(all.selected[i - 1]) <= std::abs(all.selected[i]));
  CHECK(testing::matching_distance(all.selected, ten.candidates) == 0.0);
}

TEST_CASE("a conjugate pair may be split at the cut") {
  ShiftSet s;
  s.candidates = {Complex(1.0, 1.0), Complex(1.0, -1.0), 3.0};
  const auto one = select_shifts(s, ShiftStrategy::FarthestP, 1);
  REQUIRE(one.selected.size() == 1);
  CHECK(one.selected[0] == Complex(1.0, -1.0));
  CHECK(select_shifts(s, ShiftStrategy::FarthestP, 10).selected.size() == 3);
}
