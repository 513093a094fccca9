#pragma once

#include <vector>

#include "qepsoar/ritz.hpp"
#include "qepsoar/types.hpp"

namespace qepsoar {

enum class ShiftStrategy { AllShifts, FarthestP };

/// Shift candidates in mu coordinates and the subset chosen for a restart.
struct ShiftSet {
  std::vector<Complex> candidates;
  std::vector<Complex> selected;
  ShiftStrategy strategy = ShiftStrategy::AllShifts;
  PairKind kind = PairKind::Ritz;
};

/// Orthonormal basis Z (m x (m - k)) of the orthogonal complement of the
/// columns of G (m x k) in C^m. Throws RankDeficient if rank(G) < k.
Matrix complement_basis(const Matrix& g);

/// Greedily picks up to `keep` of `coords` (in order) that are numerically
/// independent of the ones already picked; returns them as columns.
Matrix independent_columns(const std::vector<Vector>& coords, Index keep, double tol = 1e-8);

/// Projects the mu-domain small QEP onto the complement of span(G) and
/// returns its 2p eigenvalues (p = m - k) as candidates. With p == 0 the
/// candidate set is empty.
ShiftSet shift_candidates(const ProjectedQep& mu_projection, const Matrix& kept, PairKind kind);

/// AllShifts keeps every candidate; FarthestP keeps the `count` candidates of
/// smallest |mu| (farthest from the target). Either way `selected` comes out
/// sorted by (|mu|, real, imag), which is also the application order.
ShiftSet select_shifts(ShiftSet s, ShiftStrategy strategy, Index count);

}  // namespace qepsoar
