#pragma once

#include <vector>

#include "qepsoar/gsoar.hpp"
#include "qepsoar/types.hpp"

namespace qepsoar {

/// T_m after a sequence of shifted QR sweeps together with the residual row
/// b (which starts as t_{m+1,m} e_m^T and is carried through each sweep).
struct SweptState {
  Matrix t;
  RowVector b;
  Matrix vacc;  ///< accumulated unitary, T = vacc^H T0 vacc
  Complex t_last;
};

/// One shifted_qr_sweep per shift, in the order given. Any number of shifts
/// is allowed, including more than m.
SweptState apply_shifts(const Matrix& t0, Complex t_last, const std::vector<Complex>& shifts);

struct RestoredState {
  Matrix t;  ///< upper Hessenberg, unitarily similar to the swept T
  Matrix w;  ///< unitary with e_m^T w_tail = e_m^T and b w = b_last e_m^T
  Complex b_last;
};

/// Returns T to upper Hessenberg form while collapsing the residual row onto
/// its last entry: one reflector W1 with b W1 = alpha e_m^T, then a chain of
/// reflectors acting on leading blocks, working from the bottom row up, each
/// annihilating the part of its row left of the subdiagonal. Throws
/// ZeroResidualRow when ||b|| is below the drop tolerance.
RestoredState restore_hessenberg(const SweptState& s);

/// Truncates the relation
///   H [Q X; P X] = [Q X; P X] T' + [q_{m+1}; p_{m+1}] b
/// to its first `keep` columns. Throws InvalidTruncation when b has
/// nonzeros among its first keep - 1 entries (too many shifts for the
/// restoration-free path). The new residual vector is normalized so that
/// t_{keep+1,keep} is real and nonnegative; a zero value means span(Q') is
/// invariant and the caller must supply a fresh direction.
GsoarDecomposition truncate(const GsoarDecomposition& d, const Matrix& transform,
                            const Matrix& t_new, const RowVector& b, Index keep);

/// All-shifts path: combined transform vacc * w, residual row b_last e_m^T.
GsoarDecomposition truncate(const GsoarDecomposition& d, const SweptState& s,
                            const RestoredState& r, Index keep);

/// Restoration-free path (at most m - keep shifts).
GsoarDecomposition truncate(const GsoarDecomposition& d, const SweptState& s, Index keep);

/// Replaces a vanished residual direction with `fresh` orthogonalized
/// against the kept basis; t_{k+1,k} stays zero so the relation is exact.
void reseed_residual(GsoarDecomposition& d, const Vector& fresh);

}  // namespace qepsoar
