#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qepsoar/gsoar.hpp"
#include "qepsoar/problem.hpp"
#include "qepsoar/ritz.hpp"
#include "qepsoar/shifts.hpp"

namespace qepsoar {

/// IGSOAR / IRGSOAR apply every shift candidate per restart (see
/// RestartScheme); the *0 variants keep the f candidates farthest from the
/// target and truncate once. The R variants judge convergence on refined
/// Ritz vectors and derive shifts from them.
enum class Variant { IGSOAR, IRGSOAR, IGSOAR0, IRGSOAR0 };

const char* to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(const std::string& name);
bool uses_refined(Variant v) noexcept;
bool uses_all_shifts(Variant v) noexcept;

/// How the all-shifts variants absorb 2f shifts when only f fit one truncation.
///  Staged:   sweep and truncate in batches of at most m - kept shifts,
///            re-expanding between batches.
///  Restored: sweep with every shift, restore Hessenberg form, truncate once.
///            Re-expansion regenerates the previous subspace, so this scheme
///            makes no progress; it is kept for comparison.
enum class RestartScheme { Staged, Restored };

const char* to_string(RestartScheme s) noexcept;
std::optional<RestartScheme> parse_restart_scheme(const std::string& name);

struct SolverConfig {
  Index m = 20;         ///< subspace dimension
  Index k_wanted = 6;   ///< eigenpairs tested for convergence
  Index f = 10;         ///< castoff dimension; m - f vectors survive a restart
  Index l = 3;          ///< protection pad, k_wanted + l <= m - f
  double tol = 1e-10;
  Index max_restarts = 100;
  Variant variant = Variant::IRGSOAR;
  std::uint64_t seed = 1;
  TransformMode mode = TransformMode::ShiftInvert;
  /// Required for ShiftInvert; in Direct mode it only orders the pairs.
  std::optional<Complex> sigma;
  /// Record the decomposition residual after every expansion and restart.
  bool check_invariants = false;
  RestartScheme scheme = RestartScheme::Staged;

  Index kept() const { return m - f; }
};

/// Throws InvalidConfig describing the first violated constraint.
void validate(const SolverConfig& cfg, Index n);

struct RestartReport {
  Index cycle = 0;
  Index shifts_used = 0;
  Index candidates = 0;
  Index stages = 0;  ///< sweep-and-truncate passes in this restart
  double worst_residual = 0.0;
  std::vector<double> residuals;          ///< wanted pairs, in the variant's own vectors
  std::vector<double> ritz_residuals;     ///< wanted pairs, Ritz vectors
  std::vector<double> refined_residuals;  ///< wanted pairs, refined vectors (R variants)
  double soar_s = 0.0;
  double restart_s = 0.0;
  double find_s = 0.0;
  bool explicit_restart = false;  ///< deflation fallback was taken this cycle
  std::optional<DecompositionResidual> after_expansion;
  std::optional<DecompositionResidual> after_restart;
};

enum class SolveStatus { Converged, MaxRestarts, Breakdown };

const char* to_string(SolveStatus s) noexcept;

struct SolveResult {
  std::vector<ApproxEigenpair> pairs;  ///< the k_wanted pairs, nearest target first
  std::vector<RestartReport> history;  ///< one entry per convergence test
  SolveStatus status = SolveStatus::MaxRestarts;
  Index restarts = 0;
  Index expansion_steps = 0;
  Index warnings = 0;

  double soar_s() const;
  double restart_s() const;
  double find_s() const;
  double total_s() const { return soar_s() + restart_s() + find_s(); }
};

SolveResult solve(const QepProblem& p, const SolverConfig& cfg);

/// Explicit-restart fallback for a decomposition that carries zero q
/// columns: starts over from the sum of the lifted kept approximations
/// [theta y; y] (an eigenvector of [A B; I 0]) and re-expands to d.steps.
/// Returns d unchanged when there is no deflation.
GsoarDecomposition deflation_policy(const GsoarDecomposition& d, const SpectralTransform& t,
                                    const std::vector<ApproxEigenpair>& kept);

}  // namespace qepsoar
