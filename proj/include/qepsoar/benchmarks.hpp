#pragma once

#include <optional>
#include <string>

#include "qepsoar/driver.hpp"
#include "qepsoar/problem.hpp"

/// Benchmark QEPs: an acoustic wave problem in a closed box with one
/// impedance wall (4.1), a damped tridiagonal mass-spring chain (4.2) and a
/// nonsymmetric banded damping model (4.3), each with its reference
/// solver parameters.
namespace qepsoar::bench {

/// Acoustic problem on a q x q mesh with h = 1/q; n = (q - 1) q.
QepProblem gen_example_41(Index q = 90, double xi = 1.0);

/// M = I, C = tau * tridiag(-1, 3, -1), K = kappa * tridiag(-1, 3, -1).
QepProblem gen_example_42(double tau = 10.0, double kappa = 5.0, Index n = 5000);

/// M = I, C and K nonsymmetric tridiagonal with modified corner entries.
QepProblem gen_example_43(Index n = 5000);

enum class ExampleId { Ex41, Ex42a, Ex42b, Ex43a, Ex43b };

struct ExampleSpec {
  ExampleId id;
  Index n;
  Index m;
  Index f;
  Index k_wanted;
  Index l;
  double tol;
  TransformMode mode;
  Complex sigma;  ///< shift-invert pole, or the ordering target in direct mode

  SolverConfig config(Variant variant, std::uint64_t seed = 1) const;
  QepProblem problem(double xi = 1.0) const;
};

ExampleSpec example_spec(ExampleId id);
std::optional<ExampleId> parse_example(const std::string& name);
const char* to_string(ExampleId id) noexcept;

}  // namespace qepsoar::bench
