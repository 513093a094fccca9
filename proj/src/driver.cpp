#include "qepsoar/driver.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <string>

#include "qepsoar/error.hpp"
#include "qepsoar/restart.hpp"

namespace qepsoar {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Vector random_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

const char* to_string(Variant v) noexcept {
  switch (v) {
    case Variant::IGSOAR: return "igsoar";
    case Variant::IRGSOAR: return "irgsoar";
    case Variant::IGSOAR0: return "igsoar0";
    case Variant::IRGSOAR0: return "irgsoar0";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(const std::string& name) {
  for (Variant v : {Variant::IGSOAR, Variant::IRGSOAR, Variant::IGSOAR0, Variant::IRGSOAR0}) {
    if (name == to_string(v)) return v;
  }
  return std::nullopt;
}

bool uses_refined(Variant v) noexcept { return v == Variant::IRGSOAR || v == Variant::IRGSOAR0; }

bool uses_all_shifts(Variant v) noexcept { return v == Variant::IGSOAR || v == Variant::IRGSOAR; }

const char* to_string(RestartScheme s) noexcept {
  switch (s) {
    case RestartScheme::Restored: return "restored";
    case RestartScheme::Staged: return "staged";
  }
  return "unknown";
}

std::optional<RestartScheme> parse_restart_scheme(const std::string& name) {
  if (name == "restored") return RestartScheme::Restored;
  if (name == "staged") return RestartScheme::Staged;
  return std::nullopt;
}

const char* to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxRestarts: return "max_restarts";
    case SolveStatus::Breakdown: return "breakdown";
  }
  return "unknown";
}

double SolveResult::soar_s() const {
  double s = 0.0;
  for (const auto& r : history) s += r.soar_s;
  return s;
}

double SolveResult::restart_s() const {
  double s = 0.0;
  for (const auto& r : history) s += r.restart_s;
  return s;
}

double SolveResult::find_s() const {
  double s = 0.0;
  for (const auto& r : history) s += r.find_s;
  return s;
}

void validate(const SolverConfig& cfg, Index n) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (cfg.m < 2) fail("m must be at least 2");
  if (cfg.m > n) fail("m exceeds the problem dimension");
  if (cfg.k_wanted < 1) fail("k must be positive");
  if (cfg.f < 1 || cfg.f >= cfg.m) fail("f must satisfy 1 <= f < m");
  if (cfg.l < 0) fail("l must be nonnegative");
  if (cfg.k_wanted + cfg.l > cfg.m - cfg.f) fail("k + l must not exceed m - f");
  if (!(cfg.tol > 0.0)) fail("tol must be positive");
  if (cfg.max_restarts < 0) fail("max_restarts must be nonnegative");
}

GsoarDecomposition deflation_policy(const GsoarDecomposition& d, const SpectralTransform& t,
                                    const std::vector<ApproxEigenpair>& kept) {
  if (!d.has_deflation()) return d;
  Vector u1 = Vector::Zero(d.n());
  Vector u2 = Vector::Zero(d.n());
  // [theta y; y] is an eigenvector of [A B; I 0]; scale it so neither
  // block blows up when theta is tiny.
  for (const auto& pair : kept) {
    if (std::abs(pair.theta) >= 1.0) {
      u1 += pair.y;
      u2 += pair.y / pair.theta;
    } else {
      u1 += pair.theta * pair.y;
      u2 += pair.y;
    }
  }
  if (kept.empty() || u1.norm() == 0.0 || u2.norm() == 0.0) {
    const Matrix qnz = d.nonzero_q(d.steps);
    u1 = qnz.rowwise().sum();
    u2 = u1;
  }
  GsoarDecomposition fresh = gsoar_start(t, u1, u2);
  gsoar_extend(fresh, t, d.steps);
  return fresh;
}

SolveResult solve(const QepProblem& p, const SolverConfig& cfg) {
  validate(cfg, p.n());
  const SpectralTransform t = build_transform(p, cfg.mode, cfg.sigma);
  const bool refined = uses_refined(cfg.variant);
  const bool all_shifts = uses_all_shifts(cfg.variant);
  const Index keep = cfg.kept();

  std::mt19937_64 rng(cfg.seed);
  const Vector u1 = random_vector(rng, p.n());
  const Vector u2 = random_vector(rng, p.n());

  SolveResult result;
  auto clock = Clock::now();
  GsoarDecomposition d = gsoar_start(t, u1, u2);
  bool broke_down = gsoar_extend(d, t, cfg.m) == ExtendStatus::Breakdown;
  result.expansion_steps = d.steps;
  double pending_soar = seconds_since(clock);

  for (Index cycle = 0;; ++cycle) {
    RestartReport rep;
    rep.cycle = cycle;
    rep.soar_s = pending_soar;
    pending_soar = 0.0;
    if (cfg.check_invariants) rep.after_expansion = decomposition_residual(d, t);

    clock = Clock::now();
    const SubspaceProjection proj(p, t, d.nonzero_q(d.steps));
    rep.soar_s += seconds_since(clock);

    clock = Clock::now();
    std::vector<ApproxEigenpair> pairs = ritz_pairs(proj, t, cfg.k_wanted);
    const auto wanted_count = std::min<std::size_t>(static_cast<std::size_t>(cfg.k_wanted), pairs.size());
    std::vector<ApproxEigenpair> wanted;
    for (std::size_t i = 0; i < wanted_count; ++i) {
      rep.ritz_residuals.push_back(pairs[i].residual);
      wanted.push_back(refined ? refine_pair(pairs[i], proj) : pairs[i]);
      if (refined) rep.refined_residuals.push_back(wanted.back().residual);
      rep.residuals.push_back(wanted.back().residual);
    }
    const auto check = check_convergence(wanted, cfg.tol);
    rep.worst_residual = check.worst;
    rep.find_s = seconds_since(clock);

    auto finish = [&](SolveStatus status) {
      result.status = status;
      result.restarts = cycle;
      result.pairs = std::move(wanted);
      result.history.push_back(std::move(rep));
    };
    if (check.converged && static_cast<Index>(wanted_count) == cfg.k_wanted) {
      finish(SolveStatus::Converged);
      break;
    }
    if (broke_down) {
      finish(SolveStatus::Breakdown);
      break;
    }
    if (cycle == cfg.max_restarts) {
      finish(SolveStatus::MaxRestarts);
      break;
    }

    if (d.has_deflation()) {
      clock = Clock::now();
      std::vector<ApproxEigenpair> kept_pairs(pairs.begin(), pairs.begin() + std::min<std::size_t>(pairs.size(), static_cast<std::size_t>(keep)));
      d = deflation_policy(d, t, kept_pairs);
      broke_down = gsoar_extend(d, t, cfg.m) == ExtendStatus::Breakdown;
      rep.soar_s += seconds_since(clock);
      rep.explicit_restart = true;
      ++result.warnings;
      result.expansion_steps += d.steps;
      result.history.push_back(std::move(rep));
      continue;
    }

    // Shift candidates from the complement of the kept approximations.
    clock = Clock::now();
    std::vector<Vector> coords;
    Matrix kept_coords;
    std::size_t next = 0;
    while (true) {
      const std::size_t want = static_cast<std::size_t>(keep) - static_cast<std::size_t>(kept_coords.cols());
      for (std::size_t i = 0; i < want && next < pairs.size(); ++i, ++next) {
        const auto& pair = pairs[next];
        coords.push_back(refined ? (next < wanted.size() ? wanted[next].g : refine_pair(pair, proj).g) : pair.g);
      }
      kept_coords = independent_columns(coords, keep);
      if (kept_coords.cols() == keep || next >= pairs.size()) break;
    }
    ShiftSet shifts = shift_candidates(proj.mu_projection(), kept_coords,
                                       refined ? PairKind::Refined : PairKind::Ritz);
    shifts = select_shifts(std::move(shifts), all_shifts ? ShiftStrategy::AllShifts : ShiftStrategy::FarthestP,
                           cfg.m - keep);
    rep.candidates = static_cast<Index>(shifts.candidates.size());
    rep.shifts_used = static_cast<Index>(shifts.selected.size());
    rep.find_s += seconds_since(clock);

    clock = Clock::now();
    const auto& selected = shifts.selected;
    if (all_shifts && cfg.scheme == RestartScheme::Restored) {
      const SweptState swept = apply_shifts(d.t_square(), d.t_last(), selected);
      try {
        d = truncate(d, swept, restore_hessenberg(swept), keep);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroResidualRow) throw;
        d = truncate(d, swept.vacc, swept.t, RowVector::Zero(cfg.m), keep);
      }
      rep.stages = 1;
    } else {
      // One truncation absorbs at most m - kept shifts; the rest go in later
      // stages after re-expanding back to m.
      const auto batch = static_cast<std::size_t>(cfg.m - keep);
      for (std::size_t first = 0; first < selected.size() || first == 0; first += batch) {
        if (first > 0) {
          if (d.t(keep, keep - 1) == Complex(0.0, 0.0)) reseed_residual(d, random_vector(rng, p.n()));
          rep.restart_s += seconds_since(clock);
          clock = Clock::now();
          const bool stop = gsoar_extend(d, t, cfg.m) == ExtendStatus::Breakdown;
          result.expansion_steps += d.steps - keep;
          rep.soar_s += seconds_since(clock);
          clock = Clock::now();
          if (stop) break;
        }
        const auto last = std::min(selected.size(), first + batch);
        const std::vector<Complex> part(selected.begin() + static_cast<std::ptrdiff_t>(first),
                                        selected.begin() + static_cast<std::ptrdiff_t>(last));
        d = truncate(d, apply_shifts(d.t_square(), d.t_last(), part), keep);
        ++rep.stages;
      }
    }
    if (d.t(keep, keep - 1) == Complex(0.0, 0.0)) {
      reseed_residual(d, random_vector(rng, p.n()));
    }
    rep.restart_s += seconds_since(clock);
    if (cfg.check_invariants) rep.after_restart = decomposition_residual(d, t);

    clock = Clock::now();
    broke_down = gsoar_extend(d, t, cfg.m) == ExtendStatus::Breakdown;
    result.expansion_steps += d.steps - keep;
    pending_soar = seconds_since(clock);
    result.history.push_back(std::move(rep));
  }
  return result;
}

}  // namespace qepsoar
