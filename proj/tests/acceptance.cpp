// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Benchmark runs print their per-seed restart counts and
// SOAR / RESTART / FIND timings before the summary.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qepsoar/benchmarks.hpp"
#include "qepsoar/dense.hpp"
#include "qepsoar/driver.hpp"
#include "qepsoar/restart.hpp"
#include "support.hpp"

using namespace qepsoar;
using testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Verdict> verdicts;

void record(int id, bool pass, const std::string& detail) {
  verdicts.push_back({id, pass, detail});
  std::printf("  -> criterion %d %s: %s\n", id, pass ? "pass" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};
constexpr Variant kVariants[] = {Variant::IRGSOAR, Variant::IGSOAR, Variant::IRGSOAR0, Variant::IGSOAR0};

struct Run {
  Variant variant;
  std::uint64_t seed;
  SolveStatus status;
  Index restarts;
  double soar, restart, find;
  double worst_invariant = 0.0;
  bool refined_dominates = true;
  double total() const { return soar + restart + find; }
  bool converged() const { return status == SolveStatus::Converged; }
};

struct Bench {
  std::string name;
  std::vector<Run> runs;
  std::vector<const Run*> of(Variant v) const {
    std::vector<const Run*> out;
    for (const auto& r : runs) if (r.variant == v) out.push_back(&r);
    return out;
  }
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// Unconverged runs count as infinitely many restarts.
double median_restarts(const Bench& b, Variant v) {
  std::vector<double> xs;
  for (const Run* r : b.of(v)) xs.push_back(r->converged() ? double(r->restarts) : 1e300);
  return median(xs);
}

double median_total(const Bench& b, Variant v) {
  std::vector<double> xs;
  for (const Run* r : b.of(v)) xs.push_back(r->total());
  return median(xs);
}

Bench run_example(bench::ExampleId id, const std::vector<Variant>& variants, bool invariants) {
  const auto spec = bench::example_spec(id);
  const QepProblem p = spec.problem(1.0);
  Bench out{bench::to_string(id), {}};
  std::printf("\n%s  n=%ld m=%ld f=%ld k=%ld l=%ld\n", out.name.c_str(), long(p.n()), long(spec.m),
              long(spec.f), long(spec.k_wanted), long(spec.l));
  std::printf("  %-9s %4s %8s %-11s %9s %9s %9s %9s\n", "variant", "seed", "restarts", "status", "SOAR",
              "RESTART", "FIND", "TOTAL");
  for (Variant v : variants) {
    for (std::uint64_t seed : kSeeds) {
      SolverConfig cfg = spec.config(v, seed);
      cfg.check_invariants = invariants;
      const auto res = solve(p, cfg);
      Run run{v, seed, res.status, res.restarts, res.soar_s(), res.restart_s(), res.find_s()};
      for (const auto& rep : res.history) {
        for (const auto& chk : {rep.after_expansion, rep.after_restart}) {
          if (chk) run.worst_invariant = std::max(run.worst_invariant, chk->worst());
        }
        for (std::size_t i = 0; i < rep.refined_residuals.size(); ++i) {
          if (!(rep.refined_residuals[i] <= rep.ritz_residuals[i] + 1e-12)) run.refined_dominates = false;
        }
        if (uses_refined(v) && rep.refined_residuals.size() != rep.ritz_residuals.size()) {
          run.refined_dominates = false;
        }
      }
      std::printf("  %-9s %4lu %8ld %-11s %9.3f %9.3f %9.3f %9.3f\n", to_string(v), static_cast<unsigned long>(seed),
                  long(run.restarts), to_string(run.status), run.soar, run.restart, run.find, run.total());
      std::fflush(stdout);
      out.runs.push_back(run);
    }
  }
  return out;
}

std::string restarts_text(double r) { return r >= 1e299 ? std::string("not converged") : fmt("%.0f", r); }

// --- 1 -----------------------------------------------------------------------
void criterion_restoration() {
  const auto start = Clock::now();
  Rng rng(2024);
  double worst[5] = {0, 0, 0, 0, 0};
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = rng.index(3, 40);
    SweptState s{rng.hessenberg(m), rng.row(m), testing::identity(m), 1.0};
    const auto r = restore_hessenberg(s);
    const double tn = s.t.norm(), bn = s.b.norm();
    RowVector target = RowVector::Zero(m);
    target(m - 1) = r.b_last;
    const double a = dense::below_subdiagonal_norm(r.t) / tn;
    const double b = dense::unitarity_defect(r.w) / std::sqrt(double(m));
    const double c = std::max((s.b * r.w - target).norm(), std::abs(std::abs(r.b_last) - bn)) / bn;
    const double similarity = (r.w.adjoint() * s.t * r.w - r.t).norm() / tn;
    const double d = testing::matching_distance(dense::eigenvalues(r.t), dense::eigenvalues(s.t)) / tn;
    ok = ok && a <= 1e-12 && b <= 1e-12 && c <= 1e-12 && d <= 1e-10 && similarity <= 1e-12;
    const double now[5] = {a, b, c, d, similarity};
    for (int i = 0; i < 5; ++i) worst[i] = std::max(worst[i], now[i]);
  }
  const double t = elapsed(start);
  record(1, ok && t < 5.0,
         fmt("200 instances, worst below-sub %.1e, unitarity %.1e, row %.1e", worst[0], worst[1], worst[2]) +
             fmt(", spectrum %.1e, similarity %.1e", worst[3], worst[4]) + fmt(", %.2f s", t));
}

// --- 3 -----------------------------------------------------------------------
void criterion_oracle() {
  const auto start = Clock::now();
  Rng rng(3033);
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.index(8, 30);
    const QepProblem p = testing::random_qep(rng, n);
    SolverConfig cfg;
    cfg.m = n;
    cfg.k_wanted = 4;
    cfg.l = 0;
    cfg.f = n - 4;
    cfg.sigma = rng.complex();
    cfg.seed = static_cast<std::uint64_t>(trial + 1);
    const auto res = solve(p, cfg);
    const auto want = testing::nearest(testing::qep_eigenvalues(p), *cfg.sigma, 4);
    ok = ok && res.restarts == 0 && res.pairs.size() == 4;
    for (std::size_t i = 0; i < res.pairs.size() && i < want.size(); ++i) {
      const double err = testing::distance_to_set(res.pairs[i].lambda, want) / std::abs(want[i]);
      worst = std::max(worst, err);
    }
  }
  const double t = elapsed(start);
  record(3, ok && worst <= 1e-8 && t < 10.0, fmt("20 problems, worst relative error %.1e, %.2f s", worst, t));
}

// --- 9 -----------------------------------------------------------------------
void criterion_fill_in() {
  Rng rng(909);
  const Index m = 20;
  Matrix t = rng.hessenberg(m);
  RowVector b = RowVector::Unit(m, m - 1);
  bool zeros_ok = true, dense_ok = true;
  double worst_leading = 0.0;
  for (Index j = 1; j <= m + 5; ++j) {
    const auto s = dense::shifted_qr_sweep(t, b, rng.complex());
    t = s.t;
    b = s.b;
    const double bn = b.norm();
    if (j <= m - 2) {
      const double lead = b.head(m - j - 1).cwiseAbs().maxCoeff() / bn;
      worst_leading = std::max(worst_leading, lead);
      zeros_ok = zeros_ok && lead <= 1e-13;
    }
    if (j >= m) dense_ok = dense_ok && b.cwiseAbs().minCoeff() > 1e-13 * bn;
  }
  record(9, zeros_ok && dense_ok,
         fmt("leading entries <= %.1e of ||b|| for j <= 18; dense for j >= 20: ", worst_leading) +
             (dense_ok ? "yes" : "no"));
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_restoration();
  criterion_oracle();
  criterion_fill_in();

  const std::vector<Variant> all(std::begin(kVariants), std::end(kVariants));
  const Bench ex41 = run_example(bench::ExampleId::Ex41, {Variant::IRGSOAR, Variant::IGSOAR}, false);
  const Bench ex42 = run_example(bench::ExampleId::Ex42a, all, true);
  const Bench ex43 = run_example(bench::ExampleId::Ex43a, all, true);
  std::printf("\n");

  // 2: invariants on every cycle of the Ex42a and Ex43a runs.
  double inv = 0.0;
  for (const Bench* b : {&ex42, &ex43}) {
    for (const auto& r : b->runs) inv = std::max(inv, r.worst_invariant);
  }
  record(2, inv <= 1e-10, fmt("worst scaled block-row residual %.1e over 40 runs", inv));

  // 4: refined never worse than Ritz in any refined-variant cycle.
  bool dominates = true;
  int refined_runs = 0;
  for (const Bench* b : {&ex41, &ex42, &ex43}) {
    for (const auto& r : b->runs) {
      if (!uses_refined(r.variant)) continue;
      ++refined_runs;
      dominates = dominates && r.refined_dominates;
    }
  }
  record(4, dominates && refined_runs > 0, fmt("%.0f refined-variant runs checked on every cycle", refined_runs));

  {
    const double r = median_restarts(ex41, Variant::IRGSOAR), g = median_restarts(ex41, Variant::IGSOAR);
    record(5, r <= 6 && g <= 6,
           "median restarts IRGSOAR " + restarts_text(r) + ", IGSOAR " + restarts_text(g) + " (limit 6)");
  }
  {
    const double r = median_restarts(ex42, Variant::IRGSOAR), g = median_restarts(ex42, Variant::IGSOAR);
    const double r0 = median_restarts(ex42, Variant::IRGSOAR0), g0 = median_restarts(ex42, Variant::IGSOAR0);
    // An unconverged baseline ran to the cap, which also satisfies ">= 30".
    const bool ok = r <= 10 && g <= 12 && r0 >= 30 && g0 >= 30;
    record(6, ok, "median restarts IRGSOAR " + restarts_text(r) + " (<= 10), IGSOAR " + restarts_text(g) +
                      " (<= 12), IRGSOAR0 " + restarts_text(r0) + ", IGSOAR0 " + restarts_text(g0) + " (>= 30)");
  }
  {
    const double r = median_restarts(ex43, Variant::IRGSOAR), g = median_restarts(ex43, Variant::IGSOAR);
    auto capped = [&](Variant v) {
      int n = 0;
      for (const Run* run : ex43.of(v)) n += (!run->converged() && run->restarts >= 100) ? 1 : 0;
      return n;
    };
    const int r0 = capped(Variant::IRGSOAR0), g0 = capped(Variant::IGSOAR0);
    const bool ok = r <= 6 && g <= 6 && r0 >= 3 && g0 >= 3;
    record(7, ok, "median restarts IRGSOAR " + restarts_text(r) + ", IGSOAR " + restarts_text(g) +
                      " (<= 6); runs capped at 100 unconverged: IRGSOAR0 " + std::to_string(r0) +
                      "/5, IGSOAR0 " + std::to_string(g0) + "/5");
  }
  {
    bool ok = true;
    std::string detail;
    for (const Bench* b : {&ex42, &ex43}) {
      for (auto [fast, slow] : {std::pair{Variant::IRGSOAR, Variant::IRGSOAR0}, std::pair{Variant::IGSOAR, Variant::IGSOAR0}}) {
        const double tf = median_total(*b, fast), ts = median_total(*b, slow);
        ok = ok && tf < 0.5 * ts;
        detail += b->name + " " + to_string(fast) + "/" + to_string(slow) + fmt(" %.2f; ", tf / ts);
      }
    }
    record(8, ok, "median TOTAL ratios (limit 0.5): " + detail);
  }

  std::printf("\nsummary\n");
  std::sort(verdicts.begin(), verdicts.end(), [](const Verdict& a, const Verdict& b) { return a.id < b.id; });
  bool all_pass = true;
  for (const auto& v : verdicts) {
    std::printf("[%s] criterion %d: %s\n", v.pass ? "PASS" : "FAIL", v.id, v.detail.c_str());
    all_pass = all_pass && v.pass;
  }
  return all_pass ? 0 : 1;
}
