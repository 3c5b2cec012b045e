// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eflow/dualcut.hpp"
#include "eflow/electrical.hpp"
#include "eflow/exact.hpp"
#include "eflow/generator.hpp"
#include "eflow/improved.hpp"
#include "eflow/mw_simple.hpp"
#include "test_support.hpp"

using namespace eflow;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail << message;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// ---------------------------------------------------------------------------
// 1. Electrical-flow oracle equivalence: certified solves meet all three
//    approximation conditions against the exact solver.
// ---------------------------------------------------------------------------
Check criterion1() {
  Check c;
  std::mt19937_64 rng(20250101);
  std::vector<Graph> corpus = test::random_corpus(200, 4, 60, 120, 64, 8101);
  int checked = 0;
  for (const Graph& g : corpus) {
    ResistanceVector r(test::random_resistances(g.edge_count(), 1.0, 10.0, rng));
    auto sys = assemble(g, r);
    std::uniform_real_distribution<double> f_dist(0.5, 8.0);
    double F = f_dist(rng);
    auto exact = solve_exact(sys, F);
    double n = g.vertex_count(), m = g.edge_count(), big_r = r.ratio();
    double reff = exact.energy / (F * F);

    for (double delta : {0.3, 0.01}) {
      auto approx = solve_approx(sys, F, delta);
      c.expect(approx.energy <= (1.0 + delta) * exact.energy,
               "condition (a) failed: energy " + fmt(approx.energy) + " vs optimal " +
                   fmt(exact.energy) + " at delta " + fmt(delta));
      double edge_budget = delta / (2.0 * m * big_r) * exact.energy + 1e-9;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        double fe = exact.flow[static_cast<std::size_t>(e)];
        double fa = approx.flow[static_cast<std::size_t>(e)];
        c.expect(std::abs(r.at(e) * (fe * fe - fa * fa)) <= edge_budget,
                 "condition (b) failed on an edge at delta " + fmt(delta));
      }
      double drop = approx.potentials[static_cast<std::size_t>(g.source())] -
                    approx.potentials[static_cast<std::size_t>(g.sink())];
      c.expect(drop >= (1.0 - delta / (12.0 * n * m * big_r)) * F * reff - 1e-9,
               "condition (c) failed: drop " + fmt(drop) + " vs F*Reff " + fmt(F * reff));
      ++checked;
    }
    if (!c.ok) break;
  }
  c.detail << " (" << checked << " certified solves)";
  return c;
}

// ---------------------------------------------------------------------------
// 2. Worked example: k paths of length k plus a shortcut, unit resistances.
// ---------------------------------------------------------------------------
Check criterion2() {
  Check c;
  for (int k : {4, 8, 16}) {
    Graph g = gen_paths_with_shortcut(k);
    auto sys = assemble(g, ResistanceVector::uniform(g.edge_count(), 1.0));
    auto flow = solve_exact(sys, static_cast<double>(k + 1));
    c.expect(std::abs(flow.flow[0] - (k + 1) / 2.0) <= 1e-9,
             "shortcut flow off at k=" + std::to_string(k) + ": " + fmt(flow.flow[0]));
    for (EdgeId e = 1; e < g.edge_count(); ++e)
      c.expect(std::abs(std::abs(flow.flow[static_cast<std::size_t>(e)]) -
                        (k + 1) / (2.0 * k)) <= 1e-9,
               "path edge flow off at k=" + std::to_string(k));
    double reff = solve_exact(sys, 1.0).energy;
    c.expect(std::abs(reff - 0.5) <= 1e-9,
             "Reff off at k=" + std::to_string(k) + ": " + fmt(reff));
  }
  return c;
}

// 95 small graphs plus 5 mid-size ones; shared by criteria 3, 4, 5, 6, 9, 10.
std::vector<Graph> shared_corpus() {
  std::vector<Graph> corpus = test::random_corpus(95, 4, 10, 6, 16, 90210);
  std::vector<Graph> medium = test::random_corpus(5, 20, 40, 30, 16, 60601);
  corpus.insert(corpus.end(), medium.begin(), medium.end());
  return corpus;
}

// ---------------------------------------------------------------------------
// 3. Simple algorithm guarantee under binary search.
// ---------------------------------------------------------------------------
Check criterion3() {
  Check c;
  auto corpus = shared_corpus();
  int runs = 0;
  for (double eps : {0.25, 0.1}) {
    for (const Graph& g : corpus) {
      double f_star = static_cast<double>(exact_maxflow(g).value);
      MaxflowSearchResult r = binary_search_maxflow(
          g, eps, [](const Graph& gg, double F, double ee) {
            return mw_maxflow_simple(gg, F, ee);
          });
      c.expect(congestion(g, r.flow).max <= 1.0 + 1e-6,
               "infeasible flow at eps " + fmt(eps));
      c.expect(r.value >= (1.0 - 5.0 * eps) * f_star - 1e-9,
               "value " + fmt(r.value) + " below (1-5eps) F* = " +
                   fmt((1.0 - 5.0 * eps) * f_star));
      ++runs;
      if (!c.ok) return c;
    }
  }
  c.detail << " (" << runs << " searches)";
  return c;
}

// ---------------------------------------------------------------------------
// 4. Improved algorithm guarantee, forbidden-set bounds, solve counts.
// ---------------------------------------------------------------------------
Check criterion4() {
  Check c;
  auto corpus = shared_corpus();
  int runs = 0;
  for (double eps : {0.25, 0.1}) {
    for (const Graph& g : corpus) {
      double f_star = static_cast<double>(exact_maxflow(g).value);
      MaxflowSearchResult r = binary_search_maxflow(
          g, eps, [&](const Graph& gg, double F, double ee) {
            SolveStats stats;
            ImprovedOptions opts;
            opts.stats = &stats;
            double rho = improved_oracle_width(gg.edge_count(), ee);
            ForbiddenSetLimits limits = forbidden_set_limits(gg.edge_count(), ee, rho, F);
            opts.on_solve = [&](const SolveEvent& event) {
              c.expect(event.forbidden_count <= limits.max_count + 1e-9 &&
                           event.forbidden_capacity <= limits.max_capacity + 1e-9,
                       "forbidden-set bound violated");
            };
            OracleOutcome out = improved_maxflow(gg, F, ee, opts);
            double n_iters = std::max(
                1.0, std::ceil(2.0 * rho * std::log(static_cast<double>(gg.edge_count())) /
                               (ee * ee)));
            double budget = n_iters +
                            std::ceil((15.0 / 32.0) *
                                      std::cbrt(gg.edge_count() *
                                                std::log(static_cast<double>(
                                                    gg.edge_count())))) +
                            1.0;
            c.expect(static_cast<double>(stats.systems) <= budget,
                     "solve count " + std::to_string(stats.systems) + " above budget " +
                         fmt(budget));
            return out;
          });
      c.expect(congestion(g, r.flow).max <= 1.0 + 1e-6,
               "infeasible flow at eps " + fmt(eps));
      c.expect(r.value >= (1.0 - 5.0 * eps) * f_star - 1e-9,
               "value " + fmt(r.value) + " below (1-5eps) F* = " +
                   fmt((1.0 - 5.0 * eps) * f_star));
      ++runs;
      if (!c.ok) return c;
    }
  }
  c.detail << " (" << runs << " searches)";
  return c;
}

// ---------------------------------------------------------------------------
// 5. Dual cut guarantee at F = F*, plus the empirical quality diagnostic.
// ---------------------------------------------------------------------------
Check criterion5() {
  Check c;
  const double eps = 0.1;
  std::vector<double> ratios;
  for (const Graph& g : shared_corpus()) {
    double f_star = static_cast<double>(exact_maxflow(g).value);
    DualCutResult r = dual_cut(g, f_star, eps);
    c.expect(!r.failed(), "dual cut failed at F = F*");
    if (r.failed()) return c;
    c.expect(r.cut->capacity >= f_star - 1e-9, "cut below the max flow (duality breach)");
    c.expect(r.cut->capacity < f_star / (1.0 - 7.0 * eps),
             "cut capacity " + fmt(r.cut->capacity) + " outside the stopping bound");
    ratios.push_back(r.cut->capacity / f_star);
  }
  std::sort(ratios.begin(), ratios.end());
  double median = ratios[ratios.size() / 2];
  c.expect(median <= 1.3, "median capacity ratio " + fmt(median) + " above 1.3");
  c.detail << " (median ratio " << fmt(median) << ")";
  return c;
}

// ---------------------------------------------------------------------------
// 6. Weight-update convergence invariants, instrumented.
// ---------------------------------------------------------------------------
Check criterion6() {
  Check c;
  auto corpus = shared_corpus();
  const double eps = 0.25;
  int iterations = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 10) {
    const Graph& g = corpus[i];
    double f_star = static_cast<double>(exact_maxflow(g).value);
    double rho = oracle_width(g.edge_count(), eps);
    MwInstrumentation instr;
    MwOptions opts;
    opts.instrument = true;  // the driver itself re-asserts both lemmas
    opts.out = &instr;
    try {
      OracleOutcome out = mw_maxflow_simple(g, f_star, eps, opts);
      c.expect(out.has_value(), "instrumented run failed below F*");
    } catch (const std::logic_error& err) {
      c.expect(false, std::string("invariant assertion fired: ") + err.what());
      return c;
    }
    for (const MwIterationRecord& rec : instr.iterations)
      c.expect(rec.mu_after <=
                   rec.mu_before * std::exp((1.0 + eps) * eps / rho) * (1.0 + 1e-9),
               "total-weight growth bound violated");
    iterations += static_cast<int>(instr.iterations.size());
  }
  c.detail << " (" << iterations << " instrumented iterations)";
  return c;
}

// ---------------------------------------------------------------------------
// 7. Effective-resistance potential invariants of the improved algorithm.
// ---------------------------------------------------------------------------
Check criterion7() {
  Check c;
  // Production width on small random graphs: no cuts, monotone trace.
  auto corpus = test::random_corpus(10, 4, 12, 10, 8, 5150);
  for (const Graph& g : corpus) {
    double f_star = static_cast<double>(exact_maxflow(g).value);
    PhiTrace trace = phi_instrument(g, f_star, 0.25);
    c.expect(trace.nondecreasing_ok, "trace decreased at step " +
                                         std::to_string(trace.nondecreasing_violation));
    c.expect(trace.initial_bound_ok, "initial trace value below m^-4 F^-2");
    c.expect(trace.cut_jump_ok, "cut jump bound violated");
    if (!c.ok) return c;
  }
  // Forced cuts on the shortcut family to exercise the jump bound.
  int cuts = 0;
  for (int k : {4, 5, 6}) {
    Graph g = gen_paths_with_shortcut(k);
    ImprovedOptions opts;
    opts.rho_override = 2.0;
    PhiTrace trace = phi_instrument(g, static_cast<double>(k + 1), 0.25, opts);
    cuts += trace.cut_count;
    c.expect(trace.cut_count >= 1, "expected a forced cut at k=" + std::to_string(k));
    c.expect(trace.nondecreasing_ok && trace.initial_bound_ok && trace.cut_jump_ok,
             "trace bounds violated on the shortcut family at k=" + std::to_string(k));
  }
  c.detail << " (" << cuts << " forced cuts validated)";
  return c;
}

// ---------------------------------------------------------------------------
// 8. Electrical identities: Rayleigh monotonicity, the scaling lower bound,
//    and the pseudoinverse cross-check.
// ---------------------------------------------------------------------------
Check criterion8() {
  Check c;
  std::mt19937_64 rng(424242);
  auto corpus = test::random_corpus(50, 4, 30, 40, 16, 6060);
  int trials = 0;
  for (const Graph& g : corpus) {
    std::vector<double> base = test::random_resistances(g.edge_count(), 0.5, 8.0, rng);
    ResistanceVector rv(base);
    auto solved = solve_exact(assemble(g, rv), 1.0);
    double reff = solved.energy;

    double via_pinv = test::reff_via_pseudoinverse(g, rv);
    c.expect(std::abs(reff - via_pinv) <= 1e-8 * std::max(reff, via_pinv),
             "pseudoinverse cross-check failed: " + fmt(reff) + " vs " + fmt(via_pinv));

    std::uniform_int_distribution<int> edge_pick(0, g.edge_count() - 1);
    std::uniform_real_distribution<double> gamma_dist(1.0, 10.0);
    for (int trial = 0; trial < 10; ++trial, ++trials) {
      EdgeId h = edge_pick(rng);
      double gamma = gamma_dist(rng);
      double fe = solved.flow[static_cast<std::size_t>(h)];
      double beta = rv.at(h) * fe * fe / reff;

      std::vector<double> scaled = base;
      scaled[static_cast<std::size_t>(h)] *= gamma;
      double after = solve_exact(assemble(g, ResistanceVector(scaled)), 1.0).energy;
      c.expect(after >= reff - 1e-9, "Rayleigh monotonicity violated");
      c.expect(after >= predict_scaled_reff_lb(reff, beta, gamma) - 1e-9,
               "scaling lower bound violated");
    }
    if (!c.ok) return c;
  }
  c.detail << " (" << trials << " scaling trials)";
  return c;
}

// ---------------------------------------------------------------------------
// 9. Dual-side lemmas per iteration: sweep capacity and potential drop.
// ---------------------------------------------------------------------------
Check criterion9() {
  Check c;
  const double eps = 0.1;
  const double delta = eps * eps;
  long iterations = 0;
  auto corpus = shared_corpus();

  auto checked_options = [&](const Graph& g) {
    DualOptions opts;
    opts.on_iteration = [&c, &g, &iterations, delta](const DualIterationEvent& event) {
      ++iterations;
      const PotentialVector& phi = *event.scaled_potentials;
      double drop_sum = 0.0;
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        drop_sum += std::abs(phi[static_cast<std::size_t>(g.edge(e).tail)] -
                             phi[static_cast<std::size_t>(g.edge(e).head)]) *
                    static_cast<double>(g.edge(e).capacity);
      c.expect(event.sweep->capacity <= drop_sum + 1e-9,
               "sweep capacity above the potential-difference bound");

      auto exact = solve_exact(*event.system, 1.0);
      double reff = exact.energy;
      double mu = event.mu_before;
      c.expect(drop_sum <= (1.0 + 2.0 * delta) * std::sqrt(mu / reff) + 1e-9,
               "approximate potential drop above (1+2delta) sqrt(mu/Reff)");

      // The same bound for the exact potentials, without the delta factor.
      double drop = exact.potentials[static_cast<std::size_t>(g.source())] -
                    exact.potentials[static_cast<std::size_t>(g.sink())];
      double exact_sum = 0.0;
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        exact_sum += std::abs(exact.potentials[static_cast<std::size_t>(g.edge(e).tail)] -
                              exact.potentials[static_cast<std::size_t>(g.edge(e).head)]) /
                     drop * static_cast<double>(g.edge(e).capacity);
      c.expect(exact_sum <= std::sqrt(mu / reff) + 1e-9,
               "exact potential drop above sqrt(mu/Reff)");
    };
    return opts;
  };

  // Success path at F = F* across the corpus.
  for (std::size_t i = 0; i < corpus.size(); i += 5) {
    const Graph& g = corpus[i];
    double f_star = static_cast<double>(exact_maxflow(g).value);
    dual_cut(g, f_star, eps, checked_options(g));
    if (!c.ok) return c;
  }

  // One deep run through the whole iteration budget: a target safely below
  // (1 - 7 eps) F* keeps the stopping threshold under the min cut, so every
  // iteration is exercised.
  for (const Graph& g : corpus) {
    double f_star = static_cast<double>(exact_maxflow(g).value);
    if (f_star < 4.0) continue;
    long before = iterations;
    DualCutResult deep = dual_cut(g, 0.9 * (1.0 - 7.0 * eps) * f_star, eps, checked_options(g));
    c.expect(deep.failed(), "sub-threshold target unexpectedly produced a cut");
    c.expect(iterations - before >= 1000, "deep run exercised too few iterations");
    break;
  }
  c.detail << " (" << iterations << " iterations checked)";
  return c;
}

// ---------------------------------------------------------------------------
// 10. Exact-oracle self-test against brute-force enumeration.
// ---------------------------------------------------------------------------
Check criterion10() {
  Check c;
  int checked = 0;
  for (const Graph& g : shared_corpus()) {
    if (g.vertex_count() > 12) continue;
    c.expect(exact_maxflow(g).value == enumerate_min_cut(g),
             "max flow differs from the brute-force min cut");
    ++checked;
  }
  c.detail << " (" << checked << " graphs)";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "electrical-flow oracle equivalence", criterion1},
      {2, "shortcut-family worked example", criterion2},
      {3, "simple algorithm guarantee", criterion3},
      {4, "improved algorithm guarantee", criterion4},
      {5, "dual cut guarantee", criterion5},
      {6, "weight-update convergence invariants", criterion6},
      {7, "effective-resistance potential invariants", criterion7},
      {8, "electrical identities", criterion8},
      {9, "dual-side lemmas", criterion9},
      {10, "exact-oracle self-test", criterion10},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criterion.run();
    } catch (const std::exception& err) {
      result.ok = false;
      result.detail << "exception: " << err.what();
    }
    auto stop = std::chrono::steady_clock::now();
    double seconds = std::chrono::duration<double>(stop - start).count();
    std::printf("[%s] criterion %d: %s%s [%.1fs]\n", result.ok ? "PASS" : "FAIL",
                criterion.id, criterion.name, result.detail.str().c_str(), seconds);
    std::fflush(stdout);
    if (!result.ok) ++failures;
  }
  return failures;
}
