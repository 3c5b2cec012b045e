#pragma once

#include "eflow/mw_simple.hpp"

namespace eflow {

// Edges permanently removed by the modified oracle. Monotone: edges are only
// ever added. Size and capacity stay within the bounds
//   |H|  <= 30 m ln m / (eps^2 rho^2)
//   u(H) <= 30 m F ln m / (eps^2 rho^3)
// which the oracle asserts as hard errors after every insertion.
struct ForbiddenSet {
  std::vector<std::uint8_t> forbidden;
  int count = 0;
  double capacity = 0.0;  // u(H)

  static ForbiddenSet none(int m);
  bool contains(EdgeId e) const { return forbidden[static_cast<std::size_t>(e)] != 0; }
  void add(const Graph& g, EdgeId e);
  std::vector<std::uint8_t> live_mask() const;
};

// Width of the forbidden-edge oracle: 8 m^(1/3) ln^(1/3)(m) / eps, with the
// log floored at 1 so degenerate single-edge graphs keep a usable width.
double improved_oracle_width(int m, double eps);

struct ForbiddenSetLimits {
  double max_count = 0.0;
  double max_capacity = 0.0;
};
ForbiddenSetLimits forbidden_set_limits(int m, double eps, double rho, double F);

// Fired after every linear-system solve; lets tests recompute exact
// effective resistances step by step.
struct SolveEvent {
  int step = 0;         // 1-based solve index within the run
  bool after_cut = false;  // this solve directly follows an edge removal
  const LaplacianSystem* system = nullptr;
  const CertifiedElectricalFlow* solution = nullptr;
  double mu = 0.0;  // |w|_1 of the weights behind this solve
  int forbidden_count = 0;
  double forbidden_capacity = 0.0;
};

struct ImprovedOptions {
  // Testing hook: lowers the congestion threshold so that edge cutting can be
  // exercised at desk scale; production uses improved_oracle_width.
  std::optional<double> rho_override;
  bool instrument = false;
  MwInstrumentation* out = nullptr;
  std::function<void(const SolveEvent&)> on_solve;
  SolveStats* stats = nullptr;
  long* oracle_calls = nullptr;
};

// The modified oracle: solves certified electrical flows on G minus the
// forbidden set, fails on disconnection or when the energy exceeds
// (1 + eps) |w|_1, and whenever some congestion exceeds rho removes the
// single worst edge and starts over.
OracleOutcome improved_oracle(const Graph& g, const WeightVector& w, double F, double eps,
                              ForbiddenSet& h, const ImprovedOptions& options = {},
                              PotentialVector* warm = nullptr, int* solve_step = nullptr);

// The weight-update driver threading the forbidden set across iterations;
// same N and update rule as mw_maxflow with the improved width.
OracleOutcome improved_maxflow(const Graph& g, double F, double eps,
                               const ImprovedOptions& options = {});

// Effective-resistance trace of one improved run, recomputed exactly after
// every linear solve, together with the three bound checks it must satisfy:
// the trace never decreases, the first value is at least m^-4 F^-2, and each
// cut step satisfies (1 - eps rho^2 / (5m)) Phi(j) > Phi(j-1).
struct PhiTrace {
  std::vector<double> phi;
  std::vector<std::uint8_t> after_cut;
  double rho = 0.0;
  int cut_count = 0;

  bool nondecreasing_ok = true;
  int nondecreasing_violation = -1;
  bool initial_bound_ok = true;
  bool cut_jump_ok = true;
  int cut_jump_violation = -1;
  bool all_ok() const { return nondecreasing_ok && initial_bound_ok && cut_jump_ok; }
};

// Runs improved_maxflow on a graph small enough for exact solves and checks
// the trace bounds; requires F <= F* <= mF for the initial bound to apply.
PhiTrace phi_instrument(const Graph& g, double F, double eps,
                        const ImprovedOptions& options = {});

}  // namespace eflow
