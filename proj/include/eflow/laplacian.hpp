#pragma once

#include "eflow/graph.hpp"

namespace eflow {

struct NonConvergenceError : std::runtime_error {
  explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Edge resistances. Forbidden edges are dropped from the live set instead of
// being given infinite resistance, which keeps the resistance ratio R finite.
class ResistanceVector {
 public:
  // All edges live.
  explicit ResistanceVector(std::vector<double> r);
  // live[e] == 0 marks edge e as removed; its r entry is ignored.
  ResistanceVector(std::vector<double> r, std::vector<std::uint8_t> live);

  int size() const { return static_cast<int>(r_.size()); }
  bool is_live(EdgeId e) const {
    return live_.empty() || live_[static_cast<std::size_t>(e)] != 0;
  }
  double at(EdgeId e) const { return r_[static_cast<std::size_t>(e)]; }
  int live_count() const { return live_count_; }
  // R = max r / min r over live edges.
  double ratio() const { return ratio_; }

  static ResistanceVector uniform(int m, double r);

 private:
  void validate();

  std::vector<double> r_;
  std::vector<std::uint8_t> live_;  // empty means all live
  int live_count_ = 0;
  double ratio_ = 1.0;
};

// Weighted Laplacian L = B C B^T over the live edges, kept in edge-list form.
// apply() multiplies by L in O(m); dense() materializes the matrix for tests
// and for the direct solver. Immutable after assembly; the solve entry points
// below are pure given their inputs.
class LaplacianSystem {
 public:
  LaplacianSystem(const Graph& g, ResistanceVector r);

  const Graph& graph() const { return *g_; }
  const ResistanceVector& resistances() const { return r_; }
  double conductance(EdgeId e) const { return conductance_[static_cast<std::size_t>(e)]; }
  double weighted_degree(VertexId v) const {
    return weighted_degree_[static_cast<std::size_t>(v)];
  }
  int live_edge_count() const { return r_.live_count(); }
  double resistance_ratio() const { return r_.ratio(); }

  bool connected_st() const;
  // y = L x; row sums are zero so constant vectors map to zero.
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<std::vector<double>> dense() const;

 private:
  const Graph* g_;
  ResistanceVector r_;
  std::vector<double> conductance_;     // 0 for dead edges
  std::vector<double> weighted_degree_;
};

LaplacianSystem assemble(const Graph& g, ResistanceVector r);

struct ExactElectricalFlow {
  PotentialVector potentials;  // grounded at the sink (phi_t = 0)
  FlowVector flow;
  double energy = 0.0;
};

// Direct solve of L phi = F chi_{s,t} by pivoted elimination on the grounded
// Laplacian. The returned flow has divergence exactly F chi_{s,t} and
// minimizes energy among all flows of that value; this is the oracle that
// grounds the derived expectations in the tests.
ExactElectricalFlow solve_exact(const LaplacianSystem& sys, double F);

struct CertifiedElectricalFlow {
  FlowVector flow;             // exact value F after repair
  PotentialVector potentials;
  double energy = 0.0;
  double lower_bound = 0.0;    // dual certificate, never above F^2 * Reff
  double delta_achieved = 0.0; // energy / lower_bound - 1
  long cg_iterations = 0;
};

struct SolveStats {
  long systems = 0;
  long cg_iterations = 0;
};

// Jacobi-preconditioned conjugate gradients on the grounded Laplacian,
// tightened geometrically until the energy gap certificate meets the target
// implied by delta. The certificate makes the guarantee independent of the
// preconditioner: on return
//   energy <= (1 + delta_achieved) * lower_bound <= (1 + delta) * optimal.
// An optional warm start (previous potentials on the same graph) speeds up
// the repeated solves of the weight-update drivers.
CertifiedElectricalFlow solve_approx(const LaplacianSystem& sys, double F, double delta,
                                     const PotentialVector* warm_start = nullptr,
                                     SolveStats* stats = nullptr);

// Routes the residual demands F chi_{s,t} - divergence(raw) through a BFS
// spanning forest, yielding a flow whose divergence is exactly F chi_{s,t}.
// The change on any edge is bounded by the total positive residual demand.
FlowVector repair_flow(const Graph& g, const FlowVector& raw, double F);
// Same, but the forest only uses the system's live edges.
FlowVector repair_flow(const LaplacianSystem& sys, const FlowVector& raw, double F);

struct Certificate {
  double lower_bound = 0.0;
  double gap = 0.0;
};

// Primal-dual energy gap. For any potentials with a nonzero s-t drop,
//   lower_bound = (F * (phi_s - phi_t))^2 / sum_e (phi_u - phi_v)^2 / r_e
// is a valid lower bound on the energy of every value-F flow, so
// gap = energy/lower_bound - 1 >= 0 with equality only at the optimum.
// Degenerate potentials (phi_s == phi_t) yield an infinite gap.
Certificate certify(const LaplacianSystem& sys, const FlowVector& flow,
                    const PotentialVector& potentials, double F);

}  // namespace eflow
