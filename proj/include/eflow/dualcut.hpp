#pragma once

#include "eflow/mw_simple.hpp"

namespace eflow {

// Parameters of the dual cut iteration.
struct DualParameters {
  double rho = 0.0;    // 3 m^(1/3) eps^(-2/3)
  long iterations = 0; // N = max(1, ceil(5 eps^(-8/3) m^(1/3) ln m))
  double delta = 0.0;  // eps^2
};
DualParameters dual_parameters(int m, double eps);

struct DualState {
  WeightVector weights;
  DualParameters params;
  int iteration = 0;
};
DualState dual_state_init(const Graph& g, double eps,
                          std::optional<double> rho_override = std::nullopt);

// w_e <- w_e + (eps/rho) cong_f(e) w_e + (eps^2/(m rho)) mu, with mu = |w|_1
// taken before the update. The additive term keeps every weight at least an
// eps/m fraction of the total, so increasing a weight always moves the
// effective resistance.
void dual_update(DualState& state, const FlowVector& f, const Graph& g, double eps);

struct SweepCutResult {
  Cut cut;
  double threshold = 0.0;
  double capacity = 0.0;
};

// Deterministic sweep over the n-1 candidate thresholds between consecutive
// distinct potential values; returns the minimum-capacity cut, breaking
// capacity ties toward the smaller source side. Vertices with potential equal
// to the threshold land on the sink side. Requires phi_s = 1, phi_t = 0.
// The returned capacity never exceeds sum_e |phi_u - phi_v| u_e.
SweepCutResult sweep_cut(const Graph& g, const PotentialVector& phi);

struct DualIterationEvent {
  int iteration = 0;  // 1-based
  const LaplacianSystem* system = nullptr;
  const CertifiedElectricalFlow* solution = nullptr;
  const PotentialVector* scaled_potentials = nullptr;
  const SweepCutResult* sweep = nullptr;
  const WeightVector* weights_after = nullptr;
  double mu_before = 0.0;
  double mu_after = 0.0;
  double max_congestion = 0.0;
  double weight_floor_ratio = 0.0;  // min_e w_e / mu after the update
};

struct DualOptions {
  std::optional<double> rho_override;  // testing hook
  std::function<void(const DualIterationEvent&)> on_iteration;
  SolveStats* stats = nullptr;
};

struct DualCutResult {
  std::optional<Cut> cut;
  long iterations = 0;
  bool failed() const { return !cut.has_value(); }
};

// The dual algorithm: N rounds of a certified electrical solve with
// r_e = w_e / u_e^2 and delta = eps^2, the additive-multiplicative weight
// update, and a potential sweep; returns the first cut of capacity strictly
// below F / (1 - 7 eps). If F >= F*, a cut is always returned. Requires
// 0 < eps < 1/7.
DualCutResult dual_cut(const Graph& g, double F, double eps,
                       const DualOptions& options = {});

struct DualSearchResult {
  Cut cut;
  int probes = 0;
};

// Binary search over F in [B, mB] (multiplicative (1 + eps/8) steps) for the
// smallest succeeding target, keeping the smallest-capacity cut seen anywhere;
// capacity is within (1 + 9 eps) of the minimum cut.
DualSearchResult dual_binary_search(const Graph& g, double eps,
                                    const DualOptions& options = {});

}  // namespace eflow
