#pragma once

#include "eflow/laplacian.hpp"

namespace eflow {

struct ElectricalSummary {
  double reff = 0.0;  // effective s-t resistance
  double ceff = 0.0;  // 1 / reff
  double energy_at_value(double F) const { return F * F * reff; }
};

// sum_e r_e f(e)^2 over live edges.
double energy(const ResistanceVector& r, const FlowVector& f);

// Effective s-t resistance, computed as the energy of the exact unit
// electrical flow. Throws DisconnectedError when s,t are separated.
double effective_resistance(const Graph& g, const ResistanceVector& r);

// Certified estimate from an approximate solve; within (1+delta) of the
// exact value, above it by at most that factor.
double effective_resistance(const Graph& g, const ResistanceVector& r, double delta);

ElectricalSummary summarize(const Graph& g, const ResistanceVector& r);

// Lower bound on the effective resistance after the resistance of one edge
// is scaled by gamma, where beta is that edge's share of the electrical
// flow's energy: gamma / (beta + gamma (1 - beta)) * reff. gamma may be
// +infinity ("cutting" the edge), which gives reff / (1 - beta) and diverges
// when the edge carried everything (beta == 1).
double predict_scaled_reff_lb(double reff, double beta, double gamma);

}  // namespace eflow
