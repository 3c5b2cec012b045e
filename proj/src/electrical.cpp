#include "eflow/electrical.hpp"

#include <cmath>
#include <limits>

namespace eflow {

double energy(const ResistanceVector& r, const FlowVector& f) {
  if (static_cast<int>(f.size()) != r.size())
    throw std::invalid_argument("flow vector size does not match resistance vector");
  double total = 0.0;
  for (EdgeId e = 0; e < r.size(); ++e) {
    if (!r.is_live(e)) continue;
    double fe = f[static_cast<std::size_t>(e)];
    total += r.at(e) * fe * fe;
  }
  return total;
}

double effective_resistance(const Graph& g, const ResistanceVector& r) {
  return solve_exact(assemble(g, r), 1.0).energy;
}

double effective_resistance(const Graph& g, const ResistanceVector& r, double delta) {
  LaplacianSystem sys = assemble(g, r);
  return solve_approx(sys, 1.0, delta).energy;
}

ElectricalSummary summarize(const Graph& g, const ResistanceVector& r) {
  ElectricalSummary s;
  s.reff = effective_resistance(g, r);
  s.ceff = 1.0 / s.reff;
  return s;
}

double predict_scaled_reff_lb(double reff, double beta, double gamma) {
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("beta must lie in [0, 1]");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (std::isinf(gamma)) {
    if (beta == 1.0) return std::numeric_limits<double>::infinity();
    return reff / (1.0 - beta);
  }
  return gamma / (beta + gamma * (1.0 - beta)) * reff;
}

}  // namespace eflow
