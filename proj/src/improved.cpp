#include "eflow/improved.hpp"

#include <algorithm>
#include <cmath>

namespace eflow {

ForbiddenSet ForbiddenSet::none(int m) {
  ForbiddenSet h;
  h.forbidden.assign(static_cast<std::size_t>(m), 0);
  return h;
}

void ForbiddenSet::add(const Graph& g, EdgeId e) {
  if (contains(e)) throw std::logic_error("edge already forbidden");
  forbidden[static_cast<std::size_t>(e)] = 1;
  ++count;
  capacity += static_cast<double>(g.edge(e).capacity);
}

std::vector<std::uint8_t> ForbiddenSet::live_mask() const {
  std::vector<std::uint8_t> live(forbidden.size());
  for (std::size_t i = 0; i < forbidden.size(); ++i) live[i] = forbidden[i] ? 0 : 1;
  return live;
}

double improved_oracle_width(int m, double eps) {
  double log_m = std::max(std::log(static_cast<double>(m)), 1.0);
  return 8.0 * std::cbrt(static_cast<double>(m)) * std::cbrt(log_m) / eps;
}

ForbiddenSetLimits forbidden_set_limits(int m, double eps, double rho, double F) {
  double m_log_m = static_cast<double>(m) * std::log(static_cast<double>(m));
  ForbiddenSetLimits limits;
  limits.max_count = 30.0 * m_log_m / (eps * eps * rho * rho);
  limits.max_capacity = 30.0 * m_log_m * F / (eps * eps * rho * rho * rho);
  return limits;
}

OracleOutcome improved_oracle(const Graph& g, const WeightVector& w, double F, double eps,
                              ForbiddenSet& h, const ImprovedOptions& options,
                              PotentialVector* warm, int* solve_step) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  const double rho = options.rho_override.value_or(improved_oracle_width(g.edge_count(), eps));
  const ForbiddenSetLimits limits = forbidden_set_limits(g.edge_count(), eps, rho, F);

  bool after_cut = false;
  while (true) {
    LaplacianSystem sys = assemble(g, oracle_resistances(g, w, eps, h.live_mask()));
    CertifiedElectricalFlow solved;
    try {
      solved = solve_approx(sys, F, eps / 3.0, warm, options.stats);
    } catch (const DisconnectedError&) {
      return std::nullopt;
    }
    if (warm) *warm = solved.potentials;
    if (options.on_solve) {
      SolveEvent event;
      event.step = solve_step ? ++*solve_step : 0;
      event.after_cut = after_cut;
      event.system = &sys;
      event.solution = &solved;
      event.mu = w.total;
      event.forbidden_count = h.count;
      event.forbidden_capacity = h.capacity;
      options.on_solve(event);
    } else if (solve_step) {
      ++*solve_step;
    }

    if (solved.energy > (1.0 + eps) * w.total) return std::nullopt;

    CongestionProfile cong = congestion(g, solved.flow);
    if (cong.max > rho) {
      h.add(g, cong.argmax);
      if (h.count > limits.max_count * (1.0 + 1e-9) ||
          h.capacity > limits.max_capacity * (1.0 + 1e-9))
        throw std::logic_error("forbidden set exceeded its growth bound");
      after_cut = true;
      continue;
    }
    return std::move(solved.flow);
  }
}

OracleOutcome improved_maxflow(const Graph& g, double F, double eps,
                               const ImprovedOptions& options) {
  ForbiddenSet h = ForbiddenSet::none(g.edge_count());
  PotentialVector warm;
  int solve_step = 0;

  MwOptions mw;
  mw.rho = options.rho_override.value_or(improved_oracle_width(g.edge_count(), eps));
  mw.instrument = options.instrument;
  mw.out = options.out;
  mw.oracle_calls = options.oracle_calls;
  return mw_maxflow(
      g, F, eps,
      [&](const Graph& gg, const WeightVector& ww, double FF, double ee) {
        return improved_oracle(gg, ww, FF, ee, h, options, &warm, &solve_step);
      },
      mw);
}

PhiTrace phi_instrument(const Graph& g, double F, double eps,
                        const ImprovedOptions& options) {
  PhiTrace trace;
  trace.rho = options.rho_override.value_or(improved_oracle_width(g.edge_count(), eps));

  ImprovedOptions opts = options;
  opts.on_solve = [&](const SolveEvent& event) {
    trace.phi.push_back(solve_exact(*event.system, 1.0).energy);
    trace.after_cut.push_back(event.after_cut ? 1 : 0);
    if (event.after_cut) ++trace.cut_count;
    if (options.on_solve) options.on_solve(event);
  };
  improved_maxflow(g, F, eps, opts);

  const double m = static_cast<double>(g.edge_count());
  for (std::size_t j = 1; j < trace.phi.size(); ++j) {
    if (trace.phi[j] < trace.phi[j - 1] * (1.0 - 1e-9)) {
      trace.nondecreasing_ok = false;
      trace.nondecreasing_violation = static_cast<int>(j);
      break;
    }
  }
  if (!trace.phi.empty())
    trace.initial_bound_ok = trace.phi.front() >= std::pow(m, -4.0) / (F * F);
  const double shrink = 1.0 - eps * trace.rho * trace.rho / (5.0 * m);
  for (std::size_t j = 1; j < trace.phi.size(); ++j) {
    if (!trace.after_cut[j]) continue;
    if (!(shrink * trace.phi[j] > trace.phi[j - 1] * (1.0 - 1e-9))) {
      trace.cut_jump_ok = false;
      trace.cut_jump_violation = static_cast<int>(j);
      break;
    }
  }
  return trace;
}

}  // namespace eflow
