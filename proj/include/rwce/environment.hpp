#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rwce/electrical.hpp"
#include "rwce/errors.hpp"
#include "rwce/graph.hpp"
#include "rwce/network.hpp"
#include "rwce/rng.hpp"

namespace rwce {

enum class EnvKind { static_env, scheduled, once_reinforced, linear_reinforced };

inline std::string to_string(EnvKind k) {
  switch (k) {
    case EnvKind::static_env: return "static";
    case EnvKind::scheduled: return "scheduled";
    case EnvKind::once_reinforced: return "once_reinforced";
    case EnvKind::linear_reinforced: return "linear_reinforced";
  }
  return "?";
}

// Environment rule: how C_{t+1} arises from (C_t, traversed edge, randomness).
// Reinforced kinds are adaptive; static and scheduled are non-adaptive by
// construction.
struct EnvSpec {
  EnvKind kind = EnvKind::static_env;
  WeightFn initial = unit_weights();  // C_0

  double delta = 2.0;      // once_reinforced: value set on first traversal
  double increment = 1.0;  // linear_reinforced: additive weight per traversal

  // scheduled: R_t(e) = R_0(e) + amp * decay^t * w(e) with the per-edge
  // summable weights w(e) = (1 + min endpoint distance)^{-wexp}.
  double amp = 0.0;
  double decay = 0.5;
  double wexp = 1.0;
  bool coin = false;    // amp drawn uniformly from {amp, amp2} on first step
  double amp2 = 0.0;
  long schedule_horizon = -1;  // steps available; -1 = unbounded

  long freeze_after = -1;  // hold C constant from this time on; -1 = never

  // declared per-edge bound metadata (sup/inf over time when known)
  double declared_sup = std::numeric_limits<double>::quiet_NaN();
  double declared_inf = std::numeric_limits<double>::quiet_NaN();

  bool adaptive() const {
    return kind == EnvKind::once_reinforced ||
           kind == EnvKind::linear_reinforced;
  }
};

// Per-trajectory environment state. Adaptive kinds carry a sparse override
// keyed by vertex labels so a growing working ball never invalidates it.
struct EnvState {
  long t = 0;
  int branch = -1;  // coin outcome; -1 = not drawn yet
  std::map<std::pair<Vertex, Vertex>, double> override;

  static std::pair<Vertex, Vertex> key(Vertex u, Vertex v) {
    return {std::min(u, v), std::max(u, v)};
  }
};

// Conductance of an edge at the state's time. `dist_min` is the graph
// distance of the closer endpoint from the origin (drives the scheduled
// per-edge weights); callers that materialize configs get it from the ball.
inline double env_conductance(const EnvSpec& spec, const EnvState& state,
                              Vertex u, Vertex v, int dist_min) {
  const auto it = state.override.find(EnvState::key(u, v));
  if (it != state.override.end()) return it->second;
  const long t_eff = (spec.freeze_after >= 0)
                         ? std::min(state.t, spec.freeze_after)
                         : state.t;
  if (spec.kind == EnvKind::scheduled) {
    const double r0 = 1.0 / spec.initial.conductance(u, v);
    double amp = spec.amp;
    if (spec.coin)  // before the coin is drawn the schedule is unperturbed,
                    // so C_0 agrees across both branches
      amp = state.branch < 0 ? 0.0 : (state.branch == 0 ? spec.amp : spec.amp2);
    const double w = std::pow(1.0 + dist_min, -spec.wexp);
    const double r = r0 + amp * std::pow(spec.decay, double(t_eff)) * w;
    if (!(r > 0))
      throw domain_error("scheduled environment produced non-positive R");
    return 1.0 / r;
  }
  return spec.initial.conductance(u, v);
}

inline double env_log_conductance(const EnvSpec& spec, const EnvState& state,
                                  Vertex u, Vertex v, int dist_min) {
  const auto it = state.override.find(EnvState::key(u, v));
  if (it != state.override.end()) return std::log(it->second);
  if (spec.kind == EnvKind::scheduled) {
    // log R_t = log(R_0 + amp * decay^t * w) evaluated as a log-sum-exp so
    // weights far from the origin neither overflow nor underflow
    const long t_eff = (spec.freeze_after >= 0)
                           ? std::min(state.t, spec.freeze_after)
                           : state.t;
    double amp = spec.amp;
    if (spec.coin)
      amp = state.branch < 0 ? 0.0 : (state.branch == 0 ? spec.amp : spec.amp2);
    const double log_r0 = -spec.initial.log_conductance(u, v);
    if (amp == 0.0) return -log_r0;
    if (!(amp > 0))
      return std::log(env_conductance(spec, state, u, v, dist_min));
    const double log_s = std::log(amp) + double(t_eff) * std::log(spec.decay) -
                         spec.wexp * std::log1p(double(dist_min));
    const double m = std::max(log_r0, log_s);
    const double log_r = m + std::log1p(std::exp(std::min(log_r0, log_s) - m));
    return -log_r;
  }
  return spec.initial.log_conductance(u, v);
}

// Advance the environment by one step after the walk traversed {u,v}.
inline void evolve(const EnvSpec& spec, EnvState& state, Vertex u, Vertex v,
                   RngStream& rng) {
  if (spec.schedule_horizon >= 0 && state.t >= spec.schedule_horizon)
    throw schedule_error("evolve: schedule exhausted");
  const bool frozen = spec.freeze_after >= 0 && state.t >= spec.freeze_after;
  if (!frozen) {
    switch (spec.kind) {
      case EnvKind::static_env:
        break;
      case EnvKind::scheduled:
        if (spec.coin && state.branch < 0)
          state.branch = rng.uniform() < 0.5 ? 0 : 1;
        break;
      case EnvKind::once_reinforced: {
        const auto key = EnvState::key(u, v);
        if (!state.override.count(key)) {
          if (!(spec.delta > 0))
            throw domain_error("once_reinforced: delta must be positive");
          state.override[key] = spec.delta;
        }
        break;
      }
      case EnvKind::linear_reinforced: {
        const auto key = EnvState::key(u, v);
        const auto it = state.override.find(key);
        const double base =
            it != state.override.end() ? it->second : spec.initial.conductance(u, v);
        const double next = base + spec.increment;
        if (!(next > 0))
          throw domain_error("linear_reinforced: non-positive weight");
        state.override[key] = next;
        break;
      }
    }
  }
  ++state.t;
}

// Enumerable next-step environment branches given the traversed edge; used by
// the exact-law oracles.
struct EnvBranch {
  double probability = 1.0;
  EnvState state;
};

inline std::vector<EnvBranch> env_branches(const EnvSpec& spec,
                                           const EnvState& state, Vertex u,
                                           Vertex v) {
  const bool frozen = spec.freeze_after >= 0 && state.t >= spec.freeze_after;
  if (!frozen && spec.kind == EnvKind::scheduled && spec.coin &&
      state.branch < 0) {
    EnvState heads = state, tails = state;
    heads.branch = 0;
    tails.branch = 1;
    ++heads.t;
    ++tails.t;
    return {{0.5, heads}, {0.5, tails}};
  }
  // everything else evolves deterministically
  RngStream dummy(0, 0);
  EnvState next = state;
  evolve(spec, next, u, v, dummy);
  return {{1.0, next}};
}

// Materialize the full configuration on a ball at the state's time.
inline WeightConfig materialize(const EnvSpec& spec, const EnvState& state,
                                const Ball& b) {
  WeightConfig cfg;
  cfg.conductance.reserve(b.edges.size());
  for (const auto& [ui, vi] : b.edges) {
    const int dist_min = std::min(b.distance[ui], b.distance[vi]);
    cfg.conductance.push_back(env_conductance(
        spec, state, b.vertices[ui], b.vertices[vi], dist_min));
  }
  cfg.validate(b);
  return cfg;
}

// Walk-path history restricted to a working ball: configs C_0..C_T plus the
// traversed-edge log.
struct EnvTrace {
  Ball ball;
  std::vector<WeightConfig> configs;   // length T+1
  std::vector<int> traversed;          // ball edge ids, length T
  std::vector<double> step_change;     // sum_e |R_t - R_{t+1}|, length T

  long horizon() const { return static_cast<long>(traversed.size()); }
};

inline double resistance_change(const Ball& b, const WeightConfig& a,
                                const WeightConfig& c) {
  double total = 0.0;
  for (int e = 0; e < b.num_edges(); ++e)
    total += std::abs(a.resistance(e) - c.resistance(e));
  return total;
}

// Drive the environment along a given traversal sequence, materializing each
// config on the ball. Edges are ball edge indices.
inline EnvTrace make_trace(const EnvSpec& spec, const Ball& b,
                           const std::vector<int>& traversed, RngStream& rng) {
  EnvTrace trace;
  trace.ball = b;
  EnvState state;
  trace.configs.push_back(materialize(spec, state, b));
  for (int e : traversed) {
    const auto [ui, vi] = b.edges[e];
    evolve(spec, state, b.vertices[ui], b.vertices[vi], rng);
    trace.configs.push_back(materialize(spec, state, b));
    trace.traversed.push_back(e);
    trace.step_change.push_back(resistance_change(
        b, trace.configs[trace.configs.size() - 2], trace.configs.back()));
  }
  return trace;
}

// --- slowness certificates --------------------------------------------------

// Pi_{t,l} = inf_{E_(l)} C_t / (sup_{V_(l)} deg * sup_{E_(l)} C_t).
inline double pi_factor(const EnvTrace& trace, const GraphFamily& family,
                        long t, int ell) {
  const Ball& b = trace.ball;
  double inf_c = std::numeric_limits<double>::infinity(), sup_c = 0.0;
  for (int e = 0; e < b.num_edges(); ++e) {
    const auto [ui, vi] = b.edges[e];
    if (b.distance[ui] > ell || b.distance[vi] > ell) continue;
    inf_c = std::min(inf_c, trace.configs[t].conductance[e]);
    sup_c = std::max(sup_c, trace.configs[t].conductance[e]);
  }
  int sup_deg = 0;
  for (int x = 0; x < b.num_vertices(); ++x)
    if (b.distance[x] <= ell)
      sup_deg = std::max(sup_deg, family.degree(b.vertices[x]));
  return inf_c / (sup_deg * sup_c);
}

struct SlownessReport {
  std::vector<double> gamma_partial;   // Gamma_1..Gamma_T (cumulative)
  double gamma = 0.0;                  // Gamma_T
  bool plateaued = false;
  std::vector<double> pi_dmax;         // Pi_{t,Dmax} per t = 0..T
  std::vector<double> gamma_star;      // Gamma*_t per t = 0..T
  double gamma_star_sup = 0.0;
  double observed_sup_c = 0.0;
  double observed_inf_c = 0.0;
  std::vector<double> implied_lower_bound;  // per ball edge
  std::string verdict;                 // "hypothesis-plausible"|"not-plausible"
  int d_max = 1;
  int sphere1_size = 0;
};

inline SlownessReport slowness_report(const EnvTrace& trace,
                                      const GraphFamily& family, int d_max) {
  if (trace.configs.size() < 2)
    throw config_error("slowness_report: trace must have length >= 2");
  const Ball& b = trace.ball;
  SlownessReport out;
  out.d_max = d_max;
  double cum = 0.0;
  for (double d : trace.step_change) {
    cum += d;
    out.gamma_partial.push_back(cum);
  }
  out.gamma = cum;

  int sphere1 = 0, sup_deg_dmax = 0;
  for (int x = 0; x < b.num_vertices(); ++x) {
    if (b.distance[x] == 1) ++sphere1;
    if (b.distance[x] <= d_max)
      sup_deg_dmax = std::max(sup_deg_dmax, family.degree(b.vertices[x]));
  }
  out.sphere1_size = sphere1;

  out.observed_inf_c = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trace.configs.size(); ++t) {
    double sup_c1 = 0.0, sup_cd = 0.0;
    double inf_cd = std::numeric_limits<double>::infinity();
    for (int e = 0; e < b.num_edges(); ++e) {
      const auto [ui, vi] = b.edges[e];
      const double c = trace.configs[t].conductance[e];
      out.observed_sup_c = std::max(out.observed_sup_c, c);
      out.observed_inf_c = std::min(out.observed_inf_c, c);
      if (b.distance[ui] <= 1 && b.distance[vi] <= 1) sup_c1 = std::max(sup_c1, c);
      if (b.distance[ui] <= d_max && b.distance[vi] <= d_max) {
        sup_cd = std::max(sup_cd, c);
        inf_cd = std::min(inf_cd, c);
      }
    }
    out.pi_dmax.push_back(inf_cd / (sup_deg_dmax * sup_cd));
    out.gamma_star.push_back(sphere1 * sup_deg_dmax * sup_c1 * sup_cd / inf_cd);
  }
  for (double g : out.gamma_star)
    out.gamma_star_sup = std::max(out.gamma_star_sup, g);

  // implied ellipticity floor: C_t(e) >= 1/(Gamma + 1/C_0(e))
  for (int e = 0; e < b.num_edges(); ++e)
    out.implied_lower_bound.push_back(
        1.0 / (out.gamma + 1.0 / trace.configs[0].conductance[e]));

  // plateau detection: every per-step increment in the trailing window must
  // sit below 1e-9; the window is widened beyond the minimal 10 steps so
  // sporadic late reinforcement is not mistaken for convergence
  const long T = trace.horizon();
  const long window = std::max<long>(10, T / 2);
  if (T > window) {
    out.plateaued = true;
    for (long t = T - window; t < T; ++t)
      if (trace.step_change[t] >= 1e-9) out.plateaued = false;
  }
  const bool bounded = std::isfinite(out.observed_sup_c) &&
                       out.observed_inf_c > 0.0 && std::isfinite(out.gamma);
  out.verdict = (out.plateaued && bounded) ? "hypothesis-plausible"
                                           : "not-plausible";
  return out;
}

// Lower-bound consistency: C_t(e) >= 1/(Gamma_T + 1/C_0(e)) on every edge and
// time of the trace.
inline bool lower_bound_check(const EnvTrace& trace) {
  const Ball& b = trace.ball;
  double gamma = 0.0;
  for (double d : trace.step_change) gamma += d;
  for (const auto& cfg : trace.configs)
    for (int e = 0; e < b.num_edges(); ++e) {
      const double bound = 1.0 / (gamma + 1.0 / trace.configs[0].conductance[e]);
      if (cfg.conductance[e] < bound - 1e-12) return false;
    }
  return true;
}

// --- voltage-ratio certificates ---------------------------------------------

struct RatioCertificate {
  std::vector<int> radii;
  // [radius][t]: per-step voltage ratios over the component star
  std::vector<std::vector<double>> alpha, beta;
  // [radius][t]: running products over s < t (index 0 holds the empty
  // product 1)
  std::vector<std::vector<double>> alpha_prod, beta_prod;
  // [radius][t]: star voltages (by star vertex id) at each time
  std::vector<std::vector<std::vector<double>>> voltages;
  std::vector<StarNetwork> stars;
  int d_max = 1;

  // Lambda_{N,t} = inf over tracked radii n >= N of prod_{s<t} beta*_{n,s}.
  double lambda(int N, long t) const {
    double out = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (radii[i] < N) continue;
      out = std::min(out, beta_prod[i][t]);
    }
    return out;
  }
};

inline RatioCertificate ratio_certificate(
    const EnvTrace& trace, const ComponentSplit::Component& comp,
    const std::vector<int>& radii, int d_max) {
  RatioCertificate cert;
  cert.radii = radii;
  cert.d_max = d_max;
  const long T = trace.horizon();
  for (int n : radii) {
    if (n < d_max)
      throw config_error("ratio_certificate: radius below D_max");
    if (n > trace.ball.radius)
      throw config_error("ratio_certificate: radius beyond working ball");
    StarNetwork star = star_network(trace.ball, comp, n);
    Network net = star.net;
    std::vector<std::vector<double>> volts;
    for (long t = 0; t <= T; ++t) {
      net.conductance = star_conductance(star, trace.configs[t]);
      VoltageField v = solve_voltage(net, 0, star.sinks);
      for (int x = 1; x < net.num_vertices; ++x)
        if (v.values[x] >= 1.0 - 1e-12)
          throw degenerate_voltage_error(
              "ratio_certificate: voltage 1 at a non-origin vertex");
      volts.push_back(v.values);
    }
    std::vector<double> alpha, beta;
    for (long t = 0; t < T; ++t) {
      double a = 1.0, bb = 1.0;  // boundary vertices pin the ratio at 1
      for (int x = 1; x < net.num_vertices; ++x) {
        const double ratio = (1.0 - volts[t + 1][x]) / (1.0 - volts[t][x]);
        a = std::max(a, ratio);
        bb = std::min(bb, ratio);
      }
      alpha.push_back(a);
      beta.push_back(bb);
    }
    std::vector<double> aprod{1.0}, bprod{1.0};
    for (long t = 0; t < T; ++t) {
      aprod.push_back(aprod.back() * alpha[t]);
      bprod.push_back(bprod.back() * beta[t]);
    }
    cert.alpha.push_back(std::move(alpha));
    cert.beta.push_back(std::move(beta));
    cert.alpha_prod.push_back(std::move(aprod));
    cert.beta_prod.push_back(std::move(bprod));
    cert.voltages.push_back(std::move(volts));
    cert.stars.push_back(std::move(star));
  }
  return cert;
}

struct RatioBoundReport {
  bool holds = true;
  double worst_slack = std::numeric_limits<double>::infinity();
  long violations = 0;
};

// |(1-v_{n,t+1}(x))/(1-v_{n,t}(x)) - 1|
//   <= (|sphere_1| * sup_{E_(1)} C_t / Pi_{t,Dmax}) * sum_{E*_k} |R_t-R_{t+1}|
// at every star vertex x, tracked radius n >= D_max and step t.
inline RatioBoundReport ratio_bound_check(const RatioCertificate& cert,
                                          const SlownessReport& slowness,
                                          const EnvTrace& trace) {
  RatioBoundReport out;
  const Ball& b = trace.ball;
  const long T = trace.horizon();
  for (std::size_t i = 0; i < cert.radii.size(); ++i) {
    const StarNetwork& star = cert.stars[i];
    for (long t = 0; t < T; ++t) {
      double sup_c1 = 0.0;
      for (int e = 0; e < b.num_edges(); ++e) {
        const auto [ui, vi] = b.edges[e];
        if (b.distance[ui] <= 1 && b.distance[vi] <= 1)
          sup_c1 = std::max(sup_c1, trace.configs[t].conductance[e]);
      }
      double star_change = 0.0;
      for (int e : star.edge_in_ball)
        star_change += std::abs(trace.configs[t].resistance(e) -
                                trace.configs[t + 1].resistance(e));
      const double rhs = slowness.sphere1_size * sup_c1 /
                         slowness.pi_dmax[t] * star_change;
      for (int x = 1; x < star.net.num_vertices; ++x) {
        const double lhs = std::abs((1.0 - cert.voltages[i][t + 1][x]) /
                                        (1.0 - cert.voltages[i][t][x]) -
                                    1.0);
        const double slack = rhs - lhs;
        out.worst_slack = std::min(out.worst_slack, slack);
        if (lhs > rhs + 1e-12) {
          out.holds = false;
          ++out.violations;
        }
      }
    }
  }
  return out;
}

// --- freezing ---------------------------------------------------------------

struct FreezeResult {
  long gamma_m = -1;  // -1: not triggered within the horizon
  EnvSpec frozen;     // identical until gamma_m - 1, constant afterwards
};

// gamma_m = inf{t >= 1 : Lambda_{Dmax,t} <= 1/m or max(Gamma_t, Gamma*_t) >= m}.
// The certificate may be null when no voltage tracking is available; the
// Lambda trigger is then skipped.
inline FreezeResult freeze_at(const EnvSpec& spec, const EnvTrace& trace,
                              const SlownessReport& slowness,
                              const RatioCertificate* cert, int m) {
  if (m < 1) throw config_error("freeze_at: m >= 1 required");
  FreezeResult out;
  out.frozen = spec;
  const long T = trace.horizon();
  for (long t = 1; t <= T; ++t) {
    const double gamma_t = slowness.gamma_partial[t - 1];
    const double gamma_star_t = slowness.gamma_star[t];
    bool trigger = std::max(gamma_t, gamma_star_t) >= double(m);
    if (!trigger && cert != nullptr)
      trigger = cert->lambda(cert->d_max, t) <= 1.0 / m;
    if (trigger) {
      out.gamma_m = t;
      out.frozen.freeze_after = t - 1;
      return out;
    }
  }
  return out;  // gamma_m beyond horizon: frozen env == original
}

}  // namespace rwce
