#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rwce/errors.hpp"
#include "rwce/network.hpp"
#include "rwce/rng.hpp"

namespace rwce {

inline constexpr double kHarmonicTol = 1e-10;
inline constexpr int kDenseSolveLimit = 2000;

struct VoltageField {
  std::vector<double> values;  // by network vertex id
  int source = -1;
  std::vector<int> sinks;
  double residual = 0.0;  // max harmonicity defect over free vertices
};

struct EdgeFlow {
  std::vector<double> flow;  // oriented along the edge pair (u -> v), per edge
  int source = -1;
  std::vector<int> sinks;
  double strength = 0.0;  // J_a before rescaling to a unit flow

  // Signed flow from u to v; antisymmetric, zero off the edge set.
  double at(const Network& net, int u, int v) const {
    const int e = net.edge_index(u, v);
    if (e < 0) return 0.0;
    return net.edges[e].first == u ? flow[e] : -flow[e];
  }
};

namespace detail {

inline void check_reachability(const Network& net, int source,
                               const std::vector<int>& sinks) {
  std::vector<char> seen(net.num_vertices, 0);
  std::vector<int> stack{source};
  seen[source] = 1;
  for (int s : sinks) {
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  }
  auto adj = net.adjacency();
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [y, e] : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  for (int x = 0; x < net.num_vertices; ++x)
    if (!seen[x])
      throw connectivity_error(
          "solve_voltage: free region disconnected from source and sink");
}

}  // namespace detail

// Harmonic voltage with v(source)=1 and v=0 on the sink set. Direct dense
// factorization below kDenseSolveLimit free vertices, conjugate gradient
// above.
inline VoltageField solve_voltage(const Network& net, int source,
                                  const std::vector<int>& sinks) {
  net.validate();
  if (sinks.empty()) throw config_error("solve_voltage: empty sink set");
  for (int s : sinks)
    if (s == source) throw config_error("solve_voltage: source in sink set");
  detail::check_reachability(net, source, sinks);

  std::vector<int> free_index(net.num_vertices, -1);
  std::vector<char> is_sink(net.num_vertices, 0);
  for (int s : sinks) is_sink[s] = 1;
  std::vector<int> free_vertices;
  for (int x = 0; x < net.num_vertices; ++x) {
    if (x == source || is_sink[x]) continue;
    free_index[x] = static_cast<int>(free_vertices.size());
    free_vertices.push_back(x);
  }
  const int nf = static_cast<int>(free_vertices.size());

  VoltageField out;
  out.source = source;
  out.sinks = sinks;
  out.values.assign(net.num_vertices, 0.0);
  out.values[source] = 1.0;

  if (nf > 0) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> diag(nf, 0.0);
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      const auto [u, v] = net.edges[e];
      const double c = net.conductance[e];
      const int fu = free_index[u], fv = free_index[v];
      if (fu >= 0) diag[fu] += c;
      if (fv >= 0) diag[fv] += c;
      if (fu >= 0 && fv >= 0) {
        trips.push_back({fu, fv, -c});
        trips.push_back({fv, fu, -c});
      } else if (fu >= 0 && v == source) {
        rhs[fu] += c;
      } else if (fv >= 0 && u == source) {
        rhs[fv] += c;
      }
    }
    for (int i = 0; i < nf; ++i) trips.push_back({i, i, diag[i]});

    Eigen::VectorXd x(nf);
    if (nf < kDenseSolveLimit) {
      Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nf, nf);
      for (const auto& t : trips) lap(t.row(), t.col()) += t.value();
      x = lap.ldlt().solve(rhs);
    } else {
      Eigen::SparseMatrix<double> lap(nf, nf);
      lap.setFromTriplets(trips.begin(), trips.end());
      Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                               Eigen::Lower | Eigen::Upper>
          cg;
      cg.setTolerance(1e-12);
      cg.setMaxIterations(20 * nf);
      cg.compute(lap);
      x = cg.solve(rhs);
    }
    for (int i = 0; i < nf; ++i) {
      if (!std::isfinite(x[i]))
        throw connectivity_error("solve_voltage: singular system");
      out.values[free_vertices[i]] = x[i];
    }
  }

  // harmonicity residual per free vertex
  auto adj = net.adjacency();
  double residual = 0.0;
  for (int x : free_vertices) {
    double total = 0.0, mean = 0.0;
    for (auto [y, e] : adj[x]) {
      total += net.conductance[e];
      mean += net.conductance[e] * out.values[y];
    }
    residual = std::max(residual, std::abs(out.values[x] - mean / total));
  }
  out.residual = residual;
  return out;
}

// Strength J_a of the voltage field: net current leaving the source.
inline double source_current(const Network& net, const VoltageField& v) {
  double j = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto [a, b] = net.edges[e];
    if (a == v.source)
      j += net.conductance[e] * (v.values[a] - v.values[b]);
    else if (b == v.source)
      j += net.conductance[e] * (v.values[b] - v.values[a]);
  }
  return j;
}

inline EdgeFlow unit_current(const Network& net, int source,
                             const std::vector<int>& sinks) {
  const VoltageField v = solve_voltage(net, source, sinks);
  const double j = source_current(net, v);
  EdgeFlow out;
  out.source = source;
  out.sinks = sinks;
  out.strength = j;
  out.flow.resize(net.edges.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto [a, b] = net.edges[e];
    out.flow[e] = net.conductance[e] * (v.values[a] - v.values[b]) / j;
  }
  return out;
}

inline double flow_energy(const std::vector<double>& flow,
                          const std::vector<double>& conductance) {
  double energy = 0.0;
  for (std::size_t e = 0; e < flow.size(); ++e)
    energy += flow[e] * flow[e] / conductance[e];
  return energy;
}

inline double flow_energy(const Network& net, const EdgeFlow& f) {
  return flow_energy(f.flow, net.conductance);
}

// Max node-balance defect of a flow over non-source, non-sink vertices.
inline double node_balance_defect(const Network& net, const EdgeFlow& f) {
  std::vector<double> div(net.num_vertices, 0.0);
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    div[net.edges[e].first] -= f.flow[e];
    div[net.edges[e].second] += f.flow[e];
  }
  std::vector<char> fixed(net.num_vertices, 0);
  fixed[f.source] = 1;
  for (int s : f.sinks) fixed[s] = 1;
  double defect = 0.0;
  for (int x = 0; x < net.num_vertices; ++x)
    if (!fixed[x]) defect = std::max(defect, std::abs(div[x]));
  return defect;
}

// Max potential-law defect over the fundamental cycles of a BFS spanning tree.
inline double kirchhoff_cycle_residual(const Network& net, const EdgeFlow& f) {
  auto adj = net.adjacency();
  std::vector<int> parent(net.num_vertices, -1);
  std::vector<int> parent_edge(net.num_vertices, -1);
  std::vector<double> potential(net.num_vertices,
                                std::numeric_limits<double>::quiet_NaN());
  std::vector<int> order;
  potential[0] = 0.0;
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int x = order[head];
    for (auto [y, e] : adj[x]) {
      if (!std::isnan(potential[y])) continue;
      const double drop = (net.edges[e].first == x ? -1.0 : 1.0) * f.flow[e] /
                          net.conductance[e];
      potential[y] = potential[x] + drop;
      parent[y] = x;
      parent_edge[y] = e;
      order.push_back(y);
    }
  }
  double defect = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto [u, v] = net.edges[e];
    if (parent_edge[u] == static_cast<int>(e) ||
        parent_edge[v] == static_cast<int>(e))
      continue;  // tree edge
    const double drop = f.flow[e] / net.conductance[e];
    defect = std::max(defect, std::abs(potential[u] - drop - potential[v]));
  }
  return defect;
}

inline double effective_resistance(const Network& net, int source,
                                   const std::vector<int>& sinks) {
  const VoltageField v = solve_voltage(net, source, sinks);
  return 1.0 / source_current(net, v);
}

// Effective resistance between the origin and the collapsed boundary of a
// ball.
inline double effective_resistance(const Ball& b, const WeightConfig& cfg) {
  const CollapsedNetwork c = collapse_boundary(b, cfg);
  return effective_resistance(c.net, 0, {c.sink});
}

struct ResistanceProfile {
  std::vector<int> radii;
  std::vector<double> values;  // R_n
  bool monotone = true;
  std::string verdict;     // "divergent" or "convergent"
  double limit_estimate = 0.0;  // meaningful for convergent profiles
  int truncation_radius = 0;
  double epsilon = 1e-6;   // divergence slope threshold
};

// Divergence is declared when the profile still gains more than epsilon per
// radius step over the last window steps; the verdict is a truncation-level
// heuristic, never a proof.
inline ResistanceProfile resistance_profile(const GraphFamily& family,
                                            const WeightFn& weights,
                                            const std::vector<int>& radii,
                                            double epsilon = 1e-6) {
  if (radii.empty()) throw config_error("resistance_profile: empty radii list");
  ResistanceProfile out;
  out.radii = radii;
  out.epsilon = epsilon;
  out.truncation_radius = radii.back();
  for (int n : radii) {
    const Ball b = ball(family, n);
    out.values.push_back(effective_resistance(b, make_config(b, weights)));
  }
  for (std::size_t i = 1; i < out.values.size(); ++i)
    if (out.values[i] < out.values[i - 1] - 1e-12) out.monotone = false;

  const int window = std::min<int>(5, static_cast<int>(out.values.size()) - 1);
  bool divergent = window > 0;
  for (int k = 0; k < window; ++k) {
    const std::size_t i = out.values.size() - 1 - k;
    if (out.values[i] - out.values[i - 1] <= epsilon) divergent = false;
  }
  out.verdict = divergent ? "divergent" : "convergent";
  out.limit_estimate = out.values.back();
  if (!divergent && out.values.size() >= 3) {
    // geometric tail extrapolation when the increments contract steadily
    const double d1 = out.values[out.values.size() - 1] -
                      out.values[out.values.size() - 2];
    const double d0 = out.values[out.values.size() - 2] -
                      out.values[out.values.size() - 3];
    if (d0 > 0 && d1 > 0 && d1 < d0) {
      const double r = d1 / d0;
      out.limit_estimate = out.values.back() + d1 * r / (1.0 - r);
    }
  }
  return out;
}

// Total conductance at the origin of a ball.
inline double origin_conductance(const Ball& b, const WeightConfig& cfg) {
  double total = 0.0;
  for (int e = 0; e < b.num_edges(); ++e)
    if (b.edges[e].first == 0 || b.edges[e].second == 0)
      total += cfg.conductance[e];
  return total;
}

// P[walk returns to the origin] on the radius-n truncation:
// 1 - 1/(C(a) * R_n).
inline double return_probability(const Ball& b, const WeightConfig& cfg) {
  const double r_n = effective_resistance(b, cfg);
  const double ca = origin_conductance(b, cfg);
  const double prod = ca * r_n;
  if (prod < 1.0 - 1e-9)
    throw internal_consistency_error(
        "return_probability: C(a) * R_n fell below 1");
  return std::clamp(1.0 - 1.0 / prod, 0.0, 1.0);
}

struct PerturbationBound {
  double resistance_sum = 0.0;        // sum_e |R_1(e) - R_2(e)|
  std::vector<double> differences;    // |R_{1,n} - R_{2,n}| per radius
  bool holds = true;
};

inline PerturbationBound perturbation_bound(const Ball& b,
                                            const WeightConfig& w1,
                                            const WeightConfig& w2) {
  w1.validate(b);
  w2.validate(b);
  PerturbationBound out;
  for (int e = 0; e < b.num_edges(); ++e)
    out.resistance_sum += std::abs(w1.resistance(e) - w2.resistance(e));
  const double diff =
      std::abs(effective_resistance(b, w1) - effective_resistance(b, w2));
  out.differences.push_back(diff);
  out.holds = diff <= out.resistance_sum + 1e-10;
  return out;
}

struct CrossingsEstimate {
  std::vector<double> mean;    // signed crossings per edge, oriented u -> v
  std::vector<double> stderr_; // standard error per edge
  int trials = 0;
};

// Monte Carlo estimate of expected net crossings per edge by the walk from
// source to absorption at the sink set.
inline CrossingsEstimate net_crossings_estimate(const Network& net, int source,
                                                const std::vector<int>& sinks,
                                                int trials, std::uint64_t seed,
                                                long max_steps = 10'000'000) {
  if (trials < 1) throw config_error("net_crossings_estimate: trials >= 1");
  net.validate();
  auto adj = net.adjacency();
  std::vector<char> is_sink(net.num_vertices, 0);
  for (int s : sinks) is_sink[s] = 1;

  std::vector<double> sum(net.edges.size(), 0.0), sumsq(net.edges.size(), 0.0);
  std::vector<double> count(net.edges.size(), 0.0);
  for (int k = 0; k < trials; ++k) {
    RngStream rng = walk_stream(seed, static_cast<std::uint64_t>(k));
    std::fill(count.begin(), count.end(), 0.0);
    int x = source;
    long steps = 0;
    while (!is_sink[x]) {
      if (++steps > max_steps)
        throw absorption_error(
            "net_crossings_estimate: walk failed to absorb within step cap");
      double total = 0.0;
      for (auto [y, e] : adj[x]) total += net.conductance[e];
      double u = rng.uniform() * total;
      int chosen = static_cast<int>(adj[x].size()) - 1;
      for (std::size_t i = 0; i < adj[x].size(); ++i) {
        u -= net.conductance[adj[x][i].second];
        if (u <= 0) {
          chosen = static_cast<int>(i);
          break;
        }
      }
      const auto [y, e] = adj[x][chosen];
      count[e] += (net.edges[e].first == x) ? 1.0 : -1.0;
      x = y;
    }
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      sum[e] += count[e];
      sumsq[e] += count[e] * count[e];
    }
  }
  CrossingsEstimate out;
  out.trials = trials;
  out.mean.resize(net.edges.size());
  out.stderr_.resize(net.edges.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    out.mean[e] = sum[e] / trials;
    const double var =
        std::max(0.0, sumsq[e] / trials - out.mean[e] * out.mean[e]);
    out.stderr_[e] = std::sqrt(var / trials);
  }
  return out;
}

struct VoltageDifferenceIdentity {
  double left = 0.0;   // v_t(x) - v_{t+1}(x)
  double right = 0.0;  // flow-product expansion of the same difference
  double discrepancy() const { return std::abs(left - right); }
};

// Both sides of the exact identity expressing the one-step voltage change at
// x through products of two unit currents: the origin-to-boundary current at
// the old weights and the x-to-(origin+boundary) current at the new weights,
// weighted by the per-edge resistance changes.
inline VoltageDifferenceIdentity voltage_difference_identity(
    const Network& net, int origin, const std::vector<int>& boundary,
    const std::vector<double>& cond_t, const std::vector<double>& cond_next,
    int x) {
  if (x == origin) throw config_error("voltage_difference_identity: x == origin");
  for (int s : boundary)
    if (s == x)
      throw config_error("voltage_difference_identity: x in boundary set");
  Network net_t = net, net_next = net;
  net_t.conductance = cond_t;
  net_next.conductance = cond_next;

  const VoltageField v_t = solve_voltage(net_t, origin, boundary);
  const VoltageField v_next = solve_voltage(net_next, origin, boundary);
  VoltageDifferenceIdentity out;
  out.left = v_t.values[x] - v_next.values[x];

  const double r_t = effective_resistance(net_t, origin, boundary);
  const EdgeFlow i0 = unit_current(net_t, origin, boundary);
  std::vector<int> sink1 = boundary;
  sink1.push_back(origin);
  std::sort(sink1.begin(), sink1.end());
  const EdgeFlow i1 = unit_current(net_next, x, sink1);

  double total = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e)
    total += (1.0 / cond_t[e] - 1.0 / cond_next[e]) * i1.flow[e] * i0.flow[e];
  out.right = total / r_t;
  return out;
}

struct SeparatorBound {
  double max_over_separator = 0.0;
  double value_at_y = 0.0;
  bool holds = true;
};

// With u held at voltage 1 and A grounded, any y separated from u by S
// satisfies max_S v >= v(y). The separation precondition is verified by a cut
// search.
inline SeparatorBound separator_bound_check(const Network& net, int u,
                                            const std::vector<int>& separator,
                                            const std::vector<int>& grounded,
                                            int y) {
  std::vector<char> blocked(net.num_vertices, 0);
  for (int s : separator) blocked[s] = 1;
  if (blocked[u] || blocked[y])
    throw precondition_error("separator_bound_check: u or y inside S");
  for (int g : grounded)
    if (g == u || blocked[g])
      throw precondition_error("separator_bound_check: sets not disjoint");
  // every u-y path must meet S: removing S must disconnect y from u
  {
    auto adj = net.adjacency();
    std::vector<char> seen(net.num_vertices, 0);
    std::vector<int> stack{y};
    seen[y] = 1;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      if (a == u)
        throw precondition_error(
            "separator_bound_check: a u-y path avoids the separator");
      for (auto [b, e] : adj[a])
        if (!seen[b] && !blocked[b]) {
          seen[b] = 1;
          stack.push_back(b);
        }
    }
  }
  const VoltageField v = solve_voltage(net, u, grounded);
  SeparatorBound out;
  out.value_at_y = v.values[y];
  for (int s : separator)
    out.max_over_separator = std::max(out.max_over_separator, v.values[s]);
  out.holds = out.max_over_separator >= out.value_at_y - 1e-12;
  return out;
}

}  // namespace rwce
