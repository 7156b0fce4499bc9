#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rwce/config.hpp"
#include "rwce/electrical.hpp"
#include "rwce/environment.hpp"
#include "rwce/graph.hpp"
#include "rwce/network.hpp"
#include "rwce/report.hpp"
#include "rwce/walker.hpp"

namespace rwce {

struct CriterionResult {
  int index = 0;
  std::string title;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline CheckResult check(std::string id, std::string description,
                         std::string anchor, double measured, double bound,
                         bool pass) {
  return CheckResult{std::move(id), std::move(description), std::move(anchor),
                     pass, measured, bound};
}

// random connected network: spanning tree plus chords, conductances in
// [0.2, 5]
inline Network random_network(RngStream& rng, int max_vertices = 12) {
  const int n = 4 + static_cast<int>(rng.uniform() * (max_vertices - 3));
  Network net;
  net.num_vertices = n;
  std::set<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    const int parent = static_cast<int>(rng.uniform() * v);
    edges.insert({std::min(parent, v), std::max(parent, v)});
  }
  const int chords = static_cast<int>(rng.uniform() * n);
  for (int k = 0; k < chords; ++k) {
    const int u = static_cast<int>(rng.uniform() * n);
    const int v = static_cast<int>(rng.uniform() * n);
    if (u != v) edges.insert({std::min(u, v), std::max(u, v)});
  }
  net.edges.assign(edges.begin(), edges.end());
  for (std::size_t e = 0; e < net.edges.size(); ++e)
    net.conductance.push_back(0.2 + 4.8 * rng.uniform());
  return net;
}

inline std::vector<double> random_conductances(RngStream& rng,
                                               std::size_t count) {
  std::vector<double> out(count);
  for (double& c : out) c = 0.2 + 4.8 * rng.uniform();
  return out;
}

// add a random circulation around a fundamental cycle of a BFS tree; the
// perturbed flow keeps the same net source strength
inline std::vector<double> perturbed_unit_flow(const Network& net,
                                               const EdgeFlow& base,
                                               RngStream& rng) {
  auto adj = net.adjacency();
  std::vector<int> parent(net.num_vertices, -1), parent_edge(net.num_vertices, -1);
  std::vector<char> seen(net.num_vertices, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  std::vector<char> tree_edge(net.edges.size(), 0);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const int x = queue[h];
    for (auto [y, e] : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = x;
        parent_edge[y] = e;
        tree_edge[e] = 1;
        queue.push_back(y);
      }
  }
  std::vector<int> chords;
  for (std::size_t e = 0; e < net.edges.size(); ++e)
    if (!tree_edge[e]) chords.push_back(static_cast<int>(e));
  std::vector<double> flow = base.flow;
  if (chords.empty()) return flow;  // tree network: unit current is unique
  const int chord = chords[static_cast<int>(rng.uniform() * chords.size())];
  const double eps = 0.5 * (rng.uniform() - 0.5);
  auto [cu, cv] = net.edges[chord];
  flow[chord] += eps;  // oriented cu -> cv
  // route -eps back along the tree path cv -> cu
  std::vector<int> pu, pv;
  for (int x = cu; x != -1; x = parent[x]) pu.push_back(x);
  for (int x = cv; x != -1; x = parent[x]) pv.push_back(x);
  while (pu.size() > 1 && pv.size() > 1 &&
         pu[pu.size() - 2] == pv[pv.size() - 2]) {
    pu.pop_back();
    pv.pop_back();
  }
  auto push = [&](int from, int to, int e, double amount) {
    // add `amount` of flow oriented from -> to on edge e
    if (net.edges[e].first == from)
      flow[e] += amount;
    else
      flow[e] -= amount;
  };
  for (std::size_t i = 0; i + 1 < pv.size(); ++i)
    push(pv[i], pv[i + 1], parent_edge[pv[i]], eps);
  for (std::size_t i = pu.size() - 1; i > 0; --i)
    push(pu[i], pu[i - 1], parent_edge[pu[i - 1]], eps);
  return flow;
}

// --- criterion 1: exact series/parallel values + harmonic residuals ---------

inline CriterionResult criterion_electrical_exactness() {
  CriterionResult out{1, "electrical exactness", {}};
  {
    Network path;  // 0 -1- 1 -2- 2 with resistances 1 and 2
    path.num_vertices = 3;
    path.edges = {{0, 1}, {1, 2}};
    path.conductance = {1.0, 0.5};
    const double r = effective_resistance(path, 0, {2});
    out.checks.push_back(check(
        "series", "path with resistances 1 and 2 has end-to-end resistance 3",
        "series-reduction", std::abs(r - 3.0), 1e-12, std::abs(r - 3.0) <= 1e-12));
  }
  {
    Network par;  // two length-2 unit paths from 0 to 2
    par.num_vertices = 4;
    par.edges = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    par.conductance = {1.0, 1.0, 1.0, 1.0};
    const double r = effective_resistance(par, 0, {2});
    out.checks.push_back(check(
        "parallel", "two parallel unit paths of length 2 give resistance 1",
        "parallel-reduction", std::abs(r - 1.0), 1e-12,
        std::abs(r - 1.0) <= 1e-12));
  }
  {
    double worst = 0.0;
    for (int n : {6, 10}) {
      auto fam = line_family();
      Ball b = ball(fam, n);
      auto c = collapse_boundary(b, make_config(b, unit_weights()));
      worst = std::max(worst, solve_voltage(c.net, 0, {c.sink}).residual);
    }
    {
      auto fam = grid2d_family();
      Ball b = ball(fam, 5);
      auto c = collapse_boundary(b, make_config(b, unit_weights()));
      worst = std::max(worst, solve_voltage(c.net, 0, {c.sink}).residual);
    }
    {
      auto fam = tree_family(2);
      Ball b = ball(fam, 6);
      auto c = collapse_boundary(b, make_config(b, unit_weights()));
      worst = std::max(worst, solve_voltage(c.net, 0, {c.sink}).residual);
    }
    out.checks.push_back(check("harmonicity",
                               "max mean-value defect across fixture solves",
                               "harmonic-mean-value", worst, 1e-10,
                               worst <= 1e-10));
  }
  return out;
}

// --- criterion 2: line return probabilities ----------------------------------

inline CriterionResult criterion_line_return(std::uint64_t seed) {
  CriterionResult out{2, "return probability on the line", {}};
  auto fam = line_family();
  double worst = 0.0;
  for (int n = 2; n <= 20; ++n) {
    Ball b = ball(fam, n);
    const double p = return_probability(b, make_config(b, unit_weights()));
    worst = std::max(worst, std::abs(p - (1.0 - 1.0 / n)));
  }
  out.checks.push_back(check("formula",
                             "return probability equals 1 - 1/n for n = 2..20",
                             "return-probability-formula", worst, 1e-10,
                             worst <= 1e-10));
  // Monte Carlo at n = 10: 4 sigma band around 0.9 over 1e4 trials
  EnvSpec spec;
  SimOptions opts;
  opts.max_depth = 10;
  opts.stop_on_truncation = true;
  opts.stop_at_first_return = true;
  long returned = 0;
  const long trials = 10000;
  for (long trial = 0; trial < trials; ++trial) {
    RngStream wrng = walk_stream(seed, trial);
    EnvState state;
    Vertex x = 0;
    for (long t = 0; t < 1000000; ++t) {
      if (fam.depth(x) >= 10) break;
      x = sample_move(fam, spec, state, x, wrng);
      if (x == 0) {
        ++returned;
        break;
      }
    }
  }
  const double freq = double(returned) / trials;
  const double band = 4.0 * std::sqrt(0.9 * 0.1 / trials);
  out.checks.push_back(check("monte-carlo",
                             "empirical return frequency at radius 10",
                             "return-probability-formula",
                             std::abs(freq - 0.9), band,
                             std::abs(freq - 0.9) <= band));
  return out;
}

// --- criterion 3: geometric transient anchor ---------------------------------

inline CriterionResult criterion_geometric_anchor(std::uint64_t seed) {
  CriterionResult out{3, "geometric drift anchor", {}};
  auto fam = line_family();
  WeightFn geo = geometric_line_weights(2.0);
  Ball b = ball(fam, 30);
  const double p = return_probability(b, make_config(b, geo));
  out.checks.push_back(check(
      "profile", "limiting return probability from the radius-30 truncation",
      "geometric-escape-probability", std::abs(p - 2.0 / 3.0), 0.01,
      std::abs(p - 2.0 / 3.0) <= 0.01));

  EnvSpec spec;
  spec.initial = geo;
  SimOptions opts;
  opts.stop_on_truncation = true;
  opts.stop_at_first_return = true;
  auto rep = classify(fam, spec, 10000, 10000, {5, 10, 20, 30}, seed, opts);
  const double noret = 1.0 - rep.return_frequency;
  out.checks.push_back(check("monte-carlo",
                             "no-return frequency over 1e4 trials",
                             "geometric-escape-probability",
                             std::abs(noret - 1.0 / 3.0), 0.05,
                             std::abs(noret - 1.0 / 3.0) <= 0.05));
  return out;
}

// --- criterion 4: one-step voltage difference identity -----------------------

inline CriterionResult criterion_voltage_difference(std::uint64_t seed) {
  CriterionResult out{4, "voltage difference identity", {}};
  RngStream rng(seed, 404);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Network net = random_network(rng);
    const int n = net.num_vertices;
    const std::vector<int> boundary{n - 1};
    int x = 1 + static_cast<int>(rng.uniform() * (n - 2));
    const auto cond_t = random_conductances(rng, net.edges.size());
    const auto cond_next = random_conductances(rng, net.edges.size());
    const auto id =
        voltage_difference_identity(net, 0, boundary, cond_t, cond_next, x);
    worst = std::max(worst, id.discrepancy());
  }
  out.checks.push_back(check(
      "identity", "both sides agree on 100 random networks and config pairs",
      "voltage-difference-expansion", worst, 1e-8, worst <= 1e-8));
  return out;
}

// --- criterion 5: variational principles -------------------------------------

inline CriterionResult criterion_variational(std::uint64_t seed) {
  CriterionResult out{5, "energy and monotonicity principles", {}};
  RngStream rng(seed, 505);
  // Thomson: 1000 perturbed unit flows never beat the unit current
  double worst_gain = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Network net = random_network(rng);
    const int sink = net.num_vertices - 1;
    const EdgeFlow base = unit_current(net, 0, {sink});
    const double e0 = flow_energy(net, base);
    EdgeFlow perturbed = base;
    perturbed.flow = perturbed_unit_flow(net, base, rng);
    const double e1 = flow_energy(net, perturbed);
    worst_gain = std::max(worst_gain, e0 - e1);
  }
  out.checks.push_back(check(
      "thomson", "perturbed unit flows never undercut the unit current energy",
      "energy-minimizing-current", worst_gain, 1e-12, worst_gain <= 1e-12));

  // Rayleigh: 200 single-resistance increases never lower the resistance
  double worst_drop = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Network net = random_network(rng);
    const int sink = net.num_vertices - 1;
    const double before = effective_resistance(net, 0, {sink});
    const int e = static_cast<int>(rng.uniform() * net.edges.size());
    net.conductance[e] *= 0.3 + 0.6 * rng.uniform();  // raise the resistance
    const double after = effective_resistance(net, 0, {sink});
    worst_drop = std::max(worst_drop, before - after);
  }
  out.checks.push_back(check(
      "rayleigh", "raising one resistance never lowers the network resistance",
      "resistance-monotonicity", worst_drop, 1e-12, worst_drop <= 1e-12));

  // Ohm consistency on a ball fixture: voltage drop = unit current * R / R_n
  auto fam = line_family();
  Ball b = ball(fam, 8);
  auto c = collapse_boundary(b, make_config(b, unit_weights()));
  const VoltageField v = solve_voltage(c.net, 0, {c.sink});
  const EdgeFlow i = unit_current(c.net, 0, {c.sink});
  const double reff = effective_resistance(c.net, 0, {c.sink});
  double worst_ohm = 0.0;
  for (std::size_t e = 0; e < c.net.edges.size(); ++e) {
    const auto [u, w] = c.net.edges[e];
    const double drop = v.values[u] - v.values[w];
    worst_ohm = std::max(
        worst_ohm,
        std::abs(drop - i.flow[e] / c.net.conductance[e] / reff));
  }
  out.checks.push_back(check("ohm", "per-edge voltage drops match the current",
                             "ohm-consistency", worst_ohm, 1e-10,
                             worst_ohm <= 1e-10));
  return out;
}

// --- criterion 6: resistance perturbation bound ------------------------------

inline CriterionResult criterion_perturbation(std::uint64_t seed,
                                              const std::vector<int>& radii) {
  CriterionResult out{6, "resistance perturbation bound", {}};
  RngStream rng(seed, 606);
  auto fam = line_family();
  bool all = true;
  double worst_excess = -1e300;
  for (int n : radii) {
    Ball b = ball(fam, n);
    for (int trial = 0; trial < 100 / static_cast<int>(radii.size()) + 1;
         ++trial) {
      WeightConfig w1, w2;
      for (int e = 0; e < b.num_edges(); ++e) {
        w1.conductance.push_back(0.2 + 4.8 * rng.uniform());
        w2.conductance.push_back(0.2 + 4.8 * rng.uniform());
      }
      const auto pb = perturbation_bound(b, w1, w2);
      all = all && pb.holds;
      worst_excess =
          std::max(worst_excess, pb.differences[0] - pb.resistance_sum);
    }
  }
  out.checks.push_back(check(
      "bound", "|R_1,n - R_2,n| stays below the summed resistance change",
      "resistance-perturbation-bound", worst_excess, 1e-10, all));
  return out;
}

// --- criterion 7: voltage-ratio bound ----------------------------------------

inline CriterionResult criterion_ratio_bound(std::uint64_t seed) {
  CriterionResult out{7, "voltage-ratio bound", {}};
  {
    auto fam = line_family();
    ComponentSplit split = split_at_origin(fam, 8);
    Ball b = ball(fam, 8);
    EnvSpec spec;
    spec.kind = EnvKind::scheduled;
    spec.amp = 0.5;
    spec.decay = 0.5;
    spec.wexp = 1.5;
    RngStream rng(seed, 707);
    EnvTrace trace = make_trace(spec, b, std::vector<int>(4, 0), rng);
    SlownessReport slow = slowness_report(trace, fam, split.d_max);
    for (const auto& comp : split.components) {
      RatioCertificate cert =
          ratio_certificate(trace, comp, {2, 4, 6, 8}, split.d_max);
      const auto bound = ratio_bound_check(cert, slow, trace);
      out.checks.push_back(check(
          "line", "scheduled schedule on the line, radii 2..8",
          "voltage-ratio-bound", -bound.worst_slack, 1e-12, bound.holds));
    }
  }
  {
    auto fam = grid2d_family();
    ComponentSplit split = split_at_origin(fam, 6);
    Ball b = ball(fam, 4);
    EnvSpec spec;
    spec.kind = EnvKind::scheduled;
    spec.amp = 0.4;
    spec.decay = 0.5;
    spec.wexp = 2.0;
    RngStream rng(seed, 708);
    EnvTrace trace = make_trace(spec, b, std::vector<int>(3, 0), rng);
    SlownessReport slow = slowness_report(trace, fam, split.d_max);
    RatioCertificate cert =
        ratio_certificate(trace, split.components[0], {3, 4}, split.d_max);
    const auto bound = ratio_bound_check(cert, slow, trace);
    out.checks.push_back(check("grid", "scheduled schedule on the grid star",
                               "voltage-ratio-bound", -bound.worst_slack,
                               1e-12, bound.holds));
  }
  return out;
}

// --- criterion 8: one-step martingale suite ----------------------------------

inline CriterionResult criterion_martingale() {
  CriterionResult out{8, "stopped process one-step checks", {}};
  auto line = line_family();
  ComponentSplit split = split_at_origin(line, 5);
  Ball b = ball(line, 5);
  const ComponentSplit::Component* comp = nullptr;
  const int plus = b.index_of.at(1);
  for (const auto& c : split.components)
    if (std::find(c.members.begin(), c.members.end(), plus) != c.members.end())
      comp = &c;

  {  // static: exact equality
    EnvSpec spec;
    EnvState state;
    double worst = 0.0;
    for (Vertex k : {1, 2, 3, 4}) {
      auto rep = one_step_martingale_check(line, spec, state, b, *comp, 5,
                                           b.index_of.at(k));
      worst = std::max(worst, std::abs(rep.a_expected - rep.a_before));
      worst = std::max(worst, std::abs(rep.b_expected - rep.b_before));
    }
    out.checks.push_back(check("static", "static environments give equality",
                               "stopped-process-harmonicity", worst, 1e-12,
                               worst <= 1e-12));
  }
  {  // scheduled: inequalities with 1e-10 slack
    EnvSpec spec;
    spec.kind = EnvKind::scheduled;
    spec.amp = 0.7;
    spec.decay = 0.6;
    spec.wexp = 1.0;
    bool all = true;
    double worst = -1e300;
    for (long t0 : {0L, 1L, 2L}) {
      EnvState state;
      state.t = t0;
      for (Vertex k : {1, 2, 3, 4}) {
        auto rep = one_step_martingale_check(line, spec, state, b, *comp, 5,
                                             b.index_of.at(k));
        all = all && rep.super_ok && rep.sub_ok;
        worst = std::max(worst, rep.a_expected - rep.a_before);
        worst = std::max(worst, rep.b_before - rep.b_expected);
      }
    }
    out.checks.push_back(check("scheduled",
                               "super/sub inequalities under a schedule",
                               "stopped-supermartingale", worst, 1e-10, all));
  }
  {  // reinforcement: every state reachable in four steps
    auto fam = explicit_family({{0, 1}, {0, 2}, {1, 2}, {1, 3}, {3, 4}}, 0,
                               "triangle_tail");
    Ball tb = ball(fam, 3);
    ComponentSplit tsplit = split_at_origin(fam, 3);
    EnvSpec spec;
    spec.kind = EnvKind::once_reinforced;
    spec.delta = 2.0;
    ExactLaw law = exact_law(fam, spec, 4, 0);
    bool all = true;
    double worst = -1e300;
    for (const auto& atom : law.atoms)
      for (std::size_t t = 0; t < atom.path.size(); ++t) {
        const Vertex x = atom.path[t];
        if (x == 0 || fam.depth(x) >= 3) continue;
        auto rep = one_step_martingale_check(fam, spec, atom.history[t], tb,
                                             tsplit.components[0], 3,
                                             tb.index_of.at(x));
        all = all && rep.super_ok && rep.sub_ok;
        worst = std::max(worst, rep.a_expected - rep.a_before);
        worst = std::max(worst, rep.b_before - rep.b_expected);
      }
    out.checks.push_back(check("reinforced",
                               "inequalities at every enumerated state",
                               "stopped-supermartingale", worst, 1e-10, all));
  }
  return out;
}

// --- criterion 9: law equivalence + frozen process ---------------------------

inline CriterionResult criterion_law_equivalence() {
  CriterionResult out{9, "law equivalence and freezing", {}};
  auto fam = explicit_family({{0, 1}, {0, 2}, {1, 2}}, 0, "triangle");
  {
    EnvSpec spec;
    const double tv = nonadaptive_equivalence(fam, spec, 4);
    out.checks.push_back(check("static", "static environment coupling",
                               "nonadaptive-coupling", tv, 1e-10,
                               tv <= 1e-10));
  }
  {
    EnvSpec spec;
    spec.kind = EnvKind::scheduled;
    spec.amp = 0.8;
    spec.decay = 0.5;
    spec.wexp = 1.0;
    const double tv = nonadaptive_equivalence(fam, spec, 4);
    out.checks.push_back(check("scheduled", "deterministic schedule coupling",
                               "nonadaptive-coupling", tv, 1e-10,
                               tv <= 1e-10));
  }
  {
    EnvSpec spec;
    spec.kind = EnvKind::scheduled;
    spec.coin = true;
    spec.amp = 0.5;
    spec.amp2 = 2.0;
    spec.decay = 0.5;
    spec.wexp = 1.0;
    const double tv = nonadaptive_equivalence(fam, spec, 3);
    out.checks.push_back(check("coin", "two-branch schedule coupling",
                               "nonadaptive-coupling", tv, 1e-10,
                               tv <= 1e-10));
  }
  {
    EnvSpec spec;
    spec.kind = EnvKind::once_reinforced;
    spec.delta = 100.0;
    Ball b = ball(fam, 1);
    const bool ok = frozen_process_check(fam, spec, 5, 3, b);
    out.checks.push_back(check("frozen", "frozen reinforcement on the triangle",
                               "frozen-environment", ok ? 0.0 : 1.0, 0.5, ok));
  }
  return out;
}

// --- criterion 10: classification pipeline -----------------------------------

inline CriterionResult criterion_classification(std::uint64_t seed) {
  CriterionResult out{10, "classification pipeline", {}};
  auto fam = line_family();
  {
    EnvSpec spec;
    spec.kind = EnvKind::scheduled;
    spec.amp = 1.0;
    spec.decay = 0.5;
    spec.wexp = 2.0;
    auto rep = classify(fam, spec, 100000, 1000, {4, 8, 12, 16, 20}, seed);
    const bool ok =
        rep.verdict == "recurrent-by-theorem" && rep.return_frequency >= 0.99;
    out.checks.push_back(check("recurrent",
                               "summable schedule on the line returns",
                               "recurrence-criterion", rep.return_frequency,
                               0.99, ok));
  }
  {
    EnvSpec spec;
    spec.kind = EnvKind::scheduled;
    spec.amp = 0.5;
    spec.decay = 0.5;
    spec.wexp = 2.0;
    spec.initial = geometric_line_weights(2.0);
    auto rep = classify(fam, spec, 10000, 2000, {5, 10, 20, 30, 40}, seed + 1);
    const bool ok = rep.verdict == "transient-by-theorem";
    out.checks.push_back(check("transient",
                               "geometric drift with a summable schedule",
                               "recurrence-criterion",
                               1.0 - rep.return_frequency, 1.0, ok));
  }
  {
    EnvSpec spec;
    spec.kind = EnvKind::once_reinforced;
    spec.delta = 2.0;
    auto rep = classify(fam, spec, 2000, 50, {4, 8, 12}, seed + 2);
    const bool ok = rep.verdict == "hypothesis-fails";
    out.checks.push_back(check("reinforced",
                               "reinforcement keeps changing the weights",
                               "recurrence-criterion",
                               ok ? 0.0 : 1.0, 0.5, ok));
  }
  return out;
}

// --- criterion 11: determinism -----------------------------------------------

inline Report build_simulation_report(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg;
  rep.config_hash = config_hash(cfg);
  rep.seed = cfg.seed;
  const GraphFamily fam = make_family(cfg);
  const EnvSpec spec = make_env(cfg);
  rep.profile = resistance_profile(fam, spec.initial, cfg.radii);
  SimOptions opts;
  opts.max_depth = cfg.max_depth;
  opts.stop_on_truncation = cfg.truncation_policy == "stop";
  opts.stop_at_first_return = true;
  rep.classification =
      classify(fam, spec, cfg.horizon, cfg.trials, cfg.radii, cfg.seed, opts);
  return rep;
}

inline CriterionResult criterion_determinism(std::uint64_t seed) {
  CriterionResult out{11, "byte-identical replay", {}};
  ExperimentConfig cfg;
  cfg.env_kind = "scheduled";
  cfg.amp = 0.5;
  cfg.decay = 0.5;
  cfg.wexp = 2.0;
  cfg.radii = {4, 8, 12};
  cfg.horizon = 3000;
  cfg.trials = 64;
  cfg.seed = seed;
  const std::string a = emit_report_json(build_simulation_report(cfg));
  const std::string b = emit_report_json(build_simulation_report(cfg));
  out.checks.push_back(check("replay",
                             "re-running the same config reproduces the bytes",
                             "determinism-contract", a == b ? 0.0 : 1.0, 0.5,
                             a == b));
  return out;
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance_suite(
    std::uint64_t seed = 2026, const std::vector<int>& radii = {2, 4, 6, 8}) {
  std::vector<CriterionResult> out;
  out.push_back(detail::criterion_electrical_exactness());
  out.push_back(detail::criterion_line_return(seed));
  out.push_back(detail::criterion_geometric_anchor(seed));
  out.push_back(detail::criterion_voltage_difference(seed));
  out.push_back(detail::criterion_variational(seed));
  out.push_back(detail::criterion_perturbation(seed, radii));
  out.push_back(detail::criterion_ratio_bound(seed));
  out.push_back(detail::criterion_martingale());
  out.push_back(detail::criterion_law_equivalence());
  out.push_back(detail::criterion_classification(seed));
  out.push_back(detail::criterion_determinism(seed));
  return out;
}

inline std::vector<CheckResult> run_full_verification(
    const ExperimentConfig& cfg) {
  std::vector<CheckResult> out;
  for (const auto& crit : run_acceptance_suite(cfg.seed, cfg.radii))
    for (const auto& c : crit.checks) {
      CheckResult row = c;
      row.id = std::to_string(crit.index) + "." + row.id;
      out.push_back(std::move(row));
    }
  return out;
}

}  // namespace rwce
