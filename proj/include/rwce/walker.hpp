#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "rwce/electrical.hpp"
#include "rwce/environment.hpp"
#include "rwce/errors.hpp"
#include "rwce/graph.hpp"
#include "rwce/network.hpp"
#include "rwce/rng.hpp"

namespace rwce {

// --- transition law ----------------------------------------------------------

// P(x, y; C) = C(x,y) / sum_z C(x,z) over the ball's neighbors of x.
inline std::vector<std::pair<int, double>> transition_distribution(
    const Ball& b, const WeightConfig& cfg, int x) {
  cfg.validate(b);
  std::vector<std::pair<int, double>> out;
  double total = 0.0;
  for (int e = 0; e < b.num_edges(); ++e) {
    const auto [u, v] = b.edges[e];
    if (u != x && v != x) continue;
    out.push_back({u == x ? v : u, cfg.conductance[e]});
    total += cfg.conductance[e];
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw domain_error("transition_distribution: improper total conductance");
  for (auto& [y, p] : out) p /= total;
  return out;
}

// Label-level version evaluated lazily from the environment state; this is
// what long simulations use, so no ball is ever materialized.
inline std::vector<std::pair<Vertex, double>> transition_distribution(
    const GraphFamily& family, const EnvSpec& spec, const EnvState& state,
    Vertex x) {
  const auto nb = family.neighbors(x);
  const int dx = family.depth(x);
  std::vector<double> logc(nb.size());
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nb.size(); ++i) {
    logc[i] = env_log_conductance(spec, state, x, nb[i],
                                  std::min(dx, family.depth(nb[i])));
    max_log = std::max(max_log, logc[i]);
  }
  if (!std::isfinite(max_log))
    throw domain_error("transition_distribution: improper conductances");
  std::vector<std::pair<Vertex, double>> out;
  double total = 0.0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const double w = std::exp(logc[i] - max_log);
    out.push_back({nb[i], w});
    total += w;
  }
  for (auto& [y, p] : out) p /= total;
  return out;
}

namespace detail {

// Sample one move; optionally reports the probability of the chosen move.
inline Vertex sample_move(const GraphFamily& family, const EnvSpec& spec,
                          const EnvState& state, Vertex x, RngStream& rng,
                          double* chosen_prob = nullptr) {
  const auto dist = transition_distribution(family, spec, state, x);
  const double u = rng.uniform();
  double acc = 0.0;
  for (const auto& [y, p] : dist) {
    acc += p;
    if (u < acc) {
      if (chosen_prob) *chosen_prob = p;
      return y;
    }
  }
  if (chosen_prob) *chosen_prob = dist.back().second;
  return dist.back().first;  // guard against rounding at u ~ 1
}

}  // namespace detail

// --- simulation --------------------------------------------------------------

struct SimOptions {
  bool has_start = false;
  Vertex start = 0;               // used only when has_start
  int max_depth = 1 << 20;        // truncation cap on distance from origin
  bool stop_on_truncation = false;  // false: throw; true: halt the trajectory
  bool stop_at_first_return = false;
};

struct Trajectory {
  std::vector<Vertex> positions;  // X_0 .. X_T
  std::uint64_t seed = 0;
  long trial = 0;
  bool truncated = false;
  long first_return = -1;  // first t >= 1 with X_t at the origin
  int max_depth_seen = 0;
  std::map<Vertex, long> visits;
};

inline std::vector<Trajectory> simulate(const GraphFamily& family,
                                        const EnvSpec& spec, long horizon,
                                        long trials, std::uint64_t seed,
                                        SimOptions opts = {}) {
  if (horizon < 1 || trials < 1)
    throw config_error("simulate: horizon and trials must be >= 1");
  std::vector<Trajectory> out;
  for (long trial = 0; trial < trials; ++trial) {
    RngStream wrng = walk_stream(seed, trial);
    RngStream erng = env_stream(seed, trial);
    Trajectory traj;
    traj.seed = seed;
    traj.trial = trial;
    EnvState state;
    Vertex x = opts.has_start ? opts.start : family.origin;
    traj.positions.push_back(x);
    traj.visits[x] += 1;
    traj.max_depth_seen = family.depth(x);
    for (long t = 0; t < horizon; ++t) {
      if (family.depth(x) >= opts.max_depth) {
        if (!opts.stop_on_truncation)
          throw truncation_error("simulate: walk exceeded the maximum depth");
        traj.truncated = true;
        break;
      }
      const Vertex y = detail::sample_move(family, spec, state, x, wrng);
      evolve(spec, state, x, y, erng);
      x = y;
      traj.positions.push_back(x);
      traj.visits[x] += 1;
      traj.max_depth_seen = std::max(traj.max_depth_seen, family.depth(x));
      if (x == family.origin && traj.first_return < 0) {
        traj.first_return = t + 1;
        if (opts.stop_at_first_return) break;
      }
    }
    out.push_back(std::move(traj));
  }
  return out;
}

// First index t >= 0 with X_t in the target set; -1 when never hit.
inline long hitting_time(const Trajectory& traj,
                         const std::vector<Vertex>& target) {
  for (std::size_t t = 0; t < traj.positions.size(); ++t)
    if (std::find(target.begin(), target.end(), traj.positions[t]) !=
        target.end())
      return static_cast<long>(t);
  return -1;
}

// --- stopped voltage processes ----------------------------------------------

struct MartingaleTrace {
  std::vector<double> a, b;  // stopped process values per t = 0..T
  long tau = -1;             // exit time; -1 when not stopped within horizon
  std::vector<double> alpha_prod, beta_prod;  // products over s < t
};

// A_t = (1 - v_{n,t}(X_t)) / prod_{s<t} alpha*; B_t analogously with beta*;
// both stopped at the first exit from the punctured interior of radius n.
// Positions are ball ids into trace.ball.
inline MartingaleTrace martingale_trace(const EnvTrace& trace,
                                        const std::vector<int>& positions,
                                        const ComponentSplit::Component& comp,
                                        int n, int d_max) {
  if (positions.size() != trace.configs.size())
    throw precondition_error("martingale_trace: positions/configs mismatch");
  RatioCertificate cert = ratio_certificate(trace, comp, {n}, d_max);
  const StarNetwork& star = cert.stars[0];
  if (positions[0] != 0 && star.star_of[positions[0]] < 0)
    throw precondition_error("martingale_trace: start outside the component");
  MartingaleTrace out;
  out.alpha_prod = cert.alpha_prod[0];
  out.beta_prod = cert.beta_prod[0];
  const Ball& ball = trace.ball;
  long tau = -1;
  for (std::size_t t = 0; t < positions.size(); ++t) {
    const int pos = positions[t];
    if (tau < 0 && (pos == 0 || ball.distance[pos] >= n))
      tau = static_cast<long>(t);
    const std::size_t te = (tau >= 0) ? static_cast<std::size_t>(tau) : t;
    const int p = positions[te];
    double v = 0.0;  // convention: voltage 0 beyond radius n
    if (p == 0) {
      v = 1.0;
    } else if (ball.distance[p] <= n) {
      const int sid = star.star_of[p];
      if (sid < 0)
        throw precondition_error("martingale_trace: walk left the component");
      v = cert.voltages[0][te][sid];
    }
    out.a.push_back((1.0 - v) / out.alpha_prod[te]);
    out.b.push_back((1.0 - v) / out.beta_prod[te]);
  }
  out.tau = tau;
  return out;
}

struct StepCheckReport {
  double a_before = 0, a_expected = 0;
  double b_before = 0, b_expected = 0;
  bool super_ok = false, sub_ok = false;
};

// Exact one-step conditional expectation of the stopped processes at an
// interior state: sums over neighbor moves and enumerable environment
// branches, then asserts the super/sub inequalities.
inline StepCheckReport one_step_martingale_check(
    const GraphFamily& family, const EnvSpec& spec, const EnvState& state,
    const Ball& ball, const ComponentSplit::Component& comp, int n,
    int x_ball_id) {
  if (ball.radius < n)
    throw precondition_error("one_step_martingale_check: ball radius < n");
  if (x_ball_id == 0 || ball.distance[x_ball_id] >= n)
    throw precondition_error("one_step_martingale_check: state not interior");
  StarNetwork star = star_network(ball, comp, n);
  if (star.star_of[x_ball_id] < 0)
    throw precondition_error("one_step_martingale_check: outside component");

  const WeightConfig cfg_t = materialize(spec, state, ball);
  Network net = star.net;
  net.conductance = star_conductance(star, cfg_t);
  const VoltageField vt = solve_voltage(net, 0, star.sinks);

  // transition law at x (all of x's edges lie inside the star)
  const int xs = star.star_of[x_ball_id];
  std::vector<std::pair<int, double>> moves;  // (star id, prob)
  double total = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto [u, v] = net.edges[e];
    if (u != xs && v != xs) continue;
    moves.push_back({u == xs ? v : u, net.conductance[e]});
    total += net.conductance[e];
  }
  for (auto& [y, p] : moves) p /= total;

  StepCheckReport rep;
  rep.a_before = rep.b_before = 1.0 - vt.values[xs];
  for (const auto& [ys, p_move] : moves) {
    const Vertex xu = ball.vertices[x_ball_id];
    const Vertex yv = ball.vertices[star.ball_ids[ys]];
    for (const EnvBranch& br : env_branches(spec, state, xu, yv)) {
      const WeightConfig cfg_next = materialize(spec, br.state, ball);
      net.conductance = star_conductance(star, cfg_next);
      const VoltageField vn = solve_voltage(net, 0, star.sinks);
      double alpha = 1.0, beta = 1.0;
      for (int z = 1; z < net.num_vertices; ++z) {
        const double ratio = (1.0 - vn.values[z]) / (1.0 - vt.values[z]);
        alpha = std::max(alpha, ratio);
        beta = std::min(beta, ratio);
      }
      rep.a_expected += p_move * br.probability * (1.0 - vn.values[ys]) / alpha;
      rep.b_expected += p_move * br.probability * (1.0 - vn.values[ys]) / beta;
    }
  }
  rep.super_ok = rep.a_expected <= rep.a_before + 1e-10;
  rep.sub_ok = rep.b_expected >= rep.b_before - 1e-10;
  return rep;
}

// --- exact finite-horizon laws ----------------------------------------------

struct ExactLawAtom {
  std::vector<Vertex> path;        // X_0 .. X_t
  std::vector<EnvState> history;   // states s_0 .. s_t
  double probability = 1.0;
};

struct ExactLaw {
  long horizon = 0;
  std::vector<ExactLawAtom> atoms;

  std::map<Vertex, double> marginal(long t) const {
    std::map<Vertex, double> out;
    for (const auto& atom : atoms) out[atom.path[t]] += atom.probability;
    return out;
  }
  double total_probability() const {
    double s = 0.0;
    for (const auto& atom : atoms) s += atom.probability;
    return s;
  }
};

inline ExactLaw exact_law(const GraphFamily& family, const EnvSpec& spec,
                          long horizon, Vertex start,
                          std::size_t atom_cap = 1 << 18) {
  ExactLaw law;
  law.horizon = horizon;
  law.atoms.push_back({{start}, {EnvState{}}, 1.0});
  for (long t = 0; t < horizon; ++t) {
    std::vector<ExactLawAtom> next;
    for (const ExactLawAtom& atom : law.atoms) {
      const Vertex x = atom.path.back();
      const auto dist =
          transition_distribution(family, spec, atom.history.back(), x);
      for (const auto& [y, p] : dist) {
        for (const EnvBranch& br :
             env_branches(spec, atom.history.back(), x, y)) {
          ExactLawAtom child = atom;
          child.path.push_back(y);
          child.history.push_back(br.state);
          child.probability *= p * br.probability;
          next.push_back(std::move(child));
          if (next.size() > atom_cap)
            throw cap_exceeded_error("exact_law: atom cap exceeded");
        }
      }
    }
    law.atoms = std::move(next);
  }
  return law;
}

// --- law equivalence for non-adaptive environments ---------------------------

// Compares the interleaved construction (environment evolves step-by-step)
// with the hierarchical one (the whole environment sequence is fixed first,
// then the walk runs against it). Returns the exact total-variation distance
// between the two finite-horizon path laws.
inline double nonadaptive_equivalence(const GraphFamily& family,
                                      const EnvSpec& spec, long horizon) {
  if (spec.adaptive())
    throw precondition_error("nonadaptive_equivalence: adaptive environment");
  const ExactLaw interleaved = exact_law(family, spec, horizon, family.origin);
  std::map<std::vector<Vertex>, double> law_a;
  for (const auto& atom : interleaved.atoms)
    law_a[atom.path] += atom.probability;

  // enumerate full-environment realizations
  std::vector<std::pair<double, int>> realizations;  // (prob, branch)
  if (spec.kind == EnvKind::scheduled && spec.coin)
    realizations = {{0.5, 0}, {0.5, 1}};
  else
    realizations = {{1.0, -1}};

  std::map<std::vector<Vertex>, double> law_b;
  for (const auto& [p_env, branch] : realizations) {
    // depth-first path enumeration against the fixed config sequence
    struct Node {
      std::vector<Vertex> path;
      double prob;
    };
    std::vector<Node> stack{{{family.origin}, p_env}};
    while (!stack.empty()) {
      Node node = std::move(stack.back());
      stack.pop_back();
      const long t = static_cast<long>(node.path.size()) - 1;
      if (t == horizon) {
        law_b[node.path] += node.prob;
        continue;
      }
      EnvState fixed;
      fixed.t = t;
      fixed.branch = (t == 0) ? -1 : branch;  // coin takes effect after step 1
      const auto dist =
          transition_distribution(family, spec, fixed, node.path.back());
      for (const auto& [y, p] : dist) {
        Node child = node;
        child.path.push_back(y);
        child.prob *= p;
        stack.push_back(std::move(child));
      }
    }
  }

  double tv = 0.0;
  for (const auto& [path, p] : law_a) {
    auto it = law_b.find(path);
    tv += std::abs(p - (it == law_b.end() ? 0.0 : it->second));
  }
  for (const auto& [path, p] : law_b)
    if (!law_a.count(path)) tv += p;
  return tv / 2.0;
}

// --- frozen process ----------------------------------------------------------

// Verifies, at every history atom of the exact law, that the freeze machinery
// reproduces the defining formula: the frozen configuration at time t equals
// the original C at time min(t, gamma_m - 1), and the one-step transition law
// of the frozen process matches P(x, .; frozen C_t).
inline bool frozen_process_check(const GraphFamily& family, const EnvSpec& spec,
                                 int m, long horizon, const Ball& ball) {
  if (m < 1) throw config_error("frozen_process_check: m >= 1 required");
  if (spec.kind == EnvKind::scheduled && spec.coin)
    throw oracle_unsupported_error(
        "frozen_process_check: non-deterministic evolution replay");
  const ExactLaw law = exact_law(family, spec, horizon, family.origin);
  RngStream dummy(0, 0);
  for (const ExactLawAtom& atom : law.atoms) {
    const long T = static_cast<long>(atom.path.size()) - 1;
    // configs along this history
    EnvTrace trace;
    trace.ball = ball;
    for (long t = 0; t <= T; ++t)
      trace.configs.push_back(materialize(spec, atom.history[t], ball));
    for (long t = 0; t < T; ++t) {
      trace.traversed.push_back(-1);
      trace.step_change.push_back(
          resistance_change(ball, trace.configs[t], trace.configs[t + 1]));
    }
    SlownessReport slow = slowness_report(trace, family, 1);
    // per-history freeze time from the Gamma triggers
    long gamma = -1;
    for (long t = 1; t <= T; ++t) {
      if (std::max(slow.gamma_partial[t - 1], slow.gamma_star[t]) >=
          double(m)) {
        gamma = t;
        break;
      }
    }
    EnvSpec frozen = spec;
    if (gamma >= 1) frozen.freeze_after = gamma - 1;
    // replay this history under the frozen spec and compare against the
    // defining formula at every time
    EnvState fstate;
    for (long t = 0; t <= T; ++t) {
      const long src = (gamma >= 1) ? std::min(t, gamma - 1) : t;
      const WeightConfig expect = trace.configs[src];
      const WeightConfig got = materialize(frozen, fstate, ball);
      for (int e = 0; e < ball.num_edges(); ++e)
        if (std::abs(got.conductance[e] - expect.conductance[e]) > 1e-12)
          return false;
      // one-step law of the frozen process vs P(x, .; frozen C_t)
      const Vertex x = atom.path[t];
      const auto via_state =
          transition_distribution(family, frozen, fstate, x);
      const int xb = ball.index_of.count(x) ? ball.index_of.at(x) : -1;
      if (xb >= 0 && ball.distance[xb] < ball.radius) {
        const auto via_config = transition_distribution(ball, expect, xb);
        if (via_state.size() != via_config.size()) return false;
        for (const auto& [yb, p] : via_config) {
          double p_state = -1.0;
          for (const auto& [y, q] : via_state)
            if (y == ball.vertices[yb]) p_state = q;
          if (std::abs(p_state - p) > 1e-12) return false;
        }
      }
      if (t < T) evolve(frozen, fstate, x, atom.path[t + 1], dummy);
    }
  }
  return true;
}

// --- classification ----------------------------------------------------------

struct ClassificationReport {
  std::string verdict;           // recurrent-by-theorem | transient-by-theorem
                                 // | hypothesis-fails | inconclusive
  std::string slowness_verdict;  // hypothesis-plausible | not-plausible
  std::string profile_verdict;   // divergent | convergent
  ResistanceProfile profile;
  double return_frequency = 0.0;   // fraction of trials returning to origin
  double mean_first_return = 0.0;  // over returning trials
  double min_transition_prob = 1.0;  // ellipticity certificate
  long trials = 0;
  long horizon = 0;
  int max_depth_seen = 0;
  long truncated_trials = 0;
  int certificate_radius = 0;
  long certificate_steps = 0;
  std::map<Vertex, long> visits_near_origin;  // depth <= 3
};

namespace detail {

struct TrialResult {
  long first_return = -1;
  int max_depth = 0;
  bool truncated = false;
  double min_prob = 1.0;
  std::map<Vertex, long> near_visits;
};

inline TrialResult run_classification_trial(const GraphFamily& family,
                                            const EnvSpec& spec, long horizon,
                                            std::uint64_t seed, long trial,
                                            const SimOptions& opts) {
  RngStream wrng = walk_stream(seed, trial);
  RngStream erng = env_stream(seed, trial);
  TrialResult res;
  EnvState state;
  Vertex x = family.origin;
  res.near_visits[x] += 1;
  for (long t = 0; t < horizon; ++t) {
    if (family.depth(x) >= opts.max_depth) {
      if (!opts.stop_on_truncation)
        throw truncation_error("classify: walk exceeded the maximum depth");
      res.truncated = true;
      break;
    }
    double p = 1.0;
    const Vertex y = sample_move(family, spec, state, x, wrng, &p);
    evolve(spec, state, x, y, erng);
    x = y;
    res.min_prob = std::min(res.min_prob, p);
    const int d = family.depth(x);
    res.max_depth = std::max(res.max_depth, d);
    if (d <= 3) res.near_visits[x] += 1;
    if (x == family.origin) {
      res.first_return = t + 1;
      break;  // first-return statistics only need the walk up to here
    }
  }
  return res;
}

inline int thread_count() {
  const char* env = std::getenv("RWCE_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

}  // namespace detail

inline ClassificationReport classify(const GraphFamily& family,
                                     const EnvSpec& spec, long horizon,
                                     long trials,
                                     const std::vector<int>& radii,
                                     std::uint64_t seed,
                                     SimOptions opts = SimOptions{
                                         false, 0, 1 << 20, true, true}) {
  if (horizon < 1 || trials < 1 || radii.empty())
    throw config_error("classify: horizon, trials and radii required");
  ClassificationReport rep;
  rep.trials = trials;
  rep.horizon = horizon;

  // initial-configuration resistance profile
  rep.profile = resistance_profile(family, spec.initial, radii);
  rep.profile_verdict = rep.profile.verdict;

  // slowness certificate: several independent environment trajectories on a
  // moderate working ball must unanimously plateau. The ball is sized by a
  // vertex budget so that on thin graphs it comfortably covers the walk's
  // typical range over the certificate horizon (a too-small ball would hide
  // fresh reinforcement happening at the frontier).
  int cert_radius = 2;
  Ball cball = ball(family, cert_radius);
  while (cert_radius < 40) {
    Ball next = ball(family, cert_radius + 1);
    if (next.num_vertices() > 256) break;
    cball = std::move(next);
    ++cert_radius;
  }
  rep.certificate_radius = cert_radius;
  const long cert_T = std::min<long>(horizon, 200);
  rep.certificate_steps = cert_T;
  bool plausible = true;
  const long cert_runs = spec.adaptive() ? 4 : 1;
  for (long run = 0; run < cert_runs; ++run) {
    RngStream wrng = walk_stream(seed ^ 0x9e3779b97f4a7c15ULL, run);
    RngStream erng = env_stream(seed ^ 0x9e3779b97f4a7c15ULL, run);
    EnvTrace trace;
    trace.ball = cball;
    EnvState state;
    Vertex x = family.origin;
    trace.configs.push_back(materialize(spec, state, cball));
    for (long t = 0; t < cert_T; ++t) {
      const Vertex y = detail::sample_move(family, spec, state, x, wrng);
      evolve(spec, state, x, y, erng);
      x = y;
      trace.traversed.push_back(-1);
      trace.configs.push_back(materialize(spec, state, cball));
      trace.step_change.push_back(resistance_change(
          cball, trace.configs[trace.configs.size() - 2],
          trace.configs.back()));
    }
    SlownessReport slow = slowness_report(trace, family, 1);
    if (slow.verdict != "hypothesis-plausible") plausible = false;
  }
  rep.slowness_verdict = plausible ? "hypothesis-plausible" : "not-plausible";
  if (!plausible)
    rep.verdict = "hypothesis-fails";
  else if (rep.profile_verdict == "divergent")
    rep.verdict = "recurrent-by-theorem";
  else if (rep.profile_verdict == "convergent")
    rep.verdict = "transient-by-theorem";
  else
    rep.verdict = "inconclusive";

  // Monte Carlo return statistics; trials are independent streams keyed by
  // trial index, so the merge is deterministic for any thread count
  std::vector<detail::TrialResult> results(trials);
  const int threads = detail::thread_count();
  if (threads <= 1) {
    for (long trial = 0; trial < trials; ++trial)
      results[trial] = detail::run_classification_trial(family, spec, horizon,
                                                        seed, trial, opts);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k)
      pool.emplace_back([&, k]() {
        for (long trial = k; trial < trials; trial += threads)
          results[trial] = detail::run_classification_trial(
              family, spec, horizon, seed, trial, opts);
      });
    for (auto& th : pool) th.join();
  }
  long returned = 0;
  double sum_first = 0.0;
  for (const auto& res : results) {
    if (res.first_return >= 1) {
      ++returned;
      sum_first += static_cast<double>(res.first_return);
    }
    rep.max_depth_seen = std::max(rep.max_depth_seen, res.max_depth);
    rep.min_transition_prob = std::min(rep.min_transition_prob, res.min_prob);
    if (res.truncated) ++rep.truncated_trials;
    for (const auto& [v, c] : res.near_visits) rep.visits_near_origin[v] += c;
  }
  rep.return_frequency = static_cast<double>(returned) / trials;
  rep.mean_first_return = returned > 0 ? sum_first / returned : 0.0;
  return rep;
}

}  // namespace rwce
