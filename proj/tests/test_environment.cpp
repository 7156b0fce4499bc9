#include <catch_amalgamated.hpp>

#include <cmath>

#include "rwce/environment.hpp"

using namespace rwce;

namespace {

// single undirected edge {0,1} rooted at 0
GraphFamily edge_graph() { return explicit_family({{0, 1}}, 0, "edge"); }

EnvSpec scheduled_spec(double amp, double decay, double wexp) {
  EnvSpec spec;
  spec.kind = EnvKind::scheduled;
  spec.amp = amp;
  spec.decay = decay;
  spec.wexp = wexp;
  return spec;
}

}  // namespace

TEST_CASE("once-reinforced rule sets the traversed edge to delta") {
  auto fam = line_family();
  Ball b = ball(fam, 3);
  EnvSpec spec;
  spec.kind = EnvKind::once_reinforced;
  spec.delta = 2.0;
  RngStream rng(1, 1);
  const int e01 = b.edge_index(0, b.index_of.at(1));
  EnvTrace trace = make_trace(spec, b, {e01, e01}, rng);
  // first traversal reinforces, the second leaves it alone
  for (int e = 0; e < b.num_edges(); ++e) {
    const double expect = (e == e01) ? 2.0 : 1.0;
    REQUIRE(trace.configs[1].conductance[e] == expect);
    REQUIRE(trace.configs[2].conductance[e] == expect);
  }
}

TEST_CASE("linearly-reinforced rule adds the increment per traversal") {
  auto fam = line_family();
  Ball b = ball(fam, 3);
  EnvSpec spec;
  spec.kind = EnvKind::linear_reinforced;
  spec.increment = 1.0;
  RngStream rng(1, 1);
  const int e01 = b.edge_index(0, b.index_of.at(1));
  EnvTrace trace = make_trace(spec, b, {e01, e01}, rng);
  REQUIRE(trace.configs[1].conductance[e01] == 2.0);
  REQUIRE(trace.configs[2].conductance[e01] == 3.0);
}

TEST_CASE("scheduled rule ignores the traversed edge") {
  auto fam = line_family();
  Ball b = ball(fam, 3);
  EnvSpec spec = scheduled_spec(1.0, 0.5, 1.0);
  RngStream r1(1, 1), r2(1, 1);
  EnvTrace a = make_trace(spec, b, {0, 0, 0}, r1);
  EnvTrace c = make_trace(spec, b, {2, 1, 2}, r2);
  for (int t = 0; t <= 3; ++t)
    REQUIRE(a.configs[t].conductance == c.configs[t].conductance);
}

TEST_CASE("exhausted schedule is an error") {
  auto fam = edge_graph();
  Ball b = ball(fam, 1);
  EnvSpec spec = scheduled_spec(1.0, 0.5, 1.0);
  spec.schedule_horizon = 2;
  RngStream rng(1, 1);
  REQUIRE_THROWS_AS(make_trace(spec, b, {0, 0, 0}, rng), schedule_error);
}

TEST_CASE("non-positive reinforcement is rejected") {
  auto fam = edge_graph();
  Ball b = ball(fam, 1);
  RngStream rng(1, 1);
  EnvSpec orrw;
  orrw.kind = EnvKind::once_reinforced;
  orrw.delta = -1.0;
  REQUIRE_THROWS_AS(make_trace(orrw, b, {0}, rng), domain_error);
  EnvSpec lrrw;
  lrrw.kind = EnvKind::linear_reinforced;
  lrrw.increment = -1.0;  // drives the unit weight to zero
  REQUIRE_THROWS_AS(make_trace(lrrw, b, {0}, rng), domain_error);
}

TEST_CASE("coin schedule branches once and shares C_0") {
  auto fam = edge_graph();
  Ball b = ball(fam, 1);
  EnvSpec spec = scheduled_spec(1.0, 0.5, 1.0);
  spec.coin = true;
  spec.amp2 = 3.0;
  EnvState fresh;
  auto branches = env_branches(spec, fresh, 0, 1);
  REQUIRE(branches.size() == 2);
  REQUIRE(branches[0].probability == 0.5);
  REQUIRE(branches[1].probability == 0.5);
  // both branches agree at time 0 (coin not yet drawn) but split afterwards
  REQUIRE(materialize(spec, fresh, b).conductance[0] == 1.0);
  const double c_heads =
      materialize(spec, branches[0].state, b).conductance[0];
  const double c_tails =
      materialize(spec, branches[1].state, b).conductance[0];
  REQUIRE(c_heads == 1.0 / (1.0 + 1.0 * 0.5));
  REQUIRE(c_tails == 1.0 / (1.0 + 3.0 * 0.5));
  // once drawn, evolution is deterministic again
  auto later = env_branches(spec, branches[0].state, 0, 1);
  REQUIRE(later.size() == 1);
  REQUIRE(later[0].state.branch == 0);
}

TEST_CASE("static slowness report") {
  auto fam = line_family();
  Ball b = ball(fam, 4);
  EnvSpec spec;  // static
  RngStream rng(7, 1);
  EnvTrace trace = make_trace(spec, b, std::vector<int>(24, 0), rng);
  SlownessReport rep = slowness_report(trace, fam, 1);
  REQUIRE(rep.gamma == 0.0);
  REQUIRE(rep.verdict == "hypothesis-plausible");
  for (double g : rep.gamma_partial) REQUIRE(g == 0.0);
}

TEST_CASE("single-edge scheduled slowness sums the geometric series") {
  // R_t = 1 + 2^{-t}, so each step contributes 2^{-t-1} and Gamma_T -> 1
  auto fam = edge_graph();
  Ball b = ball(fam, 1);
  EnvSpec spec = scheduled_spec(1.0, 0.5, 1.0);
  RngStream rng(7, 1);
  const int T = 70;
  EnvTrace trace = make_trace(spec, b, std::vector<int>(T, 0), rng);
  SlownessReport rep = slowness_report(trace, fam, 1);
  for (int t = 1; t <= 30; ++t)
    REQUIRE_THAT(rep.gamma_partial[t - 1],
                 Catch::Matchers::WithinAbs(1.0 - std::pow(2.0, -t), 1e-12));
  REQUIRE(rep.verdict == "hypothesis-plausible");
}

TEST_CASE("once-reinforced slowness grows per fresh edge") {
  auto fam = line_family();
  Ball b = ball(fam, 5);
  EnvSpec spec;
  spec.kind = EnvKind::once_reinforced;
  spec.delta = 2.0;
  RngStream rng(7, 1);
  // walk outward: each step reinforces a brand-new edge
  std::vector<int> traversed;
  for (int k = 0; k < 4; ++k)
    traversed.push_back(b.edge_index(b.index_of.at(k), b.index_of.at(k + 1)));
  EnvTrace trace = make_trace(spec, b, traversed, rng);
  SlownessReport rep = slowness_report(trace, fam, 1);
  const double per_edge = std::abs(1.0 / spec.delta - 1.0);
  for (int t = 1; t <= 4; ++t)
    REQUIRE_THAT(rep.gamma_partial[t - 1],
                 Catch::Matchers::WithinAbs(per_edge * t, 1e-12));
  REQUIRE(rep.verdict == "not-plausible");
}

TEST_CASE("slowness report invariants") {
  auto fam = line_family();
  Ball b = ball(fam, 4);
  EnvSpec spec = scheduled_spec(0.7, 0.6, 1.0);
  RngStream rng(11, 1);
  EnvTrace trace = make_trace(spec, b, std::vector<int>(12, 0), rng);
  SlownessReport rep = slowness_report(trace, fam, 1);
  double prev = 0.0;
  for (double g : rep.gamma_partial) {
    REQUIRE(g >= prev);  // Gamma_T non-decreasing
    prev = g;
  }
  for (double pi : rep.pi_dmax) {
    REQUIRE(pi > 0.0);
    REQUIRE(pi <= 1.0);
  }
  for (double g : rep.gamma_star) REQUIRE(g <= rep.gamma_star_sup);
  // implied floor never exceeds the weights actually observed
  for (int e = 0; e < b.num_edges(); ++e)
    for (const auto& cfg : trace.configs)
      REQUIRE(rep.implied_lower_bound[e] <= cfg.conductance[e] + 1e-12);
}

TEST_CASE("monotone environments telescope their resistance changes") {
  auto fam = line_family();
  Ball b = ball(fam, 4);
  EnvSpec spec;
  spec.kind = EnvKind::linear_reinforced;
  spec.increment = 0.5;
  RngStream rng(3, 1);
  std::vector<int> traversed = {0, 3, 0, 1, 1, 3, 2, 0};
  EnvTrace trace = make_trace(spec, b, traversed, rng);
  double stepwise = 0.0;
  for (double d : trace.step_change) stepwise += d;
  double endpoints = 0.0;
  for (int e = 0; e < b.num_edges(); ++e)
    endpoints += std::abs(trace.configs.front().resistance(e) -
                          trace.configs.back().resistance(e));
  REQUIRE_THAT(stepwise, Catch::Matchers::WithinAbs(endpoints, 1e-12));
}

TEST_CASE("lower bound check") {
  auto fam = edge_graph();
  Ball b = ball(fam, 1);
  RngStream rng(5, 1);

  SECTION("static equality") {
    EnvSpec spec;
    EnvTrace trace = make_trace(spec, b, {0, 0, 0}, rng);
    REQUIRE(lower_bound_check(trace));
  }
  SECTION("decaying schedule") {
    EnvSpec spec = scheduled_spec(1.0, 0.5, 1.0);
    EnvTrace trace = make_trace(spec, b, std::vector<int>(20, 0), rng);
    REQUIRE(lower_bound_check(trace));
    // with Gamma ~ 1, every weight stays above 1/(Gamma + 1/C_0) and in fact
    // above 1/2 for this schedule
    for (const auto& cfg : trace.configs)
      REQUIRE(cfg.conductance[0] >= 0.5 - 1e-12);
  }
  SECTION("100 random summable schedules") {
    auto line = line_family();
    Ball lb = ball(line, 3);
    RngStream pick(17, 1);
    for (int trial = 0; trial < 100; ++trial) {
      EnvSpec spec = scheduled_spec(0.1 + 2.0 * pick.uniform(),
                                    0.2 + 0.6 * pick.uniform(),
                                    0.5 + 2.0 * pick.uniform());
      RngStream r(23, trial);
      EnvTrace trace = make_trace(spec, lb, std::vector<int>(15, 0), r);
      REQUIRE(lower_bound_check(trace));
    }
  }
}

TEST_CASE("non-adaptive traces do not depend on the walk") {
  auto fam = line_family();
  Ball b = ball(fam, 4);
  EnvSpec spec = scheduled_spec(0.8, 0.5, 1.0);
  RngStream r1(9, 1), r2(9, 1);
  EnvTrace a = make_trace(spec, b, {0, 1, 2, 3, 0}, r1);
  EnvTrace c = make_trace(spec, b, {5, 5, 5, 5, 5}, r2);
  REQUIRE(a.configs.size() == c.configs.size());
  for (std::size_t t = 0; t < a.configs.size(); ++t)
    REQUIRE(a.configs[t].conductance == c.configs[t].conductance);
}

// --- voltage-ratio certificates ---------------------------------------------

TEST_CASE("static environment has unit voltage ratios") {
  auto fam = line_family();
  ComponentSplit split = split_at_origin(fam, 6);
  Ball b = ball(fam, 6);
  EnvSpec spec;  // static
  RngStream rng(13, 1);
  EnvTrace trace = make_trace(spec, b, {0, 1, 0}, rng);
  RatioCertificate cert =
      ratio_certificate(trace, split.components[0], {4, 6}, split.d_max);
  for (const auto& per_radius : cert.alpha)
    for (double a : per_radius)
      REQUIRE_THAT(a, Catch::Matchers::WithinAbs(1.0, 1e-12));
  for (const auto& per_radius : cert.beta)
    for (double bb : per_radius)
      REQUIRE_THAT(bb, Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("scheduled bump on the line respects the ratio bound") {
  auto fam = line_family();
  ComponentSplit split = split_at_origin(fam, 6);
  Ball b = ball(fam, 6);
  EnvSpec spec = scheduled_spec(0.5, 0.5, 1.5);
  RngStream rng(13, 1);
  EnvTrace trace = make_trace(spec, b, std::vector<int>(4, 0), rng);
  SlownessReport rep = slowness_report(trace, fam, split.d_max);
  RatioCertificate cert =
      ratio_certificate(trace, split.components[0], {4, 6}, split.d_max);
  for (const auto& per_radius : cert.alpha)
    for (double a : per_radius) REQUIRE(a >= 1.0 - 1e-12);
  for (const auto& per_radius : cert.beta)
    for (double bb : per_radius) {
      REQUIRE(bb <= 1.0 + 1e-12);
      REQUIRE(bb > 0.0);
    }
  RatioBoundReport bound = ratio_bound_check(cert, rep, trace);
  REQUIRE(bound.holds);
  REQUIRE(bound.worst_slack > 0.0);
}

TEST_CASE("random perturbations on the grid star keep Lambda non-increasing") {
  auto fam = grid2d_family();
  ComponentSplit split = split_at_origin(fam, 6);
  Ball b = ball(fam, 4);
  // hand-built trace: 50 small random multiplicative perturbation steps
  EnvTrace trace;
  trace.ball = b;
  RngStream rng(29, 1);
  trace.configs.push_back(make_config(b, unit_weights()));
  for (int t = 0; t < 50; ++t) {
    WeightConfig next = trace.configs.back();
    for (double& c : next.conductance) c *= 1.0 + 0.02 * (rng.uniform() - 0.5);
    trace.traversed.push_back(0);
    trace.step_change.push_back(
        resistance_change(b, trace.configs.back(), next));
    trace.configs.push_back(std::move(next));
  }
  SlownessReport rep = slowness_report(trace, fam, split.d_max);
  RatioCertificate cert =
      ratio_certificate(trace, split.components[0], {3, 4}, split.d_max);
  double prev = std::numeric_limits<double>::infinity();
  for (long t = 0; t <= trace.horizon(); ++t) {
    const double lam = cert.lambda(split.d_max, t);
    REQUIRE(lam <= prev + 1e-15);
    prev = lam;
  }
  RatioBoundReport bound = ratio_bound_check(cert, rep, trace);
  REQUIRE(bound.holds);
}

TEST_CASE("radius below the component diameter bound is rejected") {
  auto fam = grid2d_family();
  ComponentSplit split = split_at_origin(fam, 6);
  Ball b = ball(fam, 4);
  EnvSpec spec;
  RngStream rng(1, 1);
  EnvTrace trace = make_trace(spec, b, {0}, rng);
  REQUIRE_THROWS_AS(
      ratio_certificate(trace, split.components[0], {split.d_max - 1},
                        split.d_max),
      config_error);
}

// --- freezing ---------------------------------------------------------------

TEST_CASE("static environment never freezes at a lenient level") {
  auto fam = line_family();
  Ball b = ball(fam, 4);
  EnvSpec spec;  // static: Gamma_t = 0, Gamma*_t = 4 on the unit line
  RngStream rng(31, 1);
  EnvTrace trace = make_trace(spec, b, std::vector<int>(12, 0), rng);
  SlownessReport rep = slowness_report(trace, fam, 1);
  FreezeResult fr = freeze_at(spec, trace, rep, nullptr, 10);
  REQUIRE(fr.gamma_m == -1);
  REQUIRE(fr.frozen.freeze_after == -1);  // frozen env == original
}

TEST_CASE("strong reinforcement trips the freeze level") {
  auto fam = line_family();
  Ball b = ball(fam, 5);
  EnvSpec spec;
  spec.kind = EnvKind::once_reinforced;
  spec.delta = 100.0;
  RngStream rng(31, 1);
  std::vector<int> traversed;
  for (int k = 0; k < 4; ++k)
    traversed.push_back(b.edge_index(b.index_of.at(k), b.index_of.at(k + 1)));
  EnvTrace trace = make_trace(spec, b, traversed, rng);
  SlownessReport rep = slowness_report(trace, fam, 1);
  FreezeResult fr = freeze_at(spec, trace, rep, nullptr, 2);
  REQUIRE(fr.gamma_m >= 1);
  // the frozen environment agrees with the original up to gamma_m - 1 and is
  // constant afterwards
  RngStream rng2(31, 1);
  EnvTrace frozen = make_trace(fr.frozen, b, traversed, rng2);
  for (long t = 0; t < fr.gamma_m; ++t)
    REQUIRE(frozen.configs[t].conductance == trace.configs[t].conductance);
  for (long t = fr.gamma_m; t <= frozen.horizon(); ++t)
    REQUIRE(frozen.configs[t].conductance ==
            frozen.configs[fr.gamma_m - 1].conductance);
}

TEST_CASE("summable schedule stays below the freeze thresholds") {
  auto fam = edge_graph();
  Ball b = ball(fam, 1);
  // Gamma < 1/2 and Gamma*_t = C_t <= 1 on the single-edge graph
  EnvSpec spec = scheduled_spec(0.5, 0.5, 1.0);
  RngStream rng(37, 1);
  EnvTrace trace = make_trace(spec, b, std::vector<int>(20, 0), rng);
  SlownessReport rep = slowness_report(trace, fam, 1);
  REQUIRE(rep.gamma < 0.5);
  REQUIRE(rep.gamma_star_sup <= 1.0 + 1e-12);
  FreezeResult fr = freeze_at(spec, trace, rep, nullptr, 10);
  REQUIRE(fr.gamma_m == -1);
}
