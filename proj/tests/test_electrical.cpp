#include <catch_amalgamated.hpp>
#include <cmath>

#include "rwce/electrical.hpp"
#include "rwce/rng.hpp"

using namespace rwce;
using Catch::Matchers::WithinAbs;

namespace {

Network path3(double c01 = 1.0, double c12 = 1.0) {
  Network n;
  n.num_vertices = 3;
  n.edges = {{0, 1}, {1, 2}};
  n.conductance = {c01, c12};
  return n;
}

// a=0, x=1, y=2, b=3: two disjoint length-2 paths a-x-b and a-y-b
Network parallel_paths() {
  Network n;
  n.num_vertices = 4;
  n.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  n.conductance = {1, 1, 1, 1};
  return n;
}

Network grid_ball_network(int radius, const WeightConfig** out_cfg = nullptr) {
  static Ball b;
  static WeightConfig cfg;
  b = ball(grid2d_family(), radius);
  cfg = make_config(b, unit_weights());
  Network n;
  n.num_vertices = b.num_vertices();
  n.edges = b.edges;
  n.conductance = cfg.conductance;
  if (out_cfg) *out_cfg = &cfg;
  return n;
}

// Random connected network: spanning tree plus extra chords.
Network random_network(RngStream& rng, int nv) {
  Network n;
  n.num_vertices = nv;
  std::set<std::pair<int, int>> edges;
  for (int v = 1; v < nv; ++v) {
    int p = static_cast<int>(rng.uniform() * v);
    edges.insert({p, v});
  }
  const int extra = 1 + static_cast<int>(rng.uniform() * nv);
  for (int k = 0; k < extra; ++k) {
    int u = static_cast<int>(rng.uniform() * nv);
    int v = static_cast<int>(rng.uniform() * nv);
    if (u == v) continue;
    edges.insert({std::min(u, v), std::max(u, v)});
  }
  n.edges.assign(edges.begin(), edges.end());
  for (std::size_t e = 0; e < n.edges.size(); ++e)
    n.conductance.push_back(0.2 + 4.8 * rng.uniform());
  return n;
}

std::vector<double> random_positive_config(RngStream& rng, std::size_t m) {
  std::vector<double> c(m);
  for (auto& x : c) x = 0.2 + 4.8 * rng.uniform();
  return c;
}

// Unit flow obtained by adding random circulations around fundamental cycles
// of a BFS spanning tree to the unit current.
std::vector<double> perturbed_unit_flow(const Network& net, const EdgeFlow& i,
                                        RngStream& rng, double scale) {
  auto adj = net.adjacency();
  std::vector<int> parent(net.num_vertices, -1), parent_edge(net.num_vertices, -1);
  std::vector<char> seen(net.num_vertices, 0);
  std::vector<int> order{0};
  seen[0] = 1;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (auto [y, e] : adj[order[h]])
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = order[h];
        parent_edge[y] = e;
        order.push_back(y);
      }
  std::vector<double> flow = i.flow;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    auto [u, v] = net.edges[e];
    if (parent_edge[u] == static_cast<int>(e) ||
        parent_edge[v] == static_cast<int>(e))
      continue;  // tree edge
    // circulation: chord u->v, then tree path v -> root -> u
    const double eps = scale * (rng.uniform() - 0.5);
    flow[e] += eps;
    std::vector<double> node_delta(net.num_vertices, 0.0);
    node_delta[v] += eps;
    node_delta[u] -= eps;
    // push excess up the tree toward the root, then cancel along u's path
    for (int h = static_cast<int>(order.size()) - 1; h > 0; --h) {
      const int x = order[h];
      if (node_delta[x] == 0.0) continue;
      const int pe = parent_edge[x];
      const int p = parent[x];
      // flow on pe oriented edges[pe].first -> second
      const double push = node_delta[x];
      if (net.edges[pe].first == x)
        flow[pe] += push;
      else
        flow[pe] -= push;
      node_delta[p] += push;
      node_delta[x] = 0.0;
    }
  }
  return flow;
}

}  // namespace

TEST_CASE("voltage on unit path") {
  Network n = path3();
  VoltageField v = solve_voltage(n, 0, {2});
  REQUIRE_THAT(v.values[0], WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(v.values[1], WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(v.values[2], WithinAbs(0.0, 1e-14));
  REQUIRE(v.residual <= kHarmonicTol);
}

TEST_CASE("voltage divider with unequal resistances") {
  // R(a,x)=1, R(x,b)=2
  Network n = path3(1.0, 0.5);
  VoltageField v = solve_voltage(n, 0, {2});
  REQUIRE_THAT(v.values[1], WithinAbs(2.0 / 3.0, 1e-12));
}

TEST_CASE("gambler's ruin voltages on the line ball") {
  Ball b = ball(line_family(), 10);
  WeightConfig cfg = make_config(b, unit_weights());
  CollapsedNetwork c = collapse_boundary(b, cfg);
  VoltageField v = solve_voltage(c.net, 0, {c.sink});
  for (int id = 0; id < c.sink; ++id) {
    const double expected = 1.0 - std::abs(b.vertices[id]) / 10.0;
    REQUIRE_THAT(v.values[id], WithinAbs(expected, 1e-10));
  }
  REQUIRE(v.residual <= kHarmonicTol);
}

TEST_CASE("non-positive weight rejected") {
  Network n = path3(1.0, -2.0);
  REQUIRE_THROWS_AS(solve_voltage(n, 0, {2}), domain_error);
}

TEST_CASE("disconnected free region rejected") {
  Network n;
  n.num_vertices = 4;
  n.edges = {{0, 1}, {2, 3}};
  n.conductance = {1, 1};
  REQUIRE_THROWS_AS(solve_voltage(n, 0, {1}), connectivity_error);
}

TEST_CASE("unit current on single route") {
  Network n = path3();
  EdgeFlow i = unit_current(n, 0, {2});
  REQUIRE_THAT(i.at(n, 0, 1), WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(i.at(n, 1, 2), WithinAbs(1.0, 1e-12));
  REQUIRE(node_balance_defect(n, i) <= 1e-10);
}

TEST_CASE("unit current splits over parallel paths") {
  Network n = parallel_paths();
  EdgeFlow i = unit_current(n, 0, {3});
  REQUIRE_THAT(i.at(n, 0, 1), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(i.at(n, 0, 2), WithinAbs(0.5, 1e-12));
}

TEST_CASE("unit current on line ball is a symmetric split") {
  Ball b = ball(line_family(), 5);
  WeightConfig cfg = make_config(b, unit_weights());
  CollapsedNetwork c = collapse_boundary(b, cfg);
  EdgeFlow i = unit_current(c.net, 0, {c.sink});
  for (std::size_t e = 0; e < c.net.edges.size(); ++e)
    REQUIRE_THAT(std::abs(i.flow[e]), WithinAbs(0.5, 1e-12));
  REQUIRE(kirchhoff_cycle_residual(c.net, i) <= 1e-10);
}

TEST_CASE("flow energy series and parallel laws") {
  Network s = path3(1.0, 0.5);  // R = 1, 2
  EdgeFlow is = unit_current(s, 0, {2});
  REQUIRE_THAT(flow_energy(s, is), WithinAbs(3.0, 1e-12));

  Network p = parallel_paths();
  EdgeFlow ip = unit_current(p, 0, {3});
  REQUIRE_THAT(flow_energy(p, ip), WithinAbs(1.0, 1e-12));
}

TEST_CASE("effective resistance of line ball is n/2") {
  for (int n = 2; n <= 12; n += 2) {
    Ball b = ball(line_family(), n);
    WeightConfig cfg = make_config(b, unit_weights());
    REQUIRE_THAT(effective_resistance(b, cfg), WithinAbs(n / 2.0, 1e-10));
  }
}

TEST_CASE("one-sided geometric resistance converges to 2") {
  // C(k,k+1) = 2^k for k>=0 and 2^{-k-1} for k<0: both rays converge, the
  // positive-side series alone sums to 2.
  WeightFn w = WeightFn::from_conductance([](Vertex u, Vertex v) {
    const Vertex k = std::min(u, v);
    return k >= 0 ? std::pow(2.0, double(k)) : std::pow(2.0, double(-k - 1));
  });
  Ball b = ball(line_family(), 30);
  WeightConfig cfg = make_config(b, w);
  // positive-side resistance on the truncation
  double pos = 0.0;
  for (int k = 0; k < 30; ++k) pos += std::pow(2.0, -double(k));
  REQUIRE_THAT(pos, WithinAbs(2.0, 1e-8));
  // the full two-sided truncation is the parallel combination of both rays
  double neg = 0.0;
  for (int k = -30; k < 0; ++k) neg += std::pow(2.0, double(k + 1));
  REQUIRE_THAT(effective_resistance(b, cfg),
               WithinAbs(pos * neg / (pos + neg), 1e-9));
}

TEST_CASE("binary tree resistance profile matches series-parallel reduction") {
  auto fam = tree_family(2);
  std::vector<int> radii{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  // exponential ball growth caps the usable radius; the 2^-n increments need
  // a looser slope threshold than the lattice default
  ResistanceProfile p = resistance_profile(fam, unit_weights(), radii, 1e-3);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double expected = 0.0;
    for (int j = 1; j <= radii[i]; ++j) expected += std::pow(2.0, -j);
    REQUIRE_THAT(p.values[i], WithinAbs(expected, 1e-10));
  }
  REQUIRE(p.monotone);
  REQUIRE(p.verdict == "convergent");
  REQUIRE_THAT(p.limit_estimate, WithinAbs(1.0, 1e-6));
}

TEST_CASE("line resistance profile is divergent") {
  std::vector<int> radii{2, 4, 6, 8, 10, 12, 14};
  ResistanceProfile p =
      resistance_profile(line_family(), unit_weights(), radii);
  REQUIRE(p.verdict == "divergent");
  REQUIRE(p.monotone);
}

TEST_CASE("return probability on the line ball") {
  Ball b = ball(line_family(), 10);
  WeightConfig cfg = make_config(b, unit_weights());
  REQUIRE_THAT(return_probability(b, cfg), WithinAbs(0.9, 1e-12));
}

TEST_CASE("return probability on a single edge is zero") {
  auto fam = explicit_family({{0, 1}}, 0, "edge");
  Ball b = ball(fam, 1);
  WeightConfig cfg = make_config(b, unit_weights());
  REQUIRE_THAT(return_probability(b, cfg), WithinAbs(0.0, 1e-12));
}

TEST_CASE("geometric line return probability approaches 2/3") {
  Ball b = ball(line_family(), 30);
  WeightConfig cfg = make_config(b, geometric_line_weights(2.0));
  REQUIRE_THAT(return_probability(b, cfg), WithinAbs(2.0 / 3.0, 1e-6));
}

TEST_CASE("perturbation bound identical configs") {
  Ball b = ball(line_family(), 5);
  WeightConfig cfg = make_config(b, unit_weights());
  PerturbationBound pb = perturbation_bound(b, cfg, cfg);
  REQUIRE_THAT(pb.resistance_sum, WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(pb.differences[0], WithinAbs(0.0, 1e-12));
}

TEST_CASE("perturbation bound single edge bump") {
  Ball b = ball(line_family(), 5);
  WeightConfig w1 = make_config(b, unit_weights());
  WeightConfig w2 = w1;
  w2.conductance[3] = 1.0 / 1.1;  // R: 1 -> 1.1
  PerturbationBound pb = perturbation_bound(b, w1, w2);
  REQUIRE_THAT(pb.resistance_sum, WithinAbs(0.1, 1e-12));
  REQUIRE(pb.holds);
  REQUIRE(pb.differences[0] <= 0.1 + 1e-12);
}

TEST_CASE("perturbation bound holds on random grid configs") {
  Ball b = ball(grid2d_family(), 3);
  RngStream rng(2024, 0);
  for (int trial = 0; trial < 100; ++trial) {
    WeightConfig w1, w2;
    w1.conductance = random_positive_config(rng, b.edges.size());
    w2.conductance = random_positive_config(rng, b.edges.size());
    PerturbationBound pb = perturbation_bound(b, w1, w2);
    REQUIRE(pb.holds);
  }
}

TEST_CASE("thomson principle on random perturbed flows") {
  const WeightConfig* cfg = nullptr;
  Network n = grid_ball_network(3, &cfg);
  // connect to a collapsed sink so source/sink are single vertices
  Ball b = ball(grid2d_family(), 3);
  CollapsedNetwork c = collapse_boundary(b, *cfg);
  EdgeFlow i = unit_current(c.net, 0, {c.sink});
  const double base = flow_energy(c.net, i);
  RngStream rng(7, 1);
  for (int k = 0; k < 1000; ++k) {
    auto flow = perturbed_unit_flow(c.net, i, rng, 0.3);
    REQUIRE(flow_energy(flow, c.net.conductance) >= base - 1e-12);
  }
}

TEST_CASE("rayleigh monotonicity under single-edge resistance bumps") {
  Ball b = ball(grid2d_family(), 3);
  RngStream rng(11, 2);
  WeightConfig base;
  base.conductance = random_positive_config(rng, b.edges.size());
  const double r0 = effective_resistance(b, base);
  for (int k = 0; k < 200; ++k) {
    WeightConfig bumped = base;
    const int e = static_cast<int>(rng.uniform() * b.edges.size());
    bumped.conductance[e] /= 1.0 + 2.0 * rng.uniform();  // raise resistance
    REQUIRE(effective_resistance(b, bumped) >= r0 - 1e-12);
  }
}

TEST_CASE("ohm consistency and energy equals effective resistance") {
  Ball b = ball(grid2d_family(), 3);
  RngStream rng(13, 3);
  WeightConfig cfg;
  cfg.conductance = random_positive_config(rng, b.edges.size());
  CollapsedNetwork c = collapse_boundary(b, cfg);
  VoltageField v = solve_voltage(c.net, 0, {c.sink});
  EdgeFlow i = unit_current(c.net, 0, {c.sink});
  const double reff = effective_resistance(c.net, 0, {c.sink});
  REQUIRE_THAT(flow_energy(c.net, i), WithinAbs(reff, 1e-10));
  for (std::size_t e = 0; e < c.net.edges.size(); ++e) {
    auto [x, y] = c.net.edges[e];
    const double drop = i.flow[e] / c.net.conductance[e] / reff;
    REQUIRE_THAT(v.values[x] - v.values[y], WithinAbs(drop, 1e-10));
  }
}

TEST_CASE("mc crossings on path") {
  Network n = path3();
  CrossingsEstimate est = net_crossings_estimate(n, 0, {2}, 10000, 42);
  REQUIRE_THAT(est.mean[0], WithinAbs(1.0, 1e-12));  // every walk crosses once
  REQUIRE_THAT(est.mean[1], WithinAbs(1.0, 1e-12));
}

TEST_CASE("mc crossings match unit current on parallel paths") {
  Network n = parallel_paths();
  EdgeFlow i = unit_current(n, 0, {3});
  CrossingsEstimate est = net_crossings_estimate(n, 0, {3}, 10000, 43);
  for (std::size_t e = 0; e < n.edges.size(); ++e)
    REQUIRE(std::abs(est.mean[e] - i.flow[e]) <=
            4.0 * est.stderr_[e] + 1e-9);
}

TEST_CASE("mc crossings match unit current on grid ball") {
  Ball b = ball(grid2d_family(), 3);
  WeightConfig cfg = make_config(b, unit_weights());
  CollapsedNetwork c = collapse_boundary(b, cfg);
  EdgeFlow i = unit_current(c.net, 0, {c.sink});
  CrossingsEstimate est = net_crossings_estimate(c.net, 0, {c.sink}, 10000, 44);
  for (std::size_t e = 0; e < c.net.edges.size(); ++e)
    REQUIRE(std::abs(est.mean[e] - i.flow[e]) <=
            4.0 * est.stderr_[e] + 1e-9);
}

TEST_CASE("voltage difference identity trivial case") {
  Network n = parallel_paths();
  VoltageDifferenceIdentity id = voltage_difference_identity(
      n, 0, {3}, n.conductance, n.conductance, 1);
  REQUIRE_THAT(id.left, WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(id.right, WithinAbs(0.0, 1e-14));
}

TEST_CASE("voltage difference identity on line ball bump") {
  Ball b = ball(line_family(), 4);
  WeightConfig cfg = make_config(b, unit_weights());
  CollapsedNetwork c = collapse_boundary(b, cfg);
  std::vector<double> next = c.net.conductance;
  next[0] = 1.0 / 1.5;  // resistance bump +0.5
  const int x = b.index_of.at(1);
  VoltageDifferenceIdentity id = voltage_difference_identity(
      c.net, 0, {c.sink}, c.net.conductance, next, x);
  REQUIRE(id.discrepancy() <= 1e-8);
}

TEST_CASE("voltage difference identity on random networks") {
  RngStream rng(99, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int nv = 5 + static_cast<int>(rng.uniform() * 8);  // <= 12
    Network net = random_network(rng, nv);
    auto c_t = random_positive_config(rng, net.edges.size());
    auto c_next = random_positive_config(rng, net.edges.size());
    // boundary: a random non-origin vertex (plus maybe one more)
    int bd = 1 + static_cast<int>(rng.uniform() * (nv - 1));
    std::vector<int> boundary{bd};
    int x = 1 + static_cast<int>(rng.uniform() * (nv - 1));
    if (x == bd) x = (x % (nv - 1)) + 1;
    if (x == bd) continue;
    VoltageDifferenceIdentity id =
        voltage_difference_identity(net, 0, boundary, c_t, c_next, x);
    worst = std::max(worst, id.discrepancy());
  }
  REQUIRE(worst < 1e-8);
}

TEST_CASE("separator bound on a path") {
  // u=0 - s=1 - y=2 - g=3
  Network n;
  n.num_vertices = 4;
  n.edges = {{0, 1}, {1, 2}, {2, 3}};
  n.conductance = {1, 1, 1};
  SeparatorBound sb = separator_bound_check(n, 0, {1}, {3}, 2);
  REQUIRE(sb.holds);
  REQUIRE(sb.max_over_separator >= sb.value_at_y);
}

TEST_CASE("separator bound on line ball sphere") {
  Ball b = ball(line_family(), 5);
  WeightConfig cfg = make_config(b, unit_weights());
  CollapsedNetwork c = collapse_boundary(b, cfg);
  std::vector<int> sphere1;
  for (int id = 0; id < c.sink; ++id)
    if (b.distance[id] == 1) sphere1.push_back(id);
  const int y = b.index_of.at(3);
  SeparatorBound sb = separator_bound_check(c.net, 0, sphere1, {c.sink}, y);
  REQUIRE(sb.holds);
}

TEST_CASE("separator bound on grid middle column") {
  // 3x3 grid, vertices (r,c) -> 3r+c; separator = middle column
  Network n;
  n.num_vertices = 9;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (c + 1 < 3) n.edges.push_back({3 * r + c, 3 * r + c + 1});
      if (r + 1 < 3) n.edges.push_back({3 * r + c, 3 * (r + 1) + c});
    }
  std::sort(n.edges.begin(), n.edges.end());
  n.conductance.assign(n.edges.size(), 1.0);
  std::vector<int> sep{1, 4, 7};
  for (int y : {2, 5}) {
    SeparatorBound sb = separator_bound_check(n, 0, sep, {8}, y);
    REQUIRE(sb.holds);
  }
}

TEST_CASE("separator precondition violation detected") {
  Network n = parallel_paths();
  // S={1} does not separate 0 from 2's route to... y=3 reachable via 2
  REQUIRE_THROWS_AS(separator_bound_check(n, 0, {1}, {2}, 3),
                    precondition_error);
}
