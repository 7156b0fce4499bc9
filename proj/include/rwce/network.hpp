#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "rwce/errors.hpp"
#include "rwce/graph.hpp"

namespace rwce {

// One strictly positive conductance per edge of a Ball, indexed by the ball's
// canonical edge order. Resistances are reciprocals.
struct WeightConfig {
  std::vector<double> conductance;

  double resistance(int e) const { return 1.0 / conductance[e]; }

  void validate(const Ball& b) const {
    if (conductance.size() != b.edges.size())
      throw incomplete_config_error("weight config does not cover the ball");
    for (double c : conductance)
      if (!(c > 0.0) || !std::isfinite(c))
        throw domain_error("improper weight: conductances must be in (0,inf)");
  }
};

// Edge-level weight rule over vertex labels; the source of initial configs.
struct WeightFn {
  std::function<double(Vertex, Vertex)> conductance;
  // Exact log-conductance for presets whose values overflow a double far from
  // the origin (the walk sampler only needs local ratios).
  std::function<double(Vertex, Vertex)> log_conductance;

  static WeightFn from_conductance(std::function<double(Vertex, Vertex)> c) {
    WeightFn w;
    w.conductance = c;
    w.log_conductance = [c](Vertex u, Vertex v) { return std::log(c(u, v)); };
    return w;
  }
};

inline WeightFn unit_weights() {
  return WeightFn::from_conductance([](Vertex, Vertex) { return 1.0; });
}

// Geometric conductances on the line: C(k,k+1) = lambda^k for every k.
// With lambda > 1 the positive side has summable resistance, so the walk
// escapes to +infinity with positive probability.
inline WeightFn geometric_line_weights(double lambda) {
  if (!(lambda > 0)) throw config_error("geometric weights: lambda must be > 0");
  WeightFn w;
  w.conductance = [lambda](Vertex u, Vertex v) {
    const Vertex k = std::min(u, v);
    return std::pow(lambda, static_cast<double>(k));
  };
  w.log_conductance = [lambda](Vertex u, Vertex v) {
    const Vertex k = std::min(u, v);
    return static_cast<double>(k) * std::log(lambda);
  };
  return w;
}

inline WeightConfig make_config(const Ball& b, const WeightFn& fn) {
  WeightConfig cfg;
  cfg.conductance.reserve(b.edges.size());
  for (const auto& [u, v] : b.edges)
    cfg.conductance.push_back(fn.conductance(b.vertices[u], b.vertices[v]));
  cfg.validate(b);
  return cfg;
}

// A plain finite network: vertices 0..num_vertices-1, undirected edges with
// conductances. Everything in the electrical module operates on this.
struct Network {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // u<v, sorted lexicographically
  std::vector<double> conductance;

  int edge_index(int u, int v) const {
    auto key = std::minmax(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(),
                               std::pair<int, int>{key.first, key.second});
    if (it == edges.end() || *it != std::pair<int, int>{key.first, key.second})
      return -1;
    return static_cast<int>(it - edges.begin());
  }

  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(num_vertices);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      adj[edges[e].first].push_back({edges[e].second, e});
      adj[edges[e].second].push_back({edges[e].first, e});
    }
    return adj;
  }

  void validate() const {
    for (double c : conductance)
      if (!(c > 0.0) || !std::isfinite(c))
        throw domain_error("improper network: conductances must be in (0,inf)");
  }
};

// Ball with boundary identified into a single sink vertex b_n. Interior ids
// coincide with the ball's BFS prefix; the sink is the last id.
struct CollapsedNetwork {
  Network net;
  int sink = -1;                              // == net.num_vertices - 1
  std::vector<std::vector<int>> edge_sources; // collapsed edge -> ball edges
};

inline CollapsedNetwork collapse_boundary(const Ball& b,
                                          const WeightConfig& weights) {
  weights.validate(b);
  if (b.radius < 1)
    throw config_error("collapse_boundary: radius must be >= 1");
  const int m = b.interior_count();
  CollapsedNetwork out;
  out.net.num_vertices = m + 1;
  out.sink = m;
  std::map<std::pair<int, int>, std::pair<double, std::vector<int>>> merged;
  for (int e = 0; e < b.num_edges(); ++e) {
    auto [u, v] = b.edges[e];
    const bool ui = u < m, vi = v < m;
    if (!ui && !vi) continue;  // boundary-boundary edge: self-loop at b_n
    const std::pair<int, int> key = {ui ? u : v, (ui && vi) ? std::max(u, v) : m};
    auto reordered = ui && vi ? std::pair<int, int>{std::min(u, v), std::max(u, v)}
                              : key;
    auto& slot = merged[reordered];
    slot.first += weights.conductance[e];
    slot.second.push_back(e);
  }
  for (auto& [key, slot] : merged) {
    out.net.edges.push_back(key);
    out.net.conductance.push_back(slot.first);
    out.edge_sources.push_back(slot.second);
  }
  return out;
}

// --- origin removal ---------------------------------------------------------

struct ComponentSplit {
  struct Component {
    std::vector<int> members;     // ball ids, ascending, excluding the origin
    bool presumed_infinite = false;
    int d_k = 1;                  // per-component D_k (paper convention)
  };
  int probe_radius = 0;
  std::vector<Component> components;
  int d_max = 1;
};

namespace detail {

// Smallest r such that y1 and y2 are connected inside {x in comp : d(a,x)<=r}.
inline int minimax_radius(const Ball& b,
                          const std::vector<std::vector<std::pair<int, int>>>& adj,
                          const std::vector<char>& in_comp, int y1, int y2) {
  for (int r = 1; r <= b.radius; ++r) {
    std::vector<char> seen(b.num_vertices(), 0);
    std::vector<int> stack{y1};
    seen[y1] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x == y2) return r;
      for (auto [y, e] : adj[x]) {
        if (seen[y] || !in_comp[y] || b.distance[y] > r) continue;
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return -1;
}

}  // namespace detail

// Components of the probe ball after deleting the origin, with the D_max
// needed by the voltage-ratio machinery: paths connecting distance-1 vertices
// of a component lie completely inside V_(D_max - 1).
inline ComponentSplit split_at_origin(const GraphFamily& family,
                                      int probe_radius) {
  if (probe_radius < 2)
    throw config_error("split_at_origin: probe radius must be >= 2");
  const Ball b = ball(family, probe_radius);
  Network net;
  net.num_vertices = b.num_vertices();
  net.edges = b.edges;
  net.conductance.assign(b.edges.size(), 1.0);
  auto adj = net.adjacency();

  ComponentSplit out;
  out.probe_radius = probe_radius;
  std::vector<int> comp_of(b.num_vertices(), -1);
  for (int s = 1; s < b.num_vertices(); ++s) {
    if (comp_of[s] != -1) continue;
    const int id = static_cast<int>(out.components.size());
    out.components.push_back({});
    std::vector<int> stack{s};
    comp_of[s] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      out.components[id].members.push_back(x);
      for (auto [y, e] : adj[x]) {
        if (y == 0 || comp_of[y] != -1) continue;
        comp_of[y] = id;
        stack.push_back(y);
      }
    }
    std::sort(out.components[id].members.begin(),
              out.components[id].members.end());
  }
  for (auto& comp : out.components) {
    std::vector<char> in_comp(b.num_vertices(), 0);
    std::vector<int> sphere1;
    for (int x : comp.members) {
      in_comp[x] = 1;
      if (b.distance[x] == probe_radius) comp.presumed_infinite = true;
      if (b.distance[x] == 1) sphere1.push_back(x);
    }
    comp.d_k = 1;
    for (std::size_t i = 0; i < sphere1.size(); ++i) {
      for (std::size_t j = i + 1; j < sphere1.size(); ++j) {
        const int r =
            detail::minimax_radius(b, adj, in_comp, sphere1[i], sphere1[j]);
        if (r < 0)
          throw probe_radius_error(
              "split_at_origin: boundary pair not connected inside probe ball");
        comp.d_k = std::max(comp.d_k, r + 1);
      }
    }
    out.d_max = std::max(out.d_max, comp.d_k);
  }
  return out;
}

// Star network G*_k restricted to a ball of radius n: origin + the component's
// vertices within distance n. Sink = component vertices at distance exactly n.
struct StarNetwork {
  Network net;
  std::vector<int> ball_ids;  // star id -> ball id (origin first)
  std::vector<int> star_of;   // ball id -> star id or -1
  std::vector<int> sinks;     // star ids at distance n
  std::vector<int> edge_in_ball;  // star edge -> ball edge index
};

inline StarNetwork star_network(const Ball& b,
                                const ComponentSplit::Component& comp, int n) {
  StarNetwork s;
  s.star_of.assign(b.num_vertices(), -1);
  s.star_of[0] = 0;
  s.ball_ids.push_back(0);
  for (int x : comp.members) {
    // members may come from a larger probe ball; BFS ids agree on the shared
    // prefix, so out-of-range ids are simply beyond this ball
    if (x >= b.num_vertices() || b.distance[x] > n) continue;
    s.star_of[x] = static_cast<int>(s.ball_ids.size());
    s.ball_ids.push_back(x);
  }
  s.net.num_vertices = static_cast<int>(s.ball_ids.size());
  for (int e = 0; e < b.num_edges(); ++e) {
    auto [u, v] = b.edges[e];
    const int su = s.star_of[u], sv = s.star_of[v];
    if (su < 0 || sv < 0) continue;
    s.net.edges.push_back({std::min(su, sv), std::max(su, sv)});
    s.edge_in_ball.push_back(e);
  }
  // keep edges sorted for Network::edge_index
  std::vector<int> order(s.net.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    return s.net.edges[a] < s.net.edges[c];
  });
  std::vector<std::pair<int, int>> edges;
  std::vector<int> in_ball;
  for (int k : order) {
    edges.push_back(s.net.edges[k]);
    in_ball.push_back(s.edge_in_ball[k]);
  }
  s.net.edges = std::move(edges);
  s.edge_in_ball = std::move(in_ball);
  for (int i = 1; i < s.net.num_vertices; ++i)
    if (b.distance[s.ball_ids[i]] == n) s.sinks.push_back(i);
  return s;
}

// Conductances for a star network drawn from a ball-level config.
inline std::vector<double> star_conductance(const StarNetwork& s,
                                            const WeightConfig& cfg) {
  std::vector<double> out;
  out.reserve(s.edge_in_ball.size());
  for (int e : s.edge_in_ball) out.push_back(cfg.conductance[e]);
  return out;
}

}  // namespace rwce
