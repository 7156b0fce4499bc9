#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rwce/errors.hpp"

namespace rwce {

// Vertices of every shipped family are encoded into a single signed 64-bit
// label. The encoding is family-specific; balls canonicalize labels to dense
// BFS indices, so nothing downstream depends on the encoding.
using Vertex = std::int64_t;

struct GraphFamily {
  std::string name;
  Vertex origin = 0;
  std::function<std::vector<Vertex>(Vertex)> neighbors;
  // graph distance to the origin, available in closed form for every shipped
  // family; lets long simulations run without materializing balls
  std::function<int(Vertex)> depth;

  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
};

// --- shipped families -------------------------------------------------------

inline GraphFamily line_family() {
  GraphFamily f;
  f.name = "line";
  f.origin = 0;
  f.neighbors = [](Vertex v) { return std::vector<Vertex>{v - 1, v + 1}; };
  f.depth = [](Vertex v) { return static_cast<int>(v < 0 ? -v : v); };
  return f;
}

namespace detail {

inline Vertex pack_xy(std::int32_t x, std::int32_t y) {
  return static_cast<Vertex>(
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
      static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)));
}

inline std::pair<std::int32_t, std::int32_t> unpack_xy(Vertex v) {
  const auto u = static_cast<std::uint64_t>(v);
  return {static_cast<std::int32_t>(u >> 32),
          static_cast<std::int32_t>(u & 0xffffffffULL)};
}

}  // namespace detail

inline GraphFamily grid2d_family() {
  GraphFamily f;
  f.name = "grid2d";
  f.origin = detail::pack_xy(0, 0);
  f.neighbors = [](Vertex v) {
    auto [x, y] = detail::unpack_xy(v);
    return std::vector<Vertex>{
        detail::pack_xy(x - 1, y), detail::pack_xy(x + 1, y),
        detail::pack_xy(x, y - 1), detail::pack_xy(x, y + 1)};
  };
  f.depth = [](Vertex v) {
    auto [x, y] = detail::unpack_xy(v);
    return static_cast<int>(std::abs(static_cast<std::int64_t>(x)) +
                            std::abs(static_cast<std::int64_t>(y)));
  };
  return f;
}

// Rooted tree in which every vertex (including the root) has `branching`
// children. Level j holds branching^j vertices. Heap indexing: children of v
// are v*b+1 .. v*b+b.
inline GraphFamily tree_family(int branching) {
  if (branching < 1) throw config_error("tree: branching factor must be >= 1");
  GraphFamily f;
  f.name = "tree";
  f.origin = 0;
  const std::int64_t b = branching;
  f.neighbors = [b](Vertex v) {
    std::vector<Vertex> out;
    if (v > 0) out.push_back((v - 1) / b);
    for (std::int64_t c = 1; c <= b; ++c) out.push_back(v * b + c);
    return out;
  };
  f.depth = [b](Vertex v) {
    int level = 0;
    while (v > 0) {
      v = (v - 1) / b;
      ++level;
    }
    return level;
  };
  return f;
}

// Degree-regular tree: every vertex (root included) has degree `degree`, so
// the root has `degree` children and every other vertex has degree-1.
inline GraphFamily regular_tree_family(int degree) {
  if (degree < 2) throw config_error("regtree: degree must be >= 2");
  GraphFamily f;
  f.name = "regtree";
  f.origin = 0;
  const std::int64_t d = degree;
  const std::int64_t c = d - 1;  // children per non-root vertex
  // Level offsets: O_0=0, O_1=1, O_{j+1}=O_j + d*c^{j-1} for j>=1.
  auto locate = [d, c](Vertex v) {
    // returns (level, index within level, level offset)
    if (v == 0) return std::tuple<int, std::int64_t, std::int64_t>{0, 0, 0};
    std::int64_t offset = 1, count = d;
    int level = 1;
    while (v >= offset + count) {
      offset += count;
      count *= c;
      ++level;
    }
    return std::tuple<int, std::int64_t, std::int64_t>{level, v - offset,
                                                       offset};
  };
  f.neighbors = [d, c, locate](Vertex v) {
    std::vector<Vertex> out;
    if (v == 0) {
      for (std::int64_t k = 1; k <= d; ++k) out.push_back(k);
      return out;
    }
    auto [level, pos, offset] = locate(v);
    std::int64_t count = (level == 1) ? d : 0;
    if (level == 1) {
      out.push_back(0);
    } else {
      // parent sits in level-1
      std::int64_t poffset = 1, pcount = d;
      for (int j = 1; j < level - 1; ++j) {
        poffset += pcount;
        pcount *= c;
      }
      out.push_back(poffset + pos / c);
      count = pcount * c;
    }
    const std::int64_t child_base = offset + count + pos * c;
    for (std::int64_t k = 0; k < c; ++k) out.push_back(child_base + k);
    return out;
  };
  f.depth = [locate](Vertex v) { return std::get<0>(locate(v)); };
  return f;
}

// Finite graph from an explicit edge list with 0-based labels.
inline GraphFamily explicit_family(
    const std::vector<std::pair<Vertex, Vertex>>& edge_list, Vertex origin,
    std::string name = "explicit") {
  auto adj = std::make_shared<std::map<Vertex, std::vector<Vertex>>>();
  for (const auto& [u, v] : edge_list) {
    if (u == v) throw structural_error("explicit: self-loop in edge list");
    (*adj)[u].push_back(v);
    (*adj)[v].push_back(u);
  }
  for (auto& [v, nb] : *adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  if (!adj->count(origin))
    throw structural_error("explicit: origin has no incident edge");
  GraphFamily f;
  f.name = std::move(name);
  f.origin = origin;
  f.neighbors = [adj](Vertex v) {
    auto it = adj->find(v);
    if (it == adj->end())
      throw structural_error("explicit: unknown vertex requested");
    return it->second;
  };
  // finite graph: one BFS from the origin serves as the depth table
  auto dist = std::make_shared<std::map<Vertex, int>>();
  (*dist)[origin] = 0;
  std::vector<Vertex> queue{origin};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    auto it = adj->find(x);
    if (it == adj->end()) continue;
    for (Vertex y : it->second)
      if (!dist->count(y)) {
        (*dist)[y] = dist->at(x) + 1;
        queue.push_back(y);
      }
  }
  f.depth = [dist](Vertex v) {
    auto it = dist->find(v);
    if (it == dist->end())
      throw structural_error("explicit: unknown vertex requested");
    return it->second;
  };
  return f;
}

// --- balls ------------------------------------------------------------------

struct Ball {
  int radius = 0;
  // BFS order from the origin (id 0); distances are non-decreasing, so the
  // interior V_(n-1) is always a prefix.
  std::vector<Vertex> vertices;
  std::map<Vertex, int> index_of;
  std::vector<int> distance;                  // by id
  std::vector<std::pair<int, int>> edges;     // induced, u<v, lexicographic
  std::vector<int> boundary;                  // ids at distance == radius

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  bool contains(Vertex v) const { return index_of.count(v) > 0; }

  int interior_count() const {  // |V_(n-1)|
    int m = 0;
    while (m < num_vertices() && distance[m] < radius) ++m;
    return m;
  }

  int edge_index(int u, int v) const {
    auto key = std::minmax(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(),
                               std::pair<int, int>{key.first, key.second});
    if (it == edges.end() || *it != std::pair<int, int>{key.first, key.second})
      return -1;
    return static_cast<int>(it - edges.begin());
  }
};

inline Ball ball(const GraphFamily& family, int n) {
  if (n < 0) throw config_error("ball: radius must be >= 0");
  Ball b;
  b.radius = n;
  b.vertices.push_back(family.origin);
  b.index_of[family.origin] = 0;
  b.distance.push_back(0);
  for (std::size_t head = 0; head < b.vertices.size(); ++head) {
    const Vertex x = b.vertices[head];
    const int dx = b.distance[head];
    if (dx == n) continue;
    for (Vertex y : family.neighbors(x)) {
      if (y == x) throw structural_error("ball: self-loop at vertex");
      if (!b.index_of.count(y)) {
        b.index_of[y] = static_cast<int>(b.vertices.size());
        b.vertices.push_back(y);
        b.distance.push_back(dx + 1);
      }
    }
  }
  // induced edges + symmetry validation
  std::set<std::pair<int, int>> edge_set;
  for (int u = 0; u < b.num_vertices(); ++u) {
    const auto nb = family.neighbors(b.vertices[u]);
    if (nb.empty()) throw structural_error("ball: isolated vertex");
    for (Vertex y : nb) {
      auto it = b.index_of.find(y);
      if (it == b.index_of.end()) continue;
      const int v = it->second;
      if (v == u) throw structural_error("ball: self-loop at vertex");
      edge_set.insert({std::min(u, v), std::max(u, v)});
      // symmetry: u must appear among y's neighbors
      const auto back = family.neighbors(y);
      if (std::find(back.begin(), back.end(), b.vertices[u]) == back.end())
        throw structural_error("ball: asymmetric neighbor lists");
    }
  }
  b.edges.assign(edge_set.begin(), edge_set.end());
  for (int u = 0; u < b.num_vertices(); ++u)
    if (b.distance[u] == n) b.boundary.push_back(u);
  return b;
}

}  // namespace rwce
