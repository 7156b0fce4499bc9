#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwce/environment.hpp"
#include "rwce/errors.hpp"
#include "rwce/graph.hpp"
#include "rwce/network.hpp"

namespace rwce {

// Experiment description parsed from a single JSON document. Schedule
// formulas are selected by name plus numeric parameters; there is no
// expression language.
struct ExperimentConfig {
  // graph
  std::string family = "line";   // line | grid2d | tree | regtree | explicit
  int branching = 2;             // tree
  int degree = 3;                // regtree
  std::string edge_list;         // explicit: path to a `u v` per-line file
  std::int64_t origin = 0;       // explicit only

  // initial weights
  std::string weight_preset = "unit";  // unit | geometric
  double lambda = 2.0;                 // geometric

  // environment
  std::string env_kind = "static";
  double delta = 2.0;
  double increment = 1.0;
  double amp = 0.0;
  double decay = 0.5;
  double wexp = 1.0;
  bool coin = false;
  double amp2 = 0.0;

  // experiment shape
  std::vector<int> radii = {2, 4, 6, 8};
  long horizon = 1000;
  long trials = 100;
  std::uint64_t seed = 1;
  double solver_tol = 1e-10;
  double mc_sigma = 4.0;
  int max_depth = 1 << 20;
  std::string truncation_policy = "error";  // error | stop
  std::string out_dir = ".";
  std::string format = "json";  // json | csv
};

inline void validate(const ExperimentConfig& c) {
  if (c.family != "line" && c.family != "grid2d" && c.family != "tree" &&
      c.family != "regtree" && c.family != "explicit")
    throw config_error("config: unknown graph family '" + c.family + "'");
  if (c.family == "explicit" && c.edge_list.empty())
    throw config_error("config: explicit family needs an edge_list path");
  if (c.weight_preset != "unit" && c.weight_preset != "geometric")
    throw config_error("config: unknown weight preset");
  if (c.weight_preset == "geometric" && !(c.lambda > 0))
    throw config_error("config: geometric lambda must be positive");
  if (c.env_kind != "static" && c.env_kind != "scheduled" &&
      c.env_kind != "once_reinforced" && c.env_kind != "linear_reinforced")
    throw config_error("config: unknown environment kind");
  if (c.env_kind == "once_reinforced" && !(c.delta > 0))
    throw config_error("config: delta must be positive");
  if (c.radii.empty()) throw config_error("config: radii list required");
  for (std::size_t i = 0; i + 1 < c.radii.size(); ++i)
    if (c.radii[i] >= c.radii[i + 1])
      throw config_error("config: radii must be strictly ascending");
  if (c.radii.front() < 1) throw config_error("config: radii must be >= 1");
  if (c.horizon < 1 || c.trials < 1)
    throw config_error("config: horizon and trials must be >= 1");
  if (!(c.solver_tol > 0) || !(c.mc_sigma > 0))
    throw config_error("config: tolerances must be positive");
  if (c.max_depth < 2) throw config_error("config: max_depth must be >= 2");
  if (c.truncation_policy != "error" && c.truncation_policy != "stop")
    throw config_error("config: truncation_policy must be error or stop");
  if (c.format != "json" && c.format != "csv")
    throw config_error("config: format must be json or csv");
}

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    if (j.contains("graph")) {
      const auto& g = j["graph"];
      c.family = g.value("family", c.family);
      c.branching = g.value("branching", c.branching);
      c.degree = g.value("degree", c.degree);
      c.edge_list = g.value("edge_list", c.edge_list);
      c.origin = g.value("origin", c.origin);
    }
    if (j.contains("weights")) {
      const auto& w = j["weights"];
      c.weight_preset = w.value("preset", c.weight_preset);
      c.lambda = w.value("lambda", c.lambda);
    }
    if (j.contains("environment")) {
      const auto& e = j["environment"];
      c.env_kind = e.value("kind", c.env_kind);
      c.delta = e.value("delta", c.delta);
      c.increment = e.value("increment", c.increment);
      c.amp = e.value("amp", c.amp);
      c.decay = e.value("decay", c.decay);
      c.wexp = e.value("wexp", c.wexp);
      c.coin = e.value("coin", c.coin);
      c.amp2 = e.value("amp2", c.amp2);
    }
    c.radii = j.value("radii", c.radii);
    c.horizon = j.value("horizon", c.horizon);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      c.solver_tol = t.value("solver", c.solver_tol);
      c.mc_sigma = t.value("mc_sigma", c.mc_sigma);
    }
    c.max_depth = j.value("max_depth", c.max_depth);
    c.truncation_policy = j.value("truncation_policy", c.truncation_policy);
    if (j.contains("output")) {
      const auto& o = j["output"];
      c.out_dir = o.value("dir", c.out_dir);
      c.format = o.value("format", c.format);
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: bad field type: ") + e.what());
  }
  validate(c);
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

inline std::string emit_config(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["schema_version"] = "1";
  j["graph"] = {{"family", c.family},
                {"branching", c.branching},
                {"degree", c.degree},
                {"edge_list", c.edge_list},
                {"origin", c.origin}};
  j["weights"] = {{"preset", c.weight_preset}, {"lambda", c.lambda}};
  j["environment"] = {{"kind", c.env_kind},   {"delta", c.delta},
                      {"increment", c.increment}, {"amp", c.amp},
                      {"decay", c.decay},     {"wexp", c.wexp},
                      {"coin", c.coin},       {"amp2", c.amp2}};
  j["radii"] = c.radii;
  j["horizon"] = c.horizon;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["tolerances"] = {{"solver", c.solver_tol}, {"mc_sigma", c.mc_sigma}};
  j["max_depth"] = c.max_depth;
  j["truncation_policy"] = c.truncation_policy;
  j["output"] = {{"dir", c.out_dir}, {"format", c.format}};
  return j.dump(2) + "\n";
}

// Edge-list file: one `u v` pair per line, whitespace-separated, 0-based.
inline std::vector<std::pair<Vertex, Vertex>> load_edge_list(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("edge list: cannot open " + path);
  std::vector<std::pair<Vertex, Vertex>> edges;
  Vertex u, v;
  while (in >> u >> v) edges.push_back({u, v});
  if (edges.empty()) throw config_error("edge list: no edges in " + path);
  return edges;
}

inline GraphFamily make_family(const ExperimentConfig& c) {
  if (c.family == "line") return line_family();
  if (c.family == "grid2d") return grid2d_family();
  if (c.family == "tree") return tree_family(c.branching);
  if (c.family == "regtree") return regular_tree_family(c.degree);
  return explicit_family(load_edge_list(c.edge_list), c.origin, "explicit");
}

inline WeightFn make_weights(const ExperimentConfig& c) {
  if (c.weight_preset == "geometric") {
    if (c.family != "line")
      throw config_error("config: geometric preset is line-only");
    return geometric_line_weights(c.lambda);
  }
  return unit_weights();
}

inline EnvSpec make_env(const ExperimentConfig& c) {
  EnvSpec spec;
  spec.initial = make_weights(c);
  if (c.env_kind == "scheduled")
    spec.kind = EnvKind::scheduled;
  else if (c.env_kind == "once_reinforced")
    spec.kind = EnvKind::once_reinforced;
  else if (c.env_kind == "linear_reinforced")
    spec.kind = EnvKind::linear_reinforced;
  spec.delta = c.delta;
  spec.increment = c.increment;
  spec.amp = c.amp;
  spec.decay = c.decay;
  spec.wexp = c.wexp;
  spec.coin = c.coin;
  spec.amp2 = c.amp2;
  return spec;
}

}  // namespace rwce
