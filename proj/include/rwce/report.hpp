#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwce/config.hpp"
#include "rwce/electrical.hpp"
#include "rwce/walker.hpp"

namespace rwce {

// One verified statement: what was checked, against which named mathematical
// fact, the measured value and the bound it must satisfy.
struct CheckResult {
  std::string id;
  std::string description;
  std::string paper_anchor;  // stable identifier of the underlying fact
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

struct Report {
  ExperimentConfig config;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version = "1";
  std::optional<ResistanceProfile> profile;
  std::optional<ClassificationReport> classification;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

// fixed-format double: 17 significant digits, locale-independent
inline std::string num17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace detail

inline std::string config_hash(const ExperimentConfig& c) {
  return detail::fnv1a_hex(emit_config(c));
}

inline std::string emit_report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = r.version;
  j["provenance"] = {{"config_hash", r.config_hash},
                     {"seed", r.seed},
                     {"artifact_version", r.version}};
  if (r.profile) {
    nlohmann::ordered_json p;
    p["radii"] = r.profile->radii;
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (double v : r.profile->values) vals.push_back(detail::num17(v));
    p["effective_resistance"] = vals;
    p["monotone"] = r.profile->monotone;
    p["verdict"] = r.profile->verdict;
    p["limit_estimate"] = detail::num17(r.profile->limit_estimate);
    p["truncation_radius"] = r.profile->truncation_radius;
    j["resistance_profile"] = p;
  }
  if (r.classification) {
    const auto& c = *r.classification;
    nlohmann::ordered_json k;
    k["verdict"] = c.verdict;
    k["slowness_verdict"] = c.slowness_verdict;
    k["profile_verdict"] = c.profile_verdict;
    k["return_frequency"] = detail::num17(c.return_frequency);
    k["mean_first_return"] = detail::num17(c.mean_first_return);
    k["min_transition_prob"] = detail::num17(c.min_transition_prob);
    k["trials"] = c.trials;
    k["horizon"] = c.horizon;
    k["max_depth_seen"] = c.max_depth_seen;
    k["truncated_trials"] = c.truncated_trials;
    k["certificate_radius"] = c.certificate_radius;
    j["classification"] = k;
  }
  nlohmann::ordered_json ledger = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    ledger.push_back({{"id", c.id},
                      {"description", c.description},
                      {"paper_anchor", c.paper_anchor},
                      {"pass", c.pass},
                      {"measured", detail::num17(c.measured)},
                      {"bound", detail::num17(c.bound)}});
  }
  j["ledger"] = ledger;
  return j.dump(2) + "\n";
}

inline std::string emit_profile_csv(const ResistanceProfile& p) {
  std::string out = "radius,effective_resistance\n";
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    out += std::to_string(p.radii[i]) + "," + detail::num17(p.values[i]) +
           "\n";
  return out;
}

inline std::string emit_ledger_csv(const std::vector<CheckResult>& checks) {
  std::string out = "id,description,paper_anchor,pass,measured,bound\n";
  for (const auto& c : checks)
    out += c.id + "," + c.description + "," + c.paper_anchor + "," +
           (c.pass ? "pass" : "fail") + "," + detail::num17(c.measured) +
           "," + detail::num17(c.bound) + "\n";
  return out;
}

}  // namespace rwce
