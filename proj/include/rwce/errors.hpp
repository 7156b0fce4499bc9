#pragma once

#include <stdexcept>
#include <string>

namespace rwce {

// Neighbor generator returned an asymmetric adjacency, a self-loop, or an
// isolated vertex.
struct structural_error : std::runtime_error {
  explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// A weight configuration is missing an edge or carries a non-positive value.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct incomplete_config_error : std::runtime_error {
  explicit incomplete_config_error(const std::string& what) : std::runtime_error(what) {}
};

// Linear system has a free region disconnected from both source and sink.
struct connectivity_error : std::runtime_error {
  explicit connectivity_error(const std::string& what) : std::runtime_error(what) {}
};

struct probe_radius_error : std::runtime_error {
  explicit probe_radius_error(const std::string& what) : std::runtime_error(what) {}
};

struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

struct internal_consistency_error : std::runtime_error {
  explicit internal_consistency_error(const std::string& what) : std::runtime_error(what) {}
};

struct schedule_error : std::runtime_error {
  explicit schedule_error(const std::string& what) : std::runtime_error(what) {}
};

struct absorption_error : std::runtime_error {
  explicit absorption_error(const std::string& what) : std::runtime_error(what) {}
};

struct truncation_error : std::runtime_error {
  explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

struct degenerate_voltage_error : std::runtime_error {
  explicit degenerate_voltage_error(const std::string& what) : std::runtime_error(what) {}
};

struct oracle_unsupported_error : std::runtime_error {
  explicit oracle_unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

struct cap_exceeded_error : std::runtime_error {
  explicit cap_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rwce
