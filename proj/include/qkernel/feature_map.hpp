#pragma once

// Second-order Pauli-Z evolution feature map. One repetition is
//
//   H on every qubit
//   P(2 x_i) on qubit i
//   for each entangled pair (i, j): CNOT(i, j)  P(2 s(x_i, x_j)) on j  CNOT(i, j)
//
// repeated `depth` times, with s either (pi - x_i)(pi - x_j) or x_i x_j.

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkernel/error.hpp"
#include "qkernel/statevector.hpp"

namespace qkernel {

enum class Entanglement { linear, full };
enum class PairScale { product, plain };

NLOHMANN_JSON_SERIALIZE_ENUM(Entanglement, {{Entanglement::linear, "linear"},
                                            {Entanglement::full, "full"}})
NLOHMANN_JSON_SERIALIZE_ENUM(PairScale, {{PairScale::product, "product"},
                                         {PairScale::plain, "plain"}})

inline Entanglement parse_entanglement(const std::string& s) {
  if (s == "linear") return Entanglement::linear;
  if (s == "full") return Entanglement::full;
  throw Error(ErrorKind::configuration, "unknown entanglement '" + s + "' (expected linear|full)");
}

inline PairScale parse_pair_scale(const std::string& s) {
  if (s == "product") return PairScale::product;
  if (s == "plain") return PairScale::plain;
  throw Error(ErrorKind::configuration, "unknown pair scale '" + s + "' (expected product|plain)");
}

struct FeatureMapConfig {
  int n_qubits = 2;
  int depth = 2;
  Entanglement entanglement = Entanglement::linear;
  PairScale pair_scale = PairScale::product;

  void validate() const {
    StateVector::check_qubit_count(n_qubits);
    if (depth < 1) throw Error(ErrorKind::configuration, "feature map depth must be at least 1");
  }

  friend bool operator==(const FeatureMapConfig&, const FeatureMapConfig&) = default;
};

inline void to_json(nlohmann::json& j, const FeatureMapConfig& c) {
  j = nlohmann::json{{"n_qubits", c.n_qubits},
                     {"depth", c.depth},
                     {"entanglement", c.entanglement},
                     {"pair_scale", c.pair_scale}};
}

inline void from_json(const nlohmann::json& j, FeatureMapConfig& c) {
  c.n_qubits = j.at("n_qubits").get<int>();
  c.depth = j.at("depth").get<int>();
  c.entanglement = parse_entanglement(j.at("entanglement").get<std::string>());
  c.pair_scale = parse_pair_scale(j.at("pair_scale").get<std::string>());
  c.validate();
}

inline std::vector<std::pair<int, int>> entangled_pairs(int n_qubits, Entanglement e) {
  std::vector<std::pair<int, int>> pairs;
  if (e == Entanglement::linear) {
    for (int i = 0; i + 1 < n_qubits; ++i) pairs.emplace_back(i, i + 1);
  } else {
    for (int i = 0; i < n_qubits; ++i)
      for (int j = i + 1; j < n_qubits; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

/// Gates per repetition: n H, n P and three per entangled pair.
inline std::size_t feature_circuit_size(const FeatureMapConfig& config) {
  const auto pairs = entangled_pairs(config.n_qubits, config.entanglement).size();
  return static_cast<std::size_t>(config.depth) *
         (2 * static_cast<std::size_t>(config.n_qubits) + 3 * pairs);
}

inline void check_features(std::span<const double> x, const FeatureMapConfig& config) {
  if (x.size() != static_cast<std::size_t>(config.n_qubits)) {
    throw Error(ErrorKind::dimension, "feature vector has " + std::to_string(x.size()) +
                                          " entries but the feature map uses " +
                                          std::to_string(config.n_qubits) + " qubits");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw Error(ErrorKind::argument, "feature " + std::to_string(i) + " is not finite");
    }
  }
}

inline Circuit build_feature_circuit(std::span<const double> x, const FeatureMapConfig& config) {
  config.validate();
  check_features(x, config);
  const auto pairs = entangled_pairs(config.n_qubits, config.entanglement);
  const auto pair_angle = [&](int i, int j) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double xj = x[static_cast<std::size_t>(j)];
    return config.pair_scale == PairScale::product
               ? (std::numbers::pi - xi) * (std::numbers::pi - xj)
               : xi * xj;
  };

  Circuit c(config.n_qubits);
  for (int rep = 0; rep < config.depth; ++rep) {
    for (int q = 0; q < config.n_qubits; ++q) c.add(Gate::h(q));
    for (int q = 0; q < config.n_qubits; ++q) c.add(Gate::p(2.0 * x[static_cast<std::size_t>(q)], q));
    for (const auto& [i, j] : pairs) {
      c.add(Gate::cnot(i, j));
      c.add(Gate::p(2.0 * pair_angle(i, j), j));
      c.add(Gate::cnot(i, j));
    }
  }
  return c;
}

inline StateVector encode(std::span<const double> x, const FeatureMapConfig& config) {
  return run_circuit(build_feature_circuit(x, config), zero_state(config.n_qubits));
}

}  // namespace qkernel
