#pragma once

// Fidelity kernel k(x, y) = |<phi(x)|phi(y)>|^2, computed exactly from
// statevectors or estimated from shots of the compute-uncompute circuit
// U(y)^dagger U(x) |0...0>.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkernel/error.hpp"
#include "qkernel/feature_map.hpp"
#include "qkernel/parallel.hpp"
#include "qkernel/random.hpp"
#include "qkernel/statevector.hpp"

namespace qkernel {

enum class KernelMode { exact, sampled };

NLOHMANN_JSON_SERIALIZE_ENUM(KernelMode, {{KernelMode::exact, "exact"},
                                          {KernelMode::sampled, "sampled"}})

inline KernelMode parse_kernel_mode(const std::string& s) {
  if (s == "exact") return KernelMode::exact;
  if (s == "sampled") return KernelMode::sampled;
  throw Error(ErrorKind::configuration, "unknown kernel mode '" + s + "' (expected exact|sampled)");
}

inline std::string_view to_string(KernelMode m) { return m == KernelMode::exact ? "exact" : "sampled"; }

struct KernelEstimator {
  KernelMode mode = KernelMode::exact;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  FeatureMapConfig feature_map;

  void validate() const {
    feature_map.validate();
    if (mode == KernelMode::sampled && shots < 1) {
      throw Error(ErrorKind::configuration, "sampled kernel estimation needs shots >= 1");
    }
  }

  friend bool operator==(const KernelEstimator&, const KernelEstimator&) = default;
};

using Points = std::vector<std::vector<double>>;

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Square Gram matrix over one point set.
struct KernelMatrix {
  Matrix entries;
  KernelMode mode = KernelMode::exact;
  std::uint64_t shots = 0;

  std::size_t size() const noexcept { return entries.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

inline double kernel_entry_exact(std::span<const double> x, std::span<const double> y,
                                 const FeatureMapConfig& config) {
  if (x.size() != y.size()) throw Error(ErrorKind::dimension, "kernel arguments differ in length");
  return std::norm(inner_product(encode(x, config), encode(y, config)));
}

/// U(y)^dagger U(x), the circuit whose all-zero outcome probability is k(x, y).
inline Circuit compute_uncompute_circuit(std::span<const double> x, std::span<const double> y,
                                         const FeatureMapConfig& config) {
  Circuit c = build_feature_circuit(x, config);
  c.append(inverse(build_feature_circuit(y, config)));
  return c;
}

inline double kernel_entry_sampled(std::span<const double> x, std::span<const double> y,
                                   const KernelEstimator& est) {
  if (est.mode != KernelMode::sampled) {
    throw Error(ErrorKind::configuration, "kernel_entry_sampled requires a sampled-mode estimator");
  }
  est.validate();
  if (x.size() != y.size()) throw Error(ErrorKind::dimension, "kernel arguments differ in length");
  const auto state = run_circuit(compute_uncompute_circuit(x, y, est.feature_map),
                                 zero_state(est.feature_map.n_qubits));
  const auto counts = sample(state, est.shots, est.seed);
  const auto zeros = counts.count(std::string(static_cast<std::size_t>(state.n_qubits()), '0'));
  return std::clamp(static_cast<double>(zeros) / static_cast<double>(est.shots), 0.0, 1.0);
}

/// Seed for entry (i, j) of a sampled Gram or cross-kernel matrix. Depends only
/// on the indices so results do not depend on evaluation order.
inline std::uint64_t pair_seed(std::uint64_t seed, std::size_t i, std::size_t j) {
  return seed ^ mix64((static_cast<std::uint64_t>(i) << 32) ^ static_cast<std::uint64_t>(j));
}

namespace detail {

inline void check_rows(const Points& X, const FeatureMapConfig& config, const char* what) {
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].size() != static_cast<std::size_t>(config.n_qubits)) {
      throw Error(ErrorKind::dimension, std::string(what) + " row " + std::to_string(i) + " has " +
                                            std::to_string(X[i].size()) + " features, expected " +
                                            std::to_string(config.n_qubits));
    }
  }
}

inline std::vector<StateVector> encode_all(const Points& X, const FeatureMapConfig& config) {
  std::vector<StateVector> states(X.size(), zero_state(config.n_qubits));
  parallel_for(X.size(), [&](std::size_t i) { states[i] = encode(X[i], config); });
  return states;
}

inline double sampled_entry(const std::vector<double>& x, const std::vector<double>& y,
                            const KernelEstimator& est, std::size_t i, std::size_t j) {
  KernelEstimator local = est;
  local.seed = pair_seed(est.seed, i, j);
  return kernel_entry_sampled(x, y, local);
}

}  // namespace detail

inline KernelMatrix gram_matrix(const Points& X, const KernelEstimator& est) {
  if (X.empty()) throw Error(ErrorKind::argument, "gram_matrix needs at least one point");
  est.validate();
  detail::check_rows(X, est.feature_map, "training");
  const std::size_t n = X.size();
  KernelMatrix K{Matrix(n, n), est.mode, est.mode == KernelMode::sampled ? est.shots : 0};

  if (est.mode == KernelMode::exact) {
    const auto states = detail::encode_all(X, est.feature_map);
    parallel_for(n, [&](std::size_t i) {
      K.entries(i, i) = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = std::clamp(std::norm(inner_product(states[i], states[j])), 0.0, 1.0);
        K.entries(i, j) = v;
        K.entries(j, i) = v;
      }
    });
  } else {
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = i; j < n; ++j) {
        const double v = detail::sampled_entry(X[i], X[j], est, i, j);
        K.entries(i, j) = v;
        K.entries(j, i) = v;
      }
    });
  }
  return K;
}

/// |X_test| x |X_train| kernel block for prediction.
inline Matrix cross_kernel(const Points& X_test, const Points& X_train, const KernelEstimator& est) {
  est.validate();
  detail::check_rows(X_test, est.feature_map, "test");
  detail::check_rows(X_train, est.feature_map, "training");
  Matrix out(X_test.size(), X_train.size());
  if (est.mode == KernelMode::exact) {
    const auto train = detail::encode_all(X_train, est.feature_map);
    parallel_for(X_test.size(), [&](std::size_t i) {
      const auto s = encode(X_test[i], est.feature_map);
      for (std::size_t j = 0; j < train.size(); ++j) {
        out(i, j) = std::clamp(std::norm(inner_product(s, train[j])), 0.0, 1.0);
      }
    });
  } else {
    parallel_for(X_test.size(), [&](std::size_t i) {
      for (std::size_t j = 0; j < X_train.size(); ++j) {
        out(i, j) = detail::sampled_entry(X_test[i], X_train[j], est, std::min(i, j), std::max(i, j));
      }
    });
  }
  return out;
}

/// CSV export: one header comment line, then n rows of n comma-separated values.
inline void write_gram_csv(std::ostream& out, const KernelMatrix& K) {
  out << "# qkernel gram n=" << K.size() << " mode=" << to_string(K.mode) << " shots=" << K.shots
      << '\n';
  char buf[32];
  for (std::size_t i = 0; i < K.size(); ++i) {
    for (std::size_t j = 0; j < K.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", K(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace qkernel
