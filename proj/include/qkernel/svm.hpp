#pragma once

// Binary soft-margin SVM trained on a precomputed Gram matrix with sequential
// minimal optimization (SMO) on the dual
//
//   max  W(a) = sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
//   s.t. 0 <= a_i <= C,  sum_i a_i y_i = 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkernel/error.hpp"
#include "qkernel/quantum_kernel.hpp"
#include "qkernel/random.hpp"

namespace qkernel {

// ---------------------------------------------------------------------------
// Kernels

enum class KernelKind { linear, polynomial, rbf, quantum, precomputed };

NLOHMANN_JSON_SERIALIZE_ENUM(KernelKind, {{KernelKind::linear, "linear"},
                                          {KernelKind::polynomial, "polynomial"},
                                          {KernelKind::rbf, "rbf"},
                                          {KernelKind::quantum, "quantum"},
                                          {KernelKind::precomputed, "precomputed"}})

inline KernelKind parse_kernel_kind(const std::string& s) {
  if (s == "linear") return KernelKind::linear;
  if (s == "polynomial" || s == "poly") return KernelKind::polynomial;
  if (s == "rbf") return KernelKind::rbf;
  if (s == "quantum") return KernelKind::quantum;
  if (s == "precomputed") return KernelKind::precomputed;
  throw Error(ErrorKind::configuration,
              "unknown kernel '" + s + "' (expected linear|polynomial|rbf|quantum|precomputed)");
}

inline std::string_view to_string(KernelKind k) {
  switch (k) {
    case KernelKind::linear: return "linear";
    case KernelKind::polynomial: return "polynomial";
    case KernelKind::rbf: return "rbf";
    case KernelKind::quantum: return "quantum";
    case KernelKind::precomputed: return "precomputed";
  }
  return "?";
}

struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  int degree = 3;         // polynomial
  double coef0 = 1.0;     // polynomial
  double gamma = 1.0;     // rbf
  KernelEstimator quantum;  // quantum

  static KernelSpec linear() { return {}; }
  static KernelSpec polynomial(int degree, double coef0) {
    KernelSpec s;
    s.kind = KernelKind::polynomial;
    s.degree = degree;
    s.coef0 = coef0;
    return s;
  }
  static KernelSpec rbf(double gamma) {
    KernelSpec s;
    s.kind = KernelKind::rbf;
    s.gamma = gamma;
    return s;
  }
  static KernelSpec quantum_kernel(const KernelEstimator& est) {
    KernelSpec s;
    s.kind = KernelKind::quantum;
    s.quantum = est;
    return s;
  }
  static KernelSpec precomputed() {
    KernelSpec s;
    s.kind = KernelKind::precomputed;
    return s;
  }

  void validate() const {
    if (kind == KernelKind::polynomial && degree < 1) {
      throw Error(ErrorKind::configuration, "polynomial degree must be at least 1");
    }
    if (kind == KernelKind::rbf && !(gamma > 0.0)) {
      throw Error(ErrorKind::configuration, "rbf gamma must be positive");
    }
    if (kind == KernelKind::quantum) quantum.validate();
  }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

inline void to_json(nlohmann::json& j, const KernelSpec& s) {
  j = nlohmann::json{{"kind", s.kind}};
  switch (s.kind) {
    case KernelKind::polynomial:
      j["degree"] = s.degree;
      j["coef0"] = s.coef0;
      break;
    case KernelKind::rbf: j["gamma"] = s.gamma; break;
    case KernelKind::quantum:
      j["feature_map"] = s.quantum.feature_map;
      j["mode"] = s.quantum.mode;
      j["shots"] = s.quantum.shots;
      j["seed"] = s.quantum.seed;
      break;
    default: break;
  }
}

inline void from_json(const nlohmann::json& j, KernelSpec& s) {
  s = KernelSpec{};
  s.kind = parse_kernel_kind(j.at("kind").get<std::string>());
  if (s.kind == KernelKind::polynomial) {
    s.degree = j.at("degree").get<int>();
    s.coef0 = j.at("coef0").get<double>();
  } else if (s.kind == KernelKind::rbf) {
    s.gamma = j.at("gamma").get<double>();
  } else if (s.kind == KernelKind::quantum) {
    s.quantum.feature_map = j.at("feature_map").get<FeatureMapConfig>();
    s.quantum.mode = parse_kernel_mode(j.at("mode").get<std::string>());
    s.quantum.shots = j.at("shots").get<std::uint64_t>();
    s.quantum.seed = j.at("seed").get<std::uint64_t>();
  }
  s.validate();
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

inline double classical_kernel(const KernelSpec& spec, std::span<const double> x,
                               std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::dimension, "kernel arguments differ in length");
  switch (spec.kind) {
    case KernelKind::linear: return dot(x, y);
    case KernelKind::polynomial: return std::pow(dot(x, y) + spec.coef0, spec.degree);
    case KernelKind::rbf: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
      return std::exp(-spec.gamma * d2);
    }
    default:
      throw Error(ErrorKind::configuration,
                  std::string(to_string(spec.kind)) + " kernel is not a classical kernel");
  }
}

/// Gram matrix for any resolvable kernel (classical or quantum).
inline KernelMatrix kernel_matrix(const KernelSpec& spec, const Points& X) {
  spec.validate();
  if (spec.kind == KernelKind::quantum) return gram_matrix(X, spec.quantum);
  if (spec.kind == KernelKind::precomputed) {
    throw Error(ErrorKind::configuration, "precomputed kernels cannot be evaluated from points");
  }
  if (X.empty()) throw Error(ErrorKind::argument, "kernel matrix needs at least one point");
  KernelMatrix K{Matrix(X.size(), X.size()), KernelMode::exact, 0};
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t j = i; j < X.size(); ++j) {
      K.entries(i, j) = K.entries(j, i) = classical_kernel(spec, X[i], X[j]);
    }
  }
  return K;
}

inline Matrix kernel_cross(const KernelSpec& spec, const Points& X_new, const Points& X_train) {
  spec.validate();
  if (spec.kind == KernelKind::quantum) return cross_kernel(X_new, X_train, spec.quantum);
  if (spec.kind == KernelKind::precomputed) {
    throw Error(ErrorKind::configuration, "precomputed kernels cannot be evaluated from points");
  }
  Matrix out(X_new.size(), X_train.size());
  for (std::size_t i = 0; i < X_new.size(); ++i)
    for (std::size_t j = 0; j < X_train.size(); ++j) out(i, j) = classical_kernel(spec, X_new[i], X_train[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Training

struct TrainConfig {
  double C = 1.0;
  double tol = 1e-3;
  int max_passes = 10;
  std::uint64_t seed = 0;
  // Hard stop on total sweeps; only reached on pathological inputs.
  int max_sweeps = 100000;

  void validate() const {
    if (!(C > 0.0)) throw Error(ErrorKind::configuration, "C must be positive");
    if (!(tol > 0.0)) throw Error(ErrorKind::configuration, "tol must be positive");
    if (max_passes < 1) throw Error(ErrorKind::configuration, "max_passes must be at least 1");
  }
};

struct SVMModel {
  std::vector<double> alphas;
  double bias = 0.0;
  std::vector<int> labels;
  std::vector<std::size_t> support_indices;
  KernelSpec kernel;
  std::optional<Points> train_points;
  double C = 1.0;

  std::size_t training_size() const noexcept { return alphas.size(); }
};

inline void check_labels(std::span<const int> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 1 && y[i] != -1) {
      throw Error(ErrorKind::argument, "label " + std::to_string(i) + " is not -1 or +1");
    }
  }
}

inline double dual_objective(const KernelMatrix& K, std::span<const int> y,
                             std::span<const double> alphas) {
  const std::size_t n = K.size();
  if (y.size() != n || alphas.size() != n || K.entries.cols() != n) {
    throw Error(ErrorKind::dimension, "dual objective inputs differ in size");
  }
  double linear = 0.0;
  double quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    linear += alphas[i];
    if (alphas[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) quad += alphas[i] * alphas[j] * y[i] * y[j] * K(i, j);
  }
  return linear - 0.5 * quad;
}

namespace detail {

/// Bias from final multipliers: mean of y_i - g_i over free vectors, otherwise
/// the midpoint of the interval the bound vectors allow.
inline double solve_bias(std::span<const double> alphas, std::span<const int> y,
                         std::span<const double> g, double C) {
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double r = y[i] - g[i];
    if (alphas[i] > 0.0 && alphas[i] < C) {
      free_sum += r;
      ++free_count;
    } else if ((alphas[i] <= 0.0) == (y[i] > 0)) {
      // alpha = 0 with y = +1, or alpha = C with y = -1: b >= y_i - g_i
      lower = std::max(lower, r);
    } else {
      upper = std::min(upper, r);
    }
  }
  if (free_count > 0) return free_sum / static_cast<double>(free_count);
  if (std::isinf(lower)) return upper;
  if (std::isinf(upper)) return lower;
  return 0.5 * (lower + upper);
}

}  // namespace detail

/// SMO on a precomputed Gram matrix. Each sweep visits every KKT violator i and
/// tries a seeded random partner j first, then the remaining partners in a
/// shuffled order until one pair step increases the dual. Training stops once
/// max_passes consecutive sweeps change no multiplier by more than tol.
inline SVMModel train_smo(const KernelMatrix& K, std::span<const int> y, const TrainConfig& cfg) {
  cfg.validate();
  const std::size_t n = K.size();
  if (K.entries.cols() != n) throw Error(ErrorKind::dimension, "Gram matrix is not square");
  if (y.size() != n) {
    throw Error(ErrorKind::dimension, "Gram matrix is " + std::to_string(n) + "x" +
                                          std::to_string(n) + " but there are " +
                                          std::to_string(y.size()) + " labels");
  }
  if (n < 2) throw Error(ErrorKind::degenerate_data, "training needs at least two points");
  check_labels(y);
  const bool has_pos = std::find(y.begin(), y.end(), 1) != y.end();
  const bool has_neg = std::find(y.begin(), y.end(), -1) != y.end();
  if (!has_pos || !has_neg) {
    throw Error(ErrorKind::degenerate_data, "training labels contain a single class");
  }

  const double C = cfg.C;
  std::vector<double> a(n, 0.0);
  std::vector<double> g(n, 0.0);  // g_i = sum_j a_j y_j K_ij
  double b = 0.0;
  Rng rng(cfg.seed);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  // Change in W when (a_i, a_j) moves to (ai, aj) along the constraint line.
  const auto delta_w = [&](std::size_t i, std::size_t j, double ai, double aj) {
    const double di = ai - a[i];
    const double dj = aj - a[j];
    return (1.0 - y[i] * g[i]) * di + (1.0 - y[j] * g[j]) * dj -
           0.5 * (di * di * K(i, i) + dj * dj * K(j, j) + 2.0 * di * dj * y[i] * y[j] * K(i, j));
  };

  // Returns |delta a_j| of the accepted step, or a negative value when the
  // pair cannot make progress.
  const auto take_step = [&](std::size_t i, std::size_t j) -> double {
    if (i == j) return -1.0;
    const double s = y[i] * y[j];
    double L, H;
    if (s < 0) {
      L = std::max(0.0, a[j] - a[i]);
      H = std::min(C, C + a[j] - a[i]);
    } else {
      L = std::max(0.0, a[i] + a[j] - C);
      H = std::min(C, a[i] + a[j]);
    }
    if (H - L <= 1e-14 * C) return -1.0;
    const double Ei = g[i] + b - y[i];
    const double Ej = g[j] + b - y[j];
    const double eta = 2.0 * K(i, j) - K(i, i) - K(j, j);
    double aj;
    if (eta < -1e-14) {
      aj = std::clamp(a[j] - y[j] * (Ei - Ej) / eta, L, H);
    } else {
      // Flat or convex along the line (duplicate points or an indefinite
      // Gram matrix): the maximum sits at an endpoint.
      const double wl = delta_w(i, j, a[i] + s * (a[j] - L), L);
      const double wh = delta_w(i, j, a[i] + s * (a[j] - H), H);
      aj = wl >= wh ? L : H;
    }
    if (aj - L < 1e-12 * C) aj = L;
    if (H - aj < 1e-12 * C) aj = H;
    // Pin values within rounding of the box so bound/free classification is exact.
    if (aj < 1e-12 * C) aj = 0.0;
    if (C - aj < 1e-12 * C) aj = C;
    double ai = a[i] + s * (a[j] - aj);
    if (ai < 1e-12 * C) ai = 0.0;
    if (C - ai < 1e-12 * C) ai = C;
    if (std::abs(aj - a[j]) < 1e-15 * C || delta_w(i, j, ai, aj) <= 0.0) return -1.0;

    const double dai = ai - a[i];
    const double daj = aj - a[j];
    for (std::size_t k = 0; k < n; ++k) g[k] += y[i] * dai * K(k, i) + y[j] * daj * K(k, j);
    a[i] = ai;
    a[j] = aj;
    const bool i_free = ai > 0.0 && ai < C;
    const bool j_free = aj > 0.0 && aj < C;
    if (i_free) {
      b = y[i] - g[i];
    } else if (j_free) {
      b = y[j] - g[j];
    } else {
      b = 0.5 * ((y[i] - g[i]) + (y[j] - g[j]));
    }
    return std::abs(daj);
  };

  int passes = 0;
  for (int sweep = 0; passes < cfg.max_passes && sweep < cfg.max_sweeps; ++sweep) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double Ei = g[i] + b - y[i];
      const double r = y[i] * Ei;
      if (!((r < -cfg.tol && a[i] < C) || (r > cfg.tol && a[i] > 0.0))) continue;
      std::size_t first = static_cast<std::size_t>(uniform_index(rng, n - 1));
      if (first >= i) ++first;
      double step = take_step(i, first);
      if (step < 0.0) {
        shuffle(std::span<std::size_t>(order), rng);
        for (const std::size_t j : order) {
          if (j == i || j == first) continue;
          step = take_step(i, j);
          if (step >= 0.0) break;
        }
      }
      if (step > 0.0) changed = true;
    }
    passes = changed ? 0 : passes + 1;
  }

  SVMModel m;
  m.C = C;
  m.alphas = a;
  m.labels.assign(y.begin(), y.end());
  m.bias = detail::solve_bias(a, y, g, C);
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] > 0.0) m.support_indices.push_back(i);
  m.kernel = KernelSpec::precomputed();
  return m;
}

/// Trains on points with the given kernel and keeps the points for prediction.
inline SVMModel train(const KernelSpec& spec, const Points& X, std::span<const int> y,
                      const TrainConfig& cfg) {
  SVMModel m = train_smo(kernel_matrix(spec, X), y, cfg);
  m.kernel = spec;
  m.train_points = X;
  return m;
}

// ---------------------------------------------------------------------------
// Prediction

inline double decision_value(const SVMModel& model, std::span<const double> k_row) {
  if (k_row.size() != model.training_size()) {
    throw Error(ErrorKind::dimension, "kernel row has " + std::to_string(k_row.size()) +
                                          " entries, model has " +
                                          std::to_string(model.training_size()) +
                                          " training points");
  }
  double f = model.bias;
  for (const std::size_t j : model.support_indices) f += model.alphas[j] * model.labels[j] * k_row[j];
  return f;
}

/// Sign with sign(0) = +1.
inline int label_of(double decision) { return decision >= 0.0 ? 1 : -1; }

inline std::vector<double> decision_values(const SVMModel& model, const Matrix& cross) {
  std::vector<double> out(cross.rows());
  for (std::size_t i = 0; i < cross.rows(); ++i) out[i] = decision_value(model, cross.row(i));
  return out;
}

inline std::vector<double> decision_values(const SVMModel& model, const Points& X_new) {
  if (model.kernel.kind == KernelKind::precomputed || !model.train_points) {
    throw Error(ErrorKind::configuration,
                "model has no stored kernel inputs; supply a precomputed cross-kernel");
  }
  return decision_values(model, kernel_cross(model.kernel, X_new, *model.train_points));
}

inline std::vector<int> predict(const SVMModel& model, const Matrix& cross) {
  std::vector<int> out;
  for (const double f : decision_values(model, cross)) out.push_back(label_of(f));
  return out;
}

inline std::vector<int> predict(const SVMModel& model, const Points& X_new) {
  std::vector<int> out;
  for (const double f : decision_values(model, X_new)) out.push_back(label_of(f));
  return out;
}

inline double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw Error(ErrorKind::dimension, "accuracy needs equal, non-empty label vectors");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

// ---------------------------------------------------------------------------
// Persistence

inline constexpr int kModelFormatVersion = 1;

inline nlohmann::json model_to_json(const SVMModel& m) {
  nlohmann::json j;
  j["format_version"] = kModelFormatVersion;
  j["alphas"] = m.alphas;
  j["bias"] = m.bias;
  j["labels"] = m.labels;
  j["support_indices"] = m.support_indices;
  j["kernel"] = m.kernel;
  j["C"] = m.C;
  j["train_points"] = m.train_points ? nlohmann::json(*m.train_points) : nlohmann::json(nullptr);
  return j;
}

inline SVMModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format_version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorKind::input, "unsupported model format_version");
    }
    SVMModel m;
    m.alphas = j.at("alphas").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.labels = j.at("labels").get<std::vector<int>>();
    m.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();
    m.kernel = j.at("kernel").get<KernelSpec>();
    m.C = j.value("C", 1.0);
    if (const auto& tp = j.at("train_points"); !tp.is_null()) m.train_points = tp.get<Points>();
    if (m.labels.size() != m.alphas.size()) {
      throw Error(ErrorKind::input, "model labels and alphas differ in length");
    }
    check_labels(m.labels);
    for (const auto idx : m.support_indices) {
      if (idx >= m.alphas.size()) throw Error(ErrorKind::input, "support index out of range");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::input, std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace qkernel
