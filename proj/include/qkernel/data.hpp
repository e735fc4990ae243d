#pragma once

// Dataset handling: CSV ingestion and export, standardization, PCA down to the
// qubit count, affine rescaling to the encoding range, stratified splitting
// and the parity-labelled synthetic generator.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qkernel/error.hpp"
#include "qkernel/feature_map.hpp"
#include "qkernel/quantum_kernel.hpp"
#include "qkernel/random.hpp"
#include "qkernel/statevector.hpp"

namespace qkernel {

/// Dense labelled samples. `labels` is empty for unlabelled inputs (e.g. data
/// to be predicted); otherwise it has one entry in {-1, +1} per row.
struct Dataset {
  Points features;
  std::vector<int> labels;
  std::vector<std::string> feature_names;

  std::size_t rows() const noexcept { return features.size(); }
  std::size_t cols() const noexcept { return feature_names.size(); }
  bool labelled() const noexcept { return !labels.empty(); }

  Dataset subset(std::span<const std::size_t> idx) const {
    Dataset out;
    out.feature_names = feature_names;
    for (const auto i : idx) {
      out.features.push_back(features[i]);
      if (labelled()) out.labels.push_back(labels[i]);
    }
    return out;
  }

  std::size_t count(int label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
  }
};

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (const char ch : line) {
    if (ch == '"') quoted = !quoted;
    if (ch == ',' && !quoted) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto cells = split_csv_line(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw Error(ErrorKind::parse, path + ": row " + std::to_string(t.rows.size() + 1) + " has " +
                                        std::to_string(cells.size()) + " cells, header has " +
                                        std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (!have_header) throw Error(ErrorKind::input, path + ": missing header row");
  return t;
}

inline std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                              const std::string& column) {
  if (const auto it = std::find(header.begin(), header.end(), column); it != header.end()) {
    return static_cast<std::size_t>(it - header.begin());
  }
  if (!column.empty() && std::all_of(column.begin(), column.end(), [](unsigned char c) { return std::isdigit(c); })) {
    const auto idx = std::stoul(column);
    if (idx < header.size()) return idx;
  }
  return std::nullopt;
}

inline double parse_cell(const std::string& cell, const std::string& path, std::size_t row,
                         const std::string& column) {
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::parse, path + ": row " + std::to_string(row) + ", column '" + column +
                                      "': cannot parse '" + cell + "' as a finite number");
  }
  return v;
}

}  // namespace detail

/// Loads a labelled CSV. `label_column` is a header name or a zero-based
/// column index; `positive_label` maps to +1 and the other value to -1.
inline Dataset load_csv(const std::string& path, const std::string& label_column,
                        const std::string& positive_label) {
  const auto table = detail::read_csv_table(path);
  const auto label_idx = detail::find_column(table.header, label_column);
  if (!label_idx) {
    throw Error(ErrorKind::input, path + ": label column '" + label_column + "' not found");
  }
  std::vector<std::string> values;
  for (const auto& row : table.rows) {
    if (std::find(values.begin(), values.end(), row[*label_idx]) == values.end()) {
      values.push_back(row[*label_idx]);
    }
  }
  if (values.size() != 2) {
    throw Error(ErrorKind::label_cardinality,
                path + ": label column '" + table.header[*label_idx] + "' has " +
                    std::to_string(values.size()) + " distinct values, expected exactly 2");
  }
  if (std::find(values.begin(), values.end(), positive_label) == values.end()) {
    throw Error(ErrorKind::input, path + ": positive label '" + positive_label +
                                      "' does not occur in column '" + table.header[*label_idx] + "'");
  }

  Dataset d;
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (c != *label_idx) d.feature_names.push_back(table.header[c]);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<double> x;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c == *label_idx) continue;
      x.push_back(detail::parse_cell(table.rows[r][c], path, r + 1, table.header[c]));
    }
    d.features.push_back(std::move(x));
    d.labels.push_back(table.rows[r][*label_idx] == positive_label ? 1 : -1);
  }
  return d;
}

/// Loads a prepared CSV (the format write_csv produces) whose label column may
/// be absent. Labels, when present, must be 1, +1 or -1; a single class is
/// allowed.
inline Dataset load_prepared_csv(const std::string& path, const std::string& label_column = "label") {
  const auto table = detail::read_csv_table(path);
  const auto label_idx = detail::find_column(table.header, label_column);
  Dataset d;
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (c != label_idx) d.feature_names.push_back(table.header[c]);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<double> x;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c == label_idx) continue;
      x.push_back(detail::parse_cell(table.rows[r][c], path, r + 1, table.header[c]));
    }
    d.features.push_back(std::move(x));
    if (label_idx) {
      const auto& cell = table.rows[r][*label_idx];
      if (cell == "1" || cell == "+1") {
        d.labels.push_back(1);
      } else if (cell == "-1") {
        d.labels.push_back(-1);
      } else {
        throw Error(ErrorKind::parse, path + ": row " + std::to_string(r + 1) + ", column '" +
                                          table.header[*label_idx] + "': label '" + cell +
                                          "' is not -1 or +1");
      }
    }
  }
  return d;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes features then a trailing label column (+1 written as "1").
inline void write_csv(std::ostream& out, const Dataset& d, const std::string& label_column = "label") {
  for (std::size_t c = 0; c < d.feature_names.size(); ++c) out << (c ? "," : "") << d.feature_names[c];
  if (d.labelled()) out << ',' << label_column;
  out << '\n';
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.features[r].size(); ++c) out << (c ? "," : "") << format_double(d.features[r][c]);
    if (d.labelled()) out << ',' << d.labels[r];
    out << '\n';
  }
}

inline void write_csv(const std::string& path, const Dataset& d, const std::string& label_column = "label") {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::input, "cannot write '" + path + "'");
  write_csv(out, d, label_column);
}

// ---------------------------------------------------------------------------
// Standardization (zero mean, unit population variance)

struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;

  friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

inline Standardizer fit_standardize(const Dataset& train) {
  if (train.rows() < 2) throw Error(ErrorKind::degenerate_data, "standardization needs at least 2 rows");
  const std::size_t d = train.cols();
  const double n = static_cast<double>(train.rows());
  Standardizer s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (const auto& x : train.features)
    for (std::size_t c = 0; c < d; ++c) s.means[c] += x[c];
  for (auto& m : s.means) m /= n;
  for (const auto& x : train.features)
    for (std::size_t c = 0; c < d; ++c) s.stds[c] += (x[c] - s.means[c]) * (x[c] - s.means[c]);
  for (std::size_t c = 0; c < d; ++c) {
    s.stds[c] = std::sqrt(s.stds[c] / n);
    if (!(s.stds[c] > 0.0)) {
      throw Error(ErrorKind::degenerate_feature,
                  "feature '" + train.feature_names[c] + "' is constant in the training data");
    }
  }
  return s;
}

inline Dataset apply_standardize(const Standardizer& s, Dataset data) {
  if (data.cols() != s.means.size()) throw Error(ErrorKind::dimension, "standardizer width mismatch");
  for (auto& x : data.features)
    for (std::size_t c = 0; c < x.size(); ++c) x[c] = (x[c] - s.means[c]) / s.stds[c];
  return data;
}

// ---------------------------------------------------------------------------
// PCA

struct Pca {
  std::vector<double> center;
  Points components;                 // k x d, orthonormal rows
  std::vector<double> eigenvalues;   // all d covariance eigenvalues, descending

  std::size_t n_components() const noexcept { return components.size(); }

  double retained_variance_fraction() const {
    double total = 0.0;
    double kept = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
      const double ev = std::max(eigenvalues[i], 0.0);
      total += ev;
      if (i < components.size()) kept += ev;
    }
    return total > 0.0 ? kept / total : 1.0;
  }

  friend bool operator==(const Pca&, const Pca&) = default;
};

/// Top-k eigenvectors of the training covariance (1/N normalization), sorted
/// by descending eigenvalue. Each component is signed so its largest-magnitude
/// entry is positive.
inline Pca fit_pca(const Dataset& train, std::size_t n_components) {
  const std::size_t d = train.cols();
  if (n_components < 1 || n_components > d) {
    throw Error(ErrorKind::dimension, "cannot keep " + std::to_string(n_components) +
                                          " principal components of " + std::to_string(d) +
                                          " features");
  }
  if (train.rows() < 1) throw Error(ErrorKind::degenerate_data, "PCA needs training rows");
  const auto n = static_cast<Eigen::Index>(train.rows());
  Eigen::MatrixXd X(n, static_cast<Eigen::Index>(d));
  for (Eigen::Index r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) X(r, static_cast<Eigen::Index>(c)) = train.features[static_cast<std::size_t>(r)][c];
  const Eigen::VectorXd mean = X.colwise().mean();
  X.rowwise() -= mean.transpose();
  const Eigen::MatrixXd cov = (X.transpose() * X) / static_cast<double>(n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);

  Pca p;
  p.center.assign(mean.data(), mean.data() + mean.size());
  const auto& evals = solver.eigenvalues();  // ascending
  const auto& evecs = solver.eigenvectors();
  for (Eigen::Index i = static_cast<Eigen::Index>(d) - 1; i >= 0; --i) {
    p.eigenvalues.push_back(evals(i));
    if (p.components.size() == n_components) continue;
    Eigen::VectorXd v = evecs.col(i);
    Eigen::Index arg = 0;
    for (Eigen::Index k = 1; k < v.size(); ++k)
      if (std::abs(v(k)) > std::abs(v(arg))) arg = k;
    if (v(arg) < 0) v = -v;
    p.components.emplace_back(v.data(), v.data() + v.size());
  }
  return p;
}

inline Dataset apply_pca(const Pca& p, const Dataset& data) {
  if (data.cols() != p.center.size()) throw Error(ErrorKind::dimension, "PCA width mismatch");
  Dataset out;
  out.labels = data.labels;
  for (std::size_t k = 0; k < p.n_components(); ++k) out.feature_names.push_back("pc" + std::to_string(k + 1));
  for (const auto& x : data.features) {
    std::vector<double> z(p.n_components(), 0.0);
    for (std::size_t k = 0; k < z.size(); ++k)
      for (std::size_t c = 0; c < x.size(); ++c) z[k] += p.components[k][c] * (x[c] - p.center[c]);
    out.features.push_back(std::move(z));
  }
  return out;
}

/// Maps projected rows back to the original feature space.
inline Points pca_reconstruct(const Pca& p, const Points& projected) {
  Points out;
  for (const auto& z : projected) {
    std::vector<double> x = p.center;
    for (std::size_t k = 0; k < z.size(); ++k)
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += z[k] * p.components[k][c];
    out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rescaling to the encoding range

struct Rescaler {
  std::vector<double> mins;
  std::vector<double> maxs;
  double lo = -std::numbers::pi;
  double hi = std::numbers::pi;

  friend bool operator==(const Rescaler&, const Rescaler&) = default;
};

struct RescaleResult {
  Dataset data;
  std::size_t clamped = 0;  // values outside the training range pinned to lo/hi
};

inline Rescaler fit_rescale(const Dataset& train, double lo = -std::numbers::pi,
                            double hi = std::numbers::pi) {
  if (!(hi > lo)) throw Error(ErrorKind::argument, "rescale range needs hi > lo");
  if (train.rows() < 1) throw Error(ErrorKind::degenerate_data, "rescale needs training rows");
  Rescaler r{train.features.front(), train.features.front(), lo, hi};
  for (const auto& x : train.features) {
    for (std::size_t c = 0; c < x.size(); ++c) {
      r.mins[c] = std::min(r.mins[c], x[c]);
      r.maxs[c] = std::max(r.maxs[c], x[c]);
    }
  }
  for (std::size_t c = 0; c < r.mins.size(); ++c) {
    if (!(r.maxs[c] > r.mins[c])) {
      throw Error(ErrorKind::degenerate_feature,
                  "feature '" + train.feature_names[c] + "' is constant in the training data");
    }
  }
  return r;
}

inline RescaleResult apply_rescale(const Rescaler& r, Dataset data) {
  if (data.cols() != r.mins.size()) throw Error(ErrorKind::dimension, "rescaler width mismatch");
  std::size_t clamped = 0;
  for (auto& x : data.features) {
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (x[c] == r.mins[c]) {
        x[c] = r.lo;
      } else if (x[c] == r.maxs[c]) {
        x[c] = r.hi;
      } else {
        const double v = r.lo + (x[c] - r.mins[c]) / (r.maxs[c] - r.mins[c]) * (r.hi - r.lo);
        if (v < r.lo || v > r.hi) ++clamped;
        x[c] = std::clamp(v, r.lo, r.hi);
      }
    }
  }
  return {std::move(data), clamped};
}

// ---------------------------------------------------------------------------
// Whole preprocessing chain

struct PreprocessModel {
  std::optional<Standardizer> standardizer;
  std::optional<Pca> pca;
  std::optional<Rescaler> rescaler;

  friend bool operator==(const PreprocessModel&, const PreprocessModel&) = default;
};

/// Applies every fitted stage in order; returns the transformed data and the
/// number of clamped values.
inline RescaleResult apply_preprocess(const PreprocessModel& m, Dataset data) {
  if (m.standardizer) data = apply_standardize(*m.standardizer, std::move(data));
  if (m.pca) data = apply_pca(*m.pca, data);
  if (m.rescaler) return apply_rescale(*m.rescaler, std::move(data));
  return {std::move(data), 0};
}

inline void to_json(nlohmann::json& j, const PreprocessModel& m) {
  j = nlohmann::json::object();
  if (m.standardizer) j["standardize"] = {{"means", m.standardizer->means}, {"stds", m.standardizer->stds}};
  if (m.pca) {
    j["pca"] = {{"center", m.pca->center},
                {"components", m.pca->components},
                {"eigenvalues", m.pca->eigenvalues}};
  }
  if (m.rescaler) {
    j["rescale"] = {{"mins", m.rescaler->mins},
                    {"maxs", m.rescaler->maxs},
                    {"lo", m.rescaler->lo},
                    {"hi", m.rescaler->hi}};
  }
}

inline void from_json(const nlohmann::json& j, PreprocessModel& m) {
  m = PreprocessModel{};
  if (j.contains("standardize")) {
    const auto& s = j.at("standardize");
    m.standardizer = Standardizer{s.at("means").get<std::vector<double>>(),
                                  s.at("stds").get<std::vector<double>>()};
  }
  if (j.contains("pca")) {
    const auto& p = j.at("pca");
    m.pca = Pca{p.at("center").get<std::vector<double>>(), p.at("components").get<Points>(),
                p.at("eigenvalues").get<std::vector<double>>()};
  }
  if (j.contains("rescale")) {
    const auto& r = j.at("rescale");
    m.rescaler = Rescaler{r.at("mins").get<std::vector<double>>(), r.at("maxs").get<std::vector<double>>(),
                          r.at("lo").get<double>(), r.at("hi").get<double>()};
  }
}

// ---------------------------------------------------------------------------
// Splitting

/// Stratified shuffle split. Each class contributes round(fraction * count)
/// rows to the test set; rows keep their original relative order.
inline std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double test_fraction,
                                                    std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorKind::argument, "test fraction must lie in (0, 1)");
  }
  if (!data.labelled()) throw Error(ErrorKind::argument, "cannot stratify unlabelled data");
  Rng rng(seed);
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (const int label : {1, -1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.rows(); ++i)
      if (data.labels[i] == label) members.push_back(i);
    if (members.size() < 2) {
      throw Error(ErrorKind::stratification, "class " + std::to_string(label) + " has " +
                                                 std::to_string(members.size()) +
                                                 " samples; stratified splitting needs at least 2");
    }
    shuffle(std::span<std::size_t>(members), rng);
    const auto n_test = static_cast<std::size_t>(
        std::lround(test_fraction * static_cast<double>(members.size())));
    test_idx.insert(test_idx.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
    train_idx.insert(train_idx.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {data.subset(train_idx), data.subset(test_idx)};
}

// ---------------------------------------------------------------------------
// Synthetic parity-labelled data

inline constexpr std::size_t kMaxAdhocCandidates = 1'000'000;

/// <phi(x)| O |phi(x)> for the diagonal parity observable O (+1 on even-weight
/// basis states, -1 on odd).
inline double parity_expectation(const StateVector& state) {
  double v = 0.0;
  for (std::size_t k = 0; k < state.dimension(); ++k) {
    const double p = std::norm(state[k]);
    v += (std::popcount(k) % 2 == 0) ? p : -p;
  }
  return v;
}

/// Draws points uniformly from [0, 2pi)^n, labels them by the sign of the
/// parity expectation under the feature map and keeps only those at least
/// `gap` away from zero. Train and test sets are balanced and alternate
/// +1 / -1 rows.
inline std::pair<Dataset, Dataset> generate_adhoc(std::size_t n_train_per_class,
                                                  std::size_t n_test_per_class, double gap,
                                                  const FeatureMapConfig& config, std::uint64_t seed) {
  config.validate();
  if (config.n_qubits < 2 || config.n_qubits > 3) {
    throw Error(ErrorKind::configuration, "ad-hoc generation supports 2 or 3 qubits");
  }
  if (n_train_per_class < 1 || n_test_per_class < 1) {
    throw Error(ErrorKind::argument, "ad-hoc generation needs at least one point per class and split");
  }
  if (!(gap > 0.0)) throw Error(ErrorKind::argument, "gap must be positive");

  const std::size_t need = n_train_per_class + n_test_per_class;
  Points pos;
  Points neg;
  Rng rng(seed);
  std::size_t drawn = 0;
  while (pos.size() < need || neg.size() < need) {
    if (drawn++ >= kMaxAdhocCandidates) {
      throw Error(ErrorKind::generation_exhausted,
                  "no balanced sample after " + std::to_string(kMaxAdhocCandidates) +
                      " candidates; try a smaller gap");
    }
    std::vector<double> x(static_cast<std::size_t>(config.n_qubits));
    for (auto& v : x) v = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double v = parity_expectation(encode(x, config));
    if (v >= gap && pos.size() < need) pos.push_back(std::move(x));
    else if (v <= -gap && neg.size() < need) neg.push_back(std::move(x));
  }

  const auto build = [&](std::size_t from, std::size_t count) {
    Dataset d;
    for (int q = 0; q < config.n_qubits; ++q) d.feature_names.push_back("x" + std::to_string(q));
    for (std::size_t i = from; i < from + count; ++i) {
      d.features.push_back(pos[i]);
      d.labels.push_back(1);
      d.features.push_back(neg[i]);
      d.labels.push_back(-1);
    }
    return d;
  };
  return {build(0, n_train_per_class), build(n_train_per_class, n_test_per_class)};
}

}  // namespace qkernel
