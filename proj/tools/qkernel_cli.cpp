// qkernel: command-line front end for the quantum-kernel SVM toolkit.
//
//   qkernel prepare    raw CSV -> standardized/PCA/rescaled train + test CSVs
//   qkernel adhoc-gen  parity-labelled synthetic train + test CSVs
//   qkernel train      prepared CSV -> model JSON
//   qkernel predict    model JSON + CSV -> predictions CSV
//   qkernel compare    quantum vs classical kernels on one split
//   qkernel kernel     Gram matrix CSV
//   qkernel plot       decision-boundary SVG for 2-feature data
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 degenerate data,
// 4 internal invariant violation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qkernel/qkernel.hpp"

namespace {

using namespace qkernel;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInternal = 4;

constexpr std::uint64_t kDefaultSeed = 42;

/// Raised when a post-condition the library guarantees does not hold.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::degenerate_data:
    case ErrorKind::degenerate_feature: return kExitDegenerate;
    default: return kExitInvalid;
  }
}

// ---------------------------------------------------------------------------
// Options

struct FeatureMapOptions {
  int qubits = 0;  // 0: take the width of the data
  int depth = 2;
  std::string entanglement = "linear";
  std::string pair_scale = "product";

  FeatureMapConfig resolve(std::size_t data_width) const {
    FeatureMapConfig c;
    c.n_qubits = qubits > 0 ? qubits : static_cast<int>(data_width);
    if (qubits > 0 && static_cast<std::size_t>(qubits) != data_width) {
      throw Error(ErrorKind::dimension, "--qubits " + std::to_string(qubits) + " does not match the " +
                                            std::to_string(data_width) + " feature columns of the data");
    }
    c.depth = depth;
    c.entanglement = parse_entanglement(entanglement);
    c.pair_scale = parse_pair_scale(pair_scale);
    c.validate();
    return c;
  }
};

struct KernelOptions {
  std::string kernel = "quantum";
  std::string mode = "exact";
  std::uint64_t shots = 1024;
  int degree = 3;
  double coef0 = 1.0;
  double gamma = 1.0;

  KernelEstimator estimator(const FeatureMapConfig& fm, std::uint64_t seed) const {
    KernelEstimator est{parse_kernel_mode(mode), shots, seed, fm};
    est.validate();
    return est;
  }

  KernelSpec spec(KernelKind kind, const FeatureMapConfig& fm, std::uint64_t seed) const {
    KernelSpec s;
    switch (kind) {
      case KernelKind::linear: s = KernelSpec::linear(); break;
      case KernelKind::polynomial: s = KernelSpec::polynomial(degree, coef0); break;
      case KernelKind::rbf: s = KernelSpec::rbf(gamma); break;
      case KernelKind::quantum: s = KernelSpec::quantum_kernel(estimator(fm, seed)); break;
      case KernelKind::precomputed:
        throw Error(ErrorKind::configuration, "the CLI trains from points; 'precomputed' is not available");
    }
    s.validate();
    return s;
  }
};

struct TrainOptions {
  double c = 1.0;
  double tol = 1e-3;
  int max_passes = 10;

  TrainConfig config(std::uint64_t seed) const {
    TrainConfig cfg{.C = c, .tol = tol, .max_passes = max_passes, .seed = seed};
    cfg.validate();
    return cfg;
  }
};

struct Options {
  std::string data;
  std::string train;
  std::string test;
  std::string model;
  std::string preprocess;
  std::string out;
  std::string label_col = "label";
  std::string positive_label = "1";
  double test_fraction = 0.25;
  std::uint64_t seed = kDefaultSeed;
  double gap = 0.3;
  std::size_t train_per_class = 10;
  std::size_t test_per_class = 5;
  bool timings = false;
  FeatureMapOptions fm;
  KernelOptions kernel;
  TrainOptions train_opts;
};

void add_config(CLI::App* cmd) {
  // Consumed before parsing; see inject_config.
  static std::string path;
  cmd->add_option("--config", path, "JSON file mirroring these flags; explicit flags win");
}

void add_feature_map(CLI::App* cmd, FeatureMapOptions& o) {
  cmd->add_option("--qubits", o.qubits, "Qubits (= feature columns); default: data width")->check(CLI::Range(1, kMaxQubits));
  cmd->add_option("--depth", o.depth, "Feature-map repetitions")->capture_default_str();
  cmd->add_option("--entanglement", o.entanglement, "linear | full")->capture_default_str();
  cmd->add_option("--pair-scale", o.pair_scale, "product: (pi-x_i)(pi-x_j) | plain: x_i*x_j")->capture_default_str();
}

void add_quantum_mode(CLI::App* cmd, KernelOptions& o) {
  cmd->add_option("--mode", o.mode, "Quantum kernel estimation: exact | sampled")->capture_default_str();
  cmd->add_option("--shots", o.shots, "Shots per kernel entry in sampled mode")->capture_default_str();
}

void add_classical(CLI::App* cmd, KernelOptions& o) {
  cmd->add_option("--degree", o.degree, "Polynomial kernel degree")->capture_default_str();
  cmd->add_option("--coef0", o.coef0, "Polynomial kernel offset")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "RBF kernel width")->capture_default_str();
}

void add_solver(CLI::App* cmd, TrainOptions& o) {
  cmd->add_option("--c", o.c, "Box constraint C")->capture_default_str();
  cmd->add_option("--tol", o.tol, "KKT tolerance")->capture_default_str();
  cmd->add_option("--max-passes", o.max_passes, "Quiet sweeps before SMO stops")->capture_default_str();
}

void add_seed(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}

// ---------------------------------------------------------------------------
// Helpers

void ensure_parent_dir(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_text(const std::string& path, const std::string& text) {
  ensure_parent_dir(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::input, "cannot write '" + path + "'");
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::input, path + ": " + e.what());
  }
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorKind::argument, std::string(flag) + " is required");
}

Dataset load_prepared(const std::string& path, const std::string& label_col) {
  require(path, "--data");
  auto d = load_prepared_csv(path, label_col);
  if (d.rows() == 0) throw Error(ErrorKind::input, path + ": no data rows");
  return d;
}

void check_equality_constraint(const SVMModel& m) {
  double eq = 0.0;
  for (std::size_t i = 0; i < m.alphas.size(); ++i) eq += m.alphas[i] * m.labels[i];
  if (std::abs(eq) > 1e-8) {
    throw InvariantViolation("dual equality constraint violated: sum alpha_i y_i = " + std::to_string(eq));
  }
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

struct Trained {
  SVMModel model;
  KernelMatrix gram;
  double seconds = 0.0;
};

Trained fit(const KernelSpec& spec, const Dataset& train, const TrainConfig& cfg) {
  if (!train.labelled()) throw Error(ErrorKind::input, "training data has no label column");
  const auto start = std::chrono::steady_clock::now();
  Trained t{{}, kernel_matrix(spec, train.features), 0.0};
  t.model = train_smo(t.gram, train.labels, cfg);
  t.model.kernel = spec;
  t.model.train_points = train.features;
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check_equality_constraint(t.model);
  return t;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_prepare(const Options& o) {
  require(o.data, "--data");
  require(o.out, "--out");
  const auto raw = load_csv(o.data, o.label_col, o.positive_label);
  const auto qubits = static_cast<std::size_t>(o.fm.qubits > 0 ? o.fm.qubits : 2);
  auto [train, test] = train_test_split(raw, o.test_fraction, o.seed);

  PreprocessModel pre;
  pre.standardizer = fit_standardize(train);
  const auto std_train = apply_standardize(*pre.standardizer, train);
  pre.pca = fit_pca(std_train, qubits);
  pre.rescaler = fit_rescale(apply_pca(*pre.pca, std_train));

  const auto train_out = apply_preprocess(pre, train);
  const auto test_out = apply_preprocess(pre, test);

  std::filesystem::create_directories(o.out);
  const auto dir = std::filesystem::path(o.out);
  write_csv((dir / "train.csv").string(), train_out.data);
  write_csv((dir / "test.csv").string(), test_out.data);
  json pj = pre;
  pj["source"] = {{"label_column", o.label_col}, {"positive_label", o.positive_label}, {"features", raw.feature_names}};
  write_text((dir / "preprocess.json").string(), pj.dump(2) + "\n");

  std::cout << "split   rows  +1   -1\n";
  std::cout << "train " << std::setw(6) << train.rows() << std::setw(4) << train.count(1) << std::setw(5)
            << train.count(-1) << "\n";
  std::cout << "test  " << std::setw(6) << test.rows() << std::setw(4) << test.count(1) << std::setw(5)
            << test.count(-1) << "\n";
  std::cout << "features " << raw.cols() << " -> " << qubits << " principal components\n";
  std::cout << "retained variance fraction " << fixed(pre.pca->retained_variance_fraction(), 6) << "\n";
  std::cout << "test values clamped to range " << test_out.clamped << "\n";
}

void cmd_adhoc(const Options& o) {
  require(o.out, "--out");
  FeatureMapOptions fm = o.fm;
  if (fm.qubits == 0) fm.qubits = 2;
  const auto cfg = fm.resolve(static_cast<std::size_t>(fm.qubits));
  const auto [train, test] = generate_adhoc(o.train_per_class, o.test_per_class, o.gap, cfg, o.seed);
  std::filesystem::create_directories(o.out);
  const auto dir = std::filesystem::path(o.out);
  write_csv((dir / "train.csv").string(), train);
  write_csv((dir / "test.csv").string(), test);
  std::cout << "generated " << train.rows() << " train and " << test.rows() << " test points (" << cfg.n_qubits
            << " qubits, gap " << o.gap << ")\n";
}

void cmd_train(const Options& o) {
  require(o.out, "--out");
  const auto train = load_prepared(o.data, o.label_col);
  const auto fm = o.fm.resolve(train.cols());
  const auto spec = o.kernel.spec(parse_kernel_kind(o.kernel.kernel), fm, o.seed);
  const auto t = fit(spec, train, o.train_opts.config(o.seed));

  json j = model_to_json(t.model);
  if (!o.preprocess.empty()) j["preprocess"] = read_json(o.preprocess);
  write_text(o.out, j.dump(2) + "\n");

  double eq = 0.0;
  for (std::size_t i = 0; i < t.model.alphas.size(); ++i) eq += t.model.alphas[i] * t.model.labels[i];
  std::cout << "kernel " << to_string(spec.kind) << "\n";
  std::cout << "support vectors " << t.model.support_indices.size() << " / " << train.rows() << "\n";
  std::cout << "dual objective " << fixed(dual_objective(t.gram, train.labels, t.model.alphas), 8) << "\n";
  std::cout << "sum alpha_i y_i " << std::scientific << std::setprecision(3) << eq << std::defaultfloat << "\n";
}

void cmd_predict(const Options& o) {
  require(o.model, "--model");
  require(o.out, "--out");
  const auto model = model_from_json(read_json(o.model));
  const auto data = load_prepared(o.data, o.label_col);
  if (!model.train_points || model.train_points->empty()) {
    throw Error(ErrorKind::configuration, "model has no stored training points");
  }
  const auto width = model.train_points->front().size();
  if (data.cols() != width) {
    throw Error(ErrorKind::dimension, "model expects " + std::to_string(width) + " features, data has " +
                                          std::to_string(data.cols()));
  }
  const auto f = decision_values(model, data.features);
  std::ostringstream csv;
  csv << "index,decision_value,label\n";
  std::vector<int> predicted;
  for (std::size_t i = 0; i < f.size(); ++i) {
    predicted.push_back(label_of(f[i]));
    csv << i << ',' << format_double(f[i]) << ',' << predicted.back() << '\n';
  }
  write_text(o.out, csv.str());
  std::cout << "predicted " << f.size() << " points\n";
  if (data.labelled()) std::cout << "accuracy " << fixed(accuracy(predicted, data.labels), 4) << "\n";
}

void cmd_compare(const Options& o) {
  require(o.train, "--train");
  require(o.test, "--test");
  const auto train = load_prepared(o.train, o.label_col);
  const auto test = load_prepared(o.test, o.label_col);
  if (!test.labelled()) throw Error(ErrorKind::input, "test data needs a label column for comparison");
  if (test.cols() != train.cols()) throw Error(ErrorKind::dimension, "train and test widths differ");
  const auto fm = o.fm.resolve(train.cols());
  const auto cfg = o.train_opts.config(o.seed);

  struct Row {
    std::string name;
    KernelSpec spec;
    double train_acc = 0.0, test_acc = 0.0, objective = 0.0, seconds = 0.0;
    std::size_t svs = 0;
  };
  std::vector<Row> rows;
  for (const auto kind : {KernelKind::quantum, KernelKind::linear, KernelKind::polynomial, KernelKind::rbf}) {
    Row r{std::string(to_string(kind)), o.kernel.spec(kind, fm, o.seed)};
    const auto t = fit(r.spec, train, cfg);
    r.seconds = t.seconds;
    r.svs = t.model.support_indices.size();
    r.objective = dual_objective(t.gram, train.labels, t.model.alphas);
    r.train_acc = accuracy(predict(t.model, train.features), train.labels);
    r.test_acc = accuracy(predict(t.model, test.features), test.labels);
    rows.push_back(r);
  }
  double best = 0.0;
  for (const auto& r : rows) best = std::max(best, r.test_acc);

  json report;
  report["format_version"] = 1;
  report["train_size"] = train.rows();
  report["test_size"] = test.rows();
  report["seed"] = o.seed;
  report["train_config"] = {{"C", cfg.C}, {"tol", cfg.tol}, {"max_passes", cfg.max_passes}};
  report["kernels"] = json::array();
  for (const auto& r : rows) {
    json k{{"name", r.name},
           {"kernel", r.spec},
           {"train_accuracy", r.train_acc},
           {"test_accuracy", r.test_acc},
           {"support_vectors", r.svs},
           {"dual_objective", r.objective},
           {"best", r.test_acc == best}};
    if (o.timings) k["train_seconds"] = r.seconds;
    report["kernels"].push_back(k);
  }
  if (!o.out.empty()) write_text(o.out, report.dump(2) + "\n");

  std::cout << "kernel       test_acc  train_acc  SVs  train_ms\n";
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(12) << r.name << std::right << std::setw(9) << fixed(r.test_acc, 4)
              << std::setw(11) << fixed(r.train_acc, 4) << std::setw(5) << r.svs << std::setw(10)
              << fixed(r.seconds * 1e3, 1) << (r.test_acc == best ? "  *best" : "") << "\n";
  }
}

void cmd_kernel(const Options& o) {
  require(o.out, "--out");
  const auto data = load_prepared(o.data, o.label_col);
  const auto fm = o.fm.resolve(data.cols());
  const auto K = gram_matrix(data.features, o.kernel.estimator(fm, o.seed));
  std::ostringstream csv;
  write_gram_csv(csv, K);
  write_text(o.out, csv.str());
  std::cout << "gram " << K.size() << "x" << K.size() << " (" << to_string(K.mode) << ")\n";
}

constexpr std::size_t kPlotResolution = 100;

void cmd_plot(const Options& o) {
  require(o.model, "--model");
  require(o.out, "--out");
  const auto data = load_prepared(o.data, o.label_col);
  if (data.cols() != 2) {
    throw Error(ErrorKind::dimension, "plot needs 2-feature data (got " + std::to_string(data.cols()) +
                                          "); prepare the data with --qubits 2");
  }
  if (!data.labelled()) throw Error(ErrorKind::input, "plot needs a label column to colour points");
  const auto model = model_from_json(read_json(o.model));
  if (!model.train_points || model.train_points->empty() || model.train_points->front().size() != 2) {
    throw Error(ErrorKind::dimension, "plot needs a model trained on 2 features");
  }
  Points extent = data.features;
  extent.insert(extent.end(), model.train_points->begin(), model.train_points->end());
  std::size_t evaluations = 0;
  const auto grid = evaluate_grid(bounds_of(extent), kPlotResolution, [&](const Points& pts) {
    evaluations += pts.size();
    return decision_values(model, pts);
  });
  const auto predicted = predict(model, data.features);
  const std::string title = "qkernel decision boundary (" + std::string(to_string(model.kernel.kind)) + " kernel)";
  write_text(o.out, render_decision_svg(grid, data.features, data.labels, predicted, title));
  std::cout << "grid evaluations " << evaluations << "\n";
  std::cout << "accuracy " << fixed(accuracy(predicted, data.labels), 4) << "\n";
}

// ---------------------------------------------------------------------------
// Config file: {"qubits": 2, "test-fraction": 0.2, ...}. Keys are flag names
// without the leading dashes. Values are injected ahead of the command-line
// flags, which take precedence because every option keeps its last value.

std::vector<std::string> inject_config(const std::vector<std::string>& args, CLI::App& app) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  CLI::App* cmd = nullptr;
  try {
    cmd = app.get_subcommand(args[0]);
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  const json cfg = read_json(path);
  if (!cfg.is_object()) throw Error(ErrorKind::input, path + ": config must be a JSON object");
  std::vector<std::string> out{args[0]};
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") continue;
    const auto* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) continue;  // keys for other commands
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back("--" + key);
      continue;
    }
    out.push_back("--" + key);
    out.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-kernel binary classification toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Options o;
  std::string command;

  auto* prepare = app.add_subcommand("prepare", "Split, standardize, PCA to --qubits and rescale a raw CSV");
  prepare->add_option("--data", o.data, "Raw CSV with a header row");
  prepare->add_option("--label-col", o.label_col, "Label column name or index")->capture_default_str();
  prepare->add_option("--positive-label", o.positive_label, "Label value mapped to +1")->capture_default_str();
  prepare->add_option("--qubits", o.fm.qubits, "Principal components to keep (default 2)")->check(CLI::Range(1, kMaxQubits));
  prepare->add_option("--test-fraction", o.test_fraction, "Stratified test share")->capture_default_str();
  prepare->add_option("--out", o.out, "Output directory (train.csv, test.csv, preprocess.json)");
  add_seed(prepare, o);
  add_config(prepare);

  auto* adhoc = app.add_subcommand("adhoc-gen", "Generate parity-labelled data separable by the feature map");
  add_feature_map(adhoc, o.fm);
  adhoc->add_option("--gap", o.gap, "Minimum |<O>| margin")->capture_default_str();
  adhoc->add_option("--train-per-class", o.train_per_class)->capture_default_str();
  adhoc->add_option("--test-per-class", o.test_per_class)->capture_default_str();
  adhoc->add_option("--out", o.out, "Output directory (train.csv, test.csv)");
  add_seed(adhoc, o);
  add_config(adhoc);

  auto* train = app.add_subcommand("train", "Train an SVM on a prepared CSV");
  train->add_option("--data", o.data, "Prepared training CSV");
  train->add_option("--label-col", o.label_col)->capture_default_str();
  train->add_option("--kernel", o.kernel.kernel, "quantum | linear | polynomial | rbf")->capture_default_str();
  train->add_option("--preprocess", o.preprocess, "preprocess.json to embed in the model");
  train->add_option("--out", o.out, "Model JSON path");
  add_feature_map(train, o.fm);
  add_quantum_mode(train, o.kernel);
  add_classical(train, o.kernel);
  add_solver(train, o.train_opts);
  add_seed(train, o);
  add_config(train);

  auto* predict_cmd = app.add_subcommand("predict", "Predict labels with a trained model");
  predict_cmd->add_option("--model", o.model, "Model JSON");
  predict_cmd->add_option("--data", o.data, "Prepared CSV; labels optional");
  predict_cmd->add_option("--label-col", o.label_col)->capture_default_str();
  predict_cmd->add_option("--out", o.out, "Predictions CSV (index,decision_value,label)");
  add_config(predict_cmd);

  auto* compare = app.add_subcommand("compare", "Compare the quantum kernel with linear, polynomial and rbf");
  compare->add_option("--train", o.train, "Prepared training CSV");
  compare->add_option("--test", o.test, "Prepared test CSV");
  compare->add_option("--label-col", o.label_col)->capture_default_str();
  compare->add_option("--out", o.out, "Report JSON path");
  compare->add_flag("--timings", o.timings, "Include wall-clock training time in the report JSON");
  add_feature_map(compare, o.fm);
  add_quantum_mode(compare, o.kernel);
  add_classical(compare, o.kernel);
  add_solver(compare, o.train_opts);
  add_seed(compare, o);
  add_config(compare);

  auto* kernel = app.add_subcommand("kernel", "Write the quantum Gram matrix of a prepared CSV");
  kernel->add_option("--data", o.data, "Prepared CSV");
  kernel->add_option("--label-col", o.label_col)->capture_default_str();
  kernel->add_option("--out", o.out, "Gram CSV path");
  add_feature_map(kernel, o.fm);
  add_quantum_mode(kernel, o.kernel);
  add_seed(kernel, o);
  add_config(kernel);

  auto* plot = app.add_subcommand("plot", "Render test points and the decision boundary as SVG");
  plot->add_option("--data", o.data, "Prepared 2-feature CSV with labels");
  plot->add_option("--label-col", o.label_col)->capture_default_str();
  plot->add_option("--model", o.model, "Model JSON trained on 2 features");
  plot->add_option("--out", o.out, "SVG path");
  add_config(plot);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = inject_config(args, app);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);

    if (*prepare) cmd_prepare(o);
    else if (*adhoc) cmd_adhoc(o);
    else if (*train) cmd_train(o);
    else if (*predict_cmd) cmd_predict(o);
    else if (*compare) cmd_compare(o);
    else if (*kernel) cmd_kernel(o);
    else if (*plot) cmd_plot(o);
    return kExitOk;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "qkernel: error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const InvariantViolation& e) {
    std::cerr << "qkernel: error[invariant]: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "qkernel: error[internal]: " << e.what() << "\n";
    return kExitInternal;
  }
}
