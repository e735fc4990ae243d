#pragma once

// Dense statevector simulation.
//
// Amplitude ordering: basis index k has qubit 0 as its most significant bit,
// so for n qubits qubit q is bit (n - 1 - q) of k.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qkernel/error.hpp"
#include "qkernel/random.hpp"

namespace qkernel {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-10;

class StateVector {
 public:
  /// Takes ownership of explicit amplitudes; they must already be unit norm.
  StateVector(int n_qubits, std::vector<Complex> amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
      throw Error(ErrorKind::dimension,
                  "state of " + std::to_string(n_qubits) + " qubits needs " +
                      std::to_string(std::size_t{1} << n_qubits) + " amplitudes, got " +
                      std::to_string(amplitudes_.size()));
    }
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
      throw Error(ErrorKind::normalization, "amplitudes are not unit norm");
    }
  }

  static StateVector zero(int n_qubits) {
    check_qubit_count(n_qubits);
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    amps[0] = 1.0;
    return StateVector(n_qubits, std::move(amps));
  }

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t k) const { return amplitudes_[k]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
  }

  std::vector<Complex>& mutable_amplitudes() noexcept { return amplitudes_; }

  static void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      throw Error(ErrorKind::capacity, "qubit count " + std::to_string(n_qubits) +
                                           " outside supported range [1, " +
                                           std::to_string(kMaxQubits) + "]");
    }
  }

 private:
  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

inline StateVector zero_state(int n_qubits) { return StateVector::zero(n_qubits); }

// ---------------------------------------------------------------------------
// Gates

enum class GateKind { H, X, Y, Z, RY, RZ, P, CNOT, CZ, CP };

constexpr std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::P: return "P";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::CP: return "CP";
  }
  return "?";
}

constexpr bool is_parameterized(GateKind kind) {
  return kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::P ||
         kind == GateKind::CP;
}

constexpr int gate_arity(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::CZ || kind == GateKind::CP) ? 2 : 1;
}

inline constexpr std::array<GateKind, 10> kAllGateKinds = {
    GateKind::H,  GateKind::X, GateKind::Y,    GateKind::Z,  GateKind::RY,
    GateKind::RZ, GateKind::P, GateKind::CNOT, GateKind::CZ, GateKind::CP};

/// One gate application. For controlled kinds targets[0] is the control and
/// targets[1] the target; single-qubit kinds use targets[0] only.
struct Gate {
  GateKind kind = GateKind::H;
  double theta = 0.0;
  std::array<int, 2> targets = {0, -1};

  int arity() const { return gate_arity(kind); }

  static Gate h(int q) { return {GateKind::H, 0.0, {q, -1}}; }
  static Gate x(int q) { return {GateKind::X, 0.0, {q, -1}}; }
  static Gate y(int q) { return {GateKind::Y, 0.0, {q, -1}}; }
  static Gate z(int q) { return {GateKind::Z, 0.0, {q, -1}}; }
  static Gate ry(double theta, int q) { return {GateKind::RY, theta, {q, -1}}; }
  static Gate rz(double theta, int q) { return {GateKind::RZ, theta, {q, -1}}; }
  static Gate p(double theta, int q) { return {GateKind::P, theta, {q, -1}}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, 0.0, {control, target}}; }
  static Gate cz(int control, int target) { return {GateKind::CZ, 0.0, {control, target}}; }
  static Gate cp(double theta, int control, int target) {
    return {GateKind::CP, theta, {control, target}};
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

using Matrix2 = std::array<Complex, 4>;  // row-major

/// The 2x2 matrix a gate applies to its (last) target qubit. For controlled
/// kinds this is the block applied when the control is |1>.
inline Matrix2 target_block(const Gate& g) {
  using namespace std::complex_literals;
  const double c = std::cos(g.theta / 2.0);
  const double s = std::sin(g.theta / 2.0);
  switch (g.kind) {
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      return {r, r, r, -r};
    }
    case GateKind::X:
    case GateKind::CNOT: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -1i, 1i, 0.0};
    case GateKind::Z:
    case GateKind::CZ: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::RY: return {c, -s, s, c};
    case GateKind::RZ: return {std::polar(1.0, -g.theta / 2.0), 0.0, 0.0, std::polar(1.0, g.theta / 2.0)};
    case GateKind::P:
    case GateKind::CP: return {1.0, 0.0, 0.0, std::polar(1.0, g.theta)};
  }
  return {1.0, 0.0, 0.0, 1.0};
}

/// Full unitary of the gate on its own qubits (2x2 or 4x4, row-major,
/// control as the high bit).
inline std::vector<Complex> gate_matrix(const Gate& g) {
  const Matrix2 b = target_block(g);
  if (g.arity() == 1) return {b.begin(), b.end()};
  std::vector<Complex> m(16, 0.0);
  m[0 * 4 + 0] = 1.0;
  m[1 * 4 + 1] = 1.0;
  m[2 * 4 + 2] = b[0];
  m[2 * 4 + 3] = b[1];
  m[3 * 4 + 2] = b[2];
  m[3 * 4 + 3] = b[3];
  return m;
}

inline void validate_gate(const Gate& g, int n_qubits) {
  const auto in_range = [n_qubits](int q) { return q >= 0 && q < n_qubits; };
  if (!in_range(g.targets[0]) || (g.arity() == 2 && !in_range(g.targets[1]))) {
    throw Error(ErrorKind::index, std::string(gate_name(g.kind)) + " target out of range for " +
                                      std::to_string(n_qubits) + " qubits");
  }
  if (g.arity() == 2 && g.targets[0] == g.targets[1]) {
    throw Error(ErrorKind::index, std::string(gate_name(g.kind)) +
                                      " control and target must be distinct");
  }
}

/// Applies g to state in place by pairing amplitudes that differ only in the
/// target bit; no 2^n x 2^n matrix is formed.
inline void apply_gate_in_place(StateVector& state, const Gate& g) {
  const int n = state.n_qubits();
  validate_gate(g, n);
  const int target = g.arity() == 1 ? g.targets[0] : g.targets[1];
  const std::size_t tmask = std::size_t{1} << (n - 1 - target);
  const std::size_t cmask = g.arity() == 2 ? std::size_t{1} << (n - 1 - g.targets[0]) : 0;
  const Matrix2 m = target_block(g);
  auto& a = state.mutable_amplitudes();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if ((k & tmask) != 0 || (k & cmask) != cmask) continue;
    const std::size_t k1 = k | tmask;
    const Complex a0 = a[k];
    const Complex a1 = a[k1];
    a[k] = m[0] * a0 + m[1] * a1;
    a[k1] = m[2] * a0 + m[3] * a1;
  }
}

inline StateVector apply_gate(StateVector state, const Gate& g) {
  apply_gate_in_place(state, g);
  return state;
}

/// Inverse gate: parameterized kinds negate the angle, the rest are
/// self-inverse.
inline Gate inverse(Gate g) {
  if (is_parameterized(g.kind)) g.theta = -g.theta;
  return g;
}

// ---------------------------------------------------------------------------
// Circuits

class Circuit {
 public:
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) { StateVector::check_qubit_count(n_qubits); }

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  Circuit& add(const Gate& g) {
    validate_gate(g, n_qubits_);
    gates_.push_back(g);
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) {
      throw Error(ErrorKind::dimension, "cannot append circuits of different widths");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

inline StateVector run_circuit(const Circuit& circuit, StateVector state) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw Error(ErrorKind::dimension, "circuit has " + std::to_string(circuit.n_qubits()) +
                                          " qubits but state has " +
                                          std::to_string(state.n_qubits()));
  }
  for (const auto& g : circuit.gates()) apply_gate_in_place(state, g);
  return state;
}

/// U^dagger: reversed gate order with each gate inverted.
inline Circuit inverse(const Circuit& circuit) {
  Circuit out(circuit.n_qubits());
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) out.add(inverse(*it));
  return out;
}

// ---------------------------------------------------------------------------
// Overlaps and measurement

inline Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw Error(ErrorKind::dimension, "inner product of states with different qubit counts");
  }
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

inline std::vector<double> measure_probabilities(const StateVector& state) {
  std::vector<double> p(state.dimension());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(state[k]);
  return p;
}

/// Bitstring of basis index k, qubit 0 first.
inline std::string basis_label(std::size_t k, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((k >> (n_qubits - 1 - q)) & 1U) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

struct ShotCounts {
  int n_qubits = 0;
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t count(const std::string& bitstring) const {
    const auto it = counts.find(bitstring);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Draws `shots` terminal measurements. Each shot takes one uniform01 draw
/// from an mt19937_64 seeded with `seed` and inverts the cumulative
/// distribution, so counts are bit-identical across platforms.
inline ShotCounts sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorKind::argument, "shots must be at least 1");
  const auto probs = measure_probabilities(state);
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    cdf[k] = acc;
    if (probs[k] > 0.0) last_nonzero = k;
  }
  // Scale draws by the accumulated total so rounding in the norm cannot
  // leave a gap at the top of the distribution.
  const double total = acc;

  Rng rng(seed);
  std::vector<std::uint64_t> tally(probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    tally[std::min(k, last_nonzero)]++;
  }

  ShotCounts out;
  out.n_qubits = state.n_qubits();
  out.shots = shots;
  for (std::size_t k = 0; k < tally.size(); ++k) {
    if (tally[k] > 0) out.counts.emplace(basis_label(k, state.n_qubits()), tally[k]);
  }
  return out;
}

/// 2x2 reduced density matrix of one qubit (row-major), tracing out the rest.
inline Matrix2 reduced_density_matrix(const StateVector& state, int qubit) {
  const int n = state.n_qubits();
  if (qubit < 0 || qubit >= n) throw Error(ErrorKind::index, "qubit out of range");
  const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
  Matrix2 rho{};
  for (std::size_t k = 0; k < state.dimension(); ++k) {
    if (k & mask) continue;
    const Complex a0 = state[k];
    const Complex a1 = state[k | mask];
    rho[0] += a0 * std::conj(a0);
    rho[1] += a0 * std::conj(a1);
    rho[2] += a1 * std::conj(a0);
    rho[3] += a1 * std::conj(a1);
  }
  return rho;
}

/// <psi| rho |psi> for a single-qubit pure state psi = (alpha, beta).
inline double single_qubit_fidelity(const Matrix2& rho, Complex alpha, Complex beta) {
  const Complex v = std::conj(alpha) * (rho[0] * alpha + rho[1] * beta) +
                    std::conj(beta) * (rho[2] * alpha + rho[3] * beta);
  return v.real();
}

// ---------------------------------------------------------------------------
// Teleportation

/// Three-qubit teleportation of alpha|0> + beta|1> from qubit 0 to qubit 2.
/// Measurement is deferred: the classically controlled X and Z corrections
/// become CNOT(1 -> 2) and CZ(0 -> 2).
inline Circuit build_teleportation(Complex alpha, Complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::normalization, "|alpha|^2 + |beta|^2 must equal 1");
  }
  Circuit c(3);
  // RY fixes the magnitudes, P the relative phase. The global phase arg(alpha)
  // is unobservable and dropped.
  const double theta = 2.0 * std::atan2(std::abs(beta), std::abs(alpha));
  const double phase = std::arg(beta) - std::arg(alpha);
  c.add(Gate::ry(theta, 0));
  if (std::abs(beta) > 0.0 && phase != 0.0) c.add(Gate::p(phase, 0));
  c.add(Gate::h(1)).add(Gate::cnot(1, 2));
  c.add(Gate::cnot(0, 1)).add(Gate::h(0));
  c.add(Gate::cnot(1, 2)).add(Gate::cz(0, 2));
  return c;
}

// ---------------------------------------------------------------------------
// Circuit text format
//
//   # comment
//   qubits 3
//   H 0
//   CP 1.5707963 0 1
//   CNOT 0 1
//
// Parameterized gates list the angle (radians) before the qubit indices. The
// `qubits` line is optional; without it the width is the largest index + 1.

inline Circuit parse_circuit(std::string_view text) {
  struct Parsed {
    Gate gate;
    int line;
  };
  std::vector<Parsed> gates;
  int declared = 0;
  int widest = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    const auto fail = [&](const std::string& why) {
      return Error(ErrorKind::parse, "circuit line " + std::to_string(line_no) + ": " + why);
    };
    if (op == "qubits") {
      if (!(ls >> declared)) throw fail("expected qubit count");
      continue;
    }
    std::transform(op.begin(), op.end(), op.begin(), [](unsigned char ch) { return std::toupper(ch); });
    const auto it = std::find_if(kAllGateKinds.begin(), kAllGateKinds.end(),
                                 [&](GateKind k) { return gate_name(k) == op; });
    if (it == kAllGateKinds.end()) throw fail("unknown gate '" + op + "'");
    Gate g{*it, 0.0, {0, -1}};
    if (is_parameterized(g.kind) && !(ls >> g.theta)) throw fail("expected angle");
    for (int t = 0; t < g.arity(); ++t) {
      if (!(ls >> g.targets[static_cast<std::size_t>(t)])) throw fail("expected qubit index");
      widest = std::max(widest, g.targets[static_cast<std::size_t>(t)] + 1);
    }
    std::string extra;
    if (ls >> extra) throw fail("unexpected token '" + extra + "'");
    gates.push_back({g, line_no});
  }
  const int n = declared > 0 ? declared : std::max(widest, 1);
  Circuit c(n);
  for (const auto& p : gates) c.add(p.gate);
  return c;
}

inline std::string format_circuit(const Circuit& c) {
  std::ostringstream out;
  out.precision(17);
  out << "qubits " << c.n_qubits() << '\n';
  for (const auto& g : c.gates()) {
    out << gate_name(g.kind);
    if (is_parameterized(g.kind)) out << ' ' << g.theta;
    out << ' ' << g.targets[0];
    if (g.arity() == 2) out << ' ' << g.targets[1];
    out << '\n';
  }
  return out.str();
}

}  // namespace qkernel
