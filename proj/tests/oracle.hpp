#pragma once

// Test-only reference implementations. Gate matrices are written out by hand
// and lifted to n qubits with explicit Kronecker products, independent of the
// index arithmetic in the simulator.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qkernel/random.hpp"
#include "qkernel/statevector.hpp"

namespace oracle {

using C = std::complex<double>;

struct Dense {
  std::size_t n = 0;
  std::vector<C> a;  // row-major n x n

  explicit Dense(std::size_t dim = 0) : n(dim), a(dim * dim, 0.0) {}
  C& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  C operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

  static Dense identity(std::size_t dim) {
    Dense m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Dense mat2(C a, C b, C c, C d) {
  Dense m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline Dense kron(const Dense& x, const Dense& y) {
  Dense m(x.n * y.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      for (std::size_t k = 0; k < y.n; ++k)
        for (std::size_t l = 0; l < y.n; ++l) m(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
  return m;
}

inline Dense operator*(const Dense& x, const Dense& y) {
  Dense m(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) m(i, j) += x(i, k) * y(k, j);
  return m;
}

inline Dense operator+(Dense x, const Dense& y) {
  for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
  return x;
}

inline std::vector<C> apply(const Dense& m, const std::vector<C>& v) {
  std::vector<C> out(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline Dense single(qkernel::GateKind kind, double t) {
  using namespace std::complex_literals;
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case qkernel::GateKind::H: return mat2(r, r, r, -r);
    case qkernel::GateKind::X:
    case qkernel::GateKind::CNOT: return mat2(0, 1, 1, 0);
    case qkernel::GateKind::Y: return mat2(0, -1i, 1i, 0);
    case qkernel::GateKind::Z:
    case qkernel::GateKind::CZ: return mat2(1, 0, 0, -1);
    case qkernel::GateKind::RY: return mat2(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2));
    case qkernel::GateKind::RZ: return mat2(std::exp(-0.5i * t), 0, 0, std::exp(0.5i * t));
    case qkernel::GateKind::P:
    case qkernel::GateKind::CP: return mat2(1, 0, 0, std::exp(1i * t));
  }
  return Dense::identity(2);
}

/// Kronecker product over all n qubits (qubit 0 leftmost) of the per-qubit
/// factors, where factors[q] defaults to I.
inline Dense kron_all(int n, const std::vector<std::pair<int, Dense>>& factors) {
  Dense m = Dense::identity(1);
  for (int q = 0; q < n; ++q) {
    Dense f = Dense::identity(2);
    for (const auto& [qq, d] : factors)
      if (qq == q) f = d;
    m = kron(m, f);
  }
  return m;
}

/// Full 2^n x 2^n unitary of a gate. Controlled gates are
/// |0><0|_c (x) I + |1><1|_c (x) U_t.
inline Dense full(const qkernel::Gate& g, int n) {
  const Dense u = single(g.kind, g.theta);
  if (g.arity() == 1) return kron_all(n, {{g.targets[0], u}});
  const Dense p0 = mat2(1, 0, 0, 0);
  const Dense p1 = mat2(0, 0, 0, 1);
  return kron_all(n, {{g.targets[0], p0}}) + kron_all(n, {{g.targets[0], p1}, {g.targets[1], u}});
}

inline Dense full(const qkernel::Circuit& c) {
  Dense m = Dense::identity(std::size_t{1} << c.n_qubits());
  for (const auto& g : c.gates()) m = full(g, c.n_qubits()) * m;
  return m;
}

inline qkernel::StateVector random_state(int n, qkernel::Rng& rng) {
  std::vector<C> amps(std::size_t{1} << n);
  double s = 0.0;
  for (auto& a : amps) {
    a = C(qkernel::normal(rng), qkernel::normal(rng));
    s += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(s);
  return qkernel::StateVector(n, std::move(amps));
}

inline qkernel::Gate random_gate(int n, qkernel::Rng& rng) {
  const auto kind = qkernel::kAllGateKinds[qkernel::uniform_index(rng, qkernel::kAllGateKinds.size())];
  qkernel::Gate g{kind, qkernel::uniform(rng, -2 * std::numbers::pi, 2 * std::numbers::pi), {0, -1}};
  g.targets[0] = static_cast<int>(qkernel::uniform_index(rng, static_cast<std::uint64_t>(n)));
  if (g.arity() == 2) {
    if (n < 2) return qkernel::Gate::h(0);
    int t = static_cast<int>(qkernel::uniform_index(rng, static_cast<std::uint64_t>(n - 1)));
    if (t >= g.targets[0]) ++t;
    g.targets[1] = t;
  }
  if (!qkernel::is_parameterized(kind)) g.theta = 0.0;
  return g;
}

}  // namespace oracle
