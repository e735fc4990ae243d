#include "qkernel/statevector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"

using namespace qkernel;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void expect_amplitudes(const StateVector& s, const std::vector<Complex>& expected, double tol = 1e-12) {
  ASSERT_EQ(s.dimension(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_NEAR(s[k].real(), expected[k].real(), tol) << "k=" << k;
    EXPECT_NEAR(s[k].imag(), expected[k].imag(), tol) << "k=" << k;
  }
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected qkernel::Error";
  return ErrorKind::argument;
}

}  // namespace

TEST(StateVector, ZeroState) {
  expect_amplitudes(zero_state(1), {1.0, 0.0});
  expect_amplitudes(zero_state(2), {1.0, 0.0, 0.0, 0.0});
  EXPECT_EQ(zero_state(24).dimension(), std::size_t{1} << 24);
  EXPECT_EQ(kind_of([] { zero_state(25); }), ErrorKind::capacity);
  EXPECT_EQ(kind_of([] { zero_state(0); }), ErrorKind::capacity);
}

TEST(StateVector, RejectsBadAmplitudes) {
  EXPECT_EQ(kind_of([] { StateVector(1, {1.0, 0.0, 0.0}); }), ErrorKind::dimension);
  EXPECT_EQ(kind_of([] { StateVector(1, {1.0, 1.0}); }), ErrorKind::normalization);
}

TEST(ApplyGate, Examples) {
  expect_amplitudes(apply_gate(zero_state(1), Gate::h(0)), {kInvSqrt2, kInvSqrt2});
  expect_amplitudes(apply_gate(zero_state(1), Gate::x(0)), {0.0, 1.0});
  // |10> has index 2 with qubit 0 as the most significant bit.
  const auto s10 = apply_gate(zero_state(2), Gate::x(0));
  expect_amplitudes(s10, {0.0, 0.0, 1.0, 0.0});
  expect_amplitudes(apply_gate(s10, Gate::cnot(0, 1)), {0.0, 0.0, 0.0, 1.0});
}

TEST(ApplyGate, InvalidTargets) {
  EXPECT_EQ(kind_of([] { apply_gate(zero_state(2), Gate::h(2)); }), ErrorKind::index);
  EXPECT_EQ(kind_of([] { apply_gate(zero_state(2), Gate::cnot(1, 1)); }), ErrorKind::index);
  EXPECT_EQ(kind_of([] { apply_gate(zero_state(2), Gate::h(-1)); }), ErrorKind::index);
  EXPECT_EQ(kind_of([] { Circuit(2).add(Gate::cz(0, 3)); }), ErrorKind::index);
}

TEST(ApplyGate, UnitarityOfEveryKind) {
  Rng rng(11);
  for (const auto kind : kAllGateKinds) {
    const int trials = is_parameterized(kind) ? 100 : 1;
    for (int t = 0; t < trials; ++t) {
      Gate g{kind, uniform(rng, -10.0, 10.0), {0, gate_arity(kind) == 2 ? 1 : -1}};
      const auto u = gate_matrix(g);
      const std::size_t d = g.arity() == 2 ? 4 : 2;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          Complex s = 0.0;
          for (std::size_t k = 0; k < d; ++k) s += std::conj(u[k * d + i]) * u[k * d + j];
          EXPECT_NEAR(std::abs(s - (i == j ? 1.0 : 0.0)), 0.0, 1e-12) << gate_name(kind);
        }
      }
    }
  }
}

TEST(ApplyGate, MatchesKroneckerOracle) {
  Rng rng(2024);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto state = oracle::random_state(n, rng);
      const auto g = oracle::random_gate(n, rng);
      const auto got = apply_gate(state, g);
      const auto want = oracle::apply(oracle::full(g, n), state.amplitudes());
      for (std::size_t k = 0; k < want.size(); ++k) EXPECT_LT(std::abs(got[k] - want[k]), 1e-12);
    }
  }
}

TEST(RunCircuit, IdentityAndSelfInverse) {
  Rng rng(3);
  const auto s = oracle::random_state(3, rng);
  expect_amplitudes(run_circuit(Circuit(3), s), s.amplitudes());
  Circuit hh(1);
  hh.add(Gate::h(0)).add(Gate::h(0));
  expect_amplitudes(run_circuit(hh, zero_state(1)), {1.0, 0.0});
  EXPECT_EQ(kind_of([] { run_circuit(Circuit(2), zero_state(3)); }), ErrorKind::dimension);
}

TEST(RunCircuit, NormPreservedOnRandomCircuits) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 6));
    const int depth = static_cast<int>(uniform_index(rng, 21));
    Circuit c(n);
    for (int d = 0; d < depth; ++d) c.add(oracle::random_gate(n, rng));
    const auto out = run_circuit(c, oracle::random_state(n, rng));
    EXPECT_LT(std::abs(out.norm_squared() - 1.0), 1e-10);
  }
}

TEST(RunCircuit, InverseUndoesCircuit) {
  Rng rng(5);
  Circuit c(3);
  for (int d = 0; d < 20; ++d) c.add(oracle::random_gate(3, rng));
  auto round_trip = c;
  round_trip.append(inverse(c));
  const auto s = oracle::random_state(3, rng);
  expect_amplitudes(run_circuit(round_trip, s), s.amplitudes(), 1e-12);
}

TEST(InnerProduct, Examples) {
  Rng rng(8);
  const auto psi = oracle::random_state(3, rng);
  EXPECT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0.0, 1e-12);
  const auto zero = zero_state(1);
  const auto one = apply_gate(zero, Gate::x(0));
  EXPECT_NEAR(std::abs(inner_product(zero, one)), 0.0, 1e-15);
  EXPECT_NEAR(inner_product(zero, apply_gate(zero, Gate::h(0))).real(), kInvSqrt2, 1e-15);
  EXPECT_EQ(kind_of([] { inner_product(zero_state(1), zero_state(2)); }), ErrorKind::dimension);
}

TEST(MeasureProbabilities, Examples) {
  auto p = measure_probabilities(zero_state(1));
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
  p = measure_probabilities(apply_gate(zero_state(1), Gate::h(0)));
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
  p = measure_probabilities(StateVector(1, {0.6, 0.8}));
  EXPECT_NEAR(p[0], 0.36, 1e-15);
  EXPECT_NEAR(p[1], 0.64, 1e-15);
}

TEST(Sample, DeterministicOutcome) {
  const auto counts = sample(zero_state(1), 100, 12345);
  EXPECT_EQ(counts.counts.size(), 1U);
  EXPECT_EQ(counts.count("0"), 100U);
}

TEST(Sample, BinomialBoundAndDeterminism) {
  const auto plus = apply_gate(zero_state(1), Gate::h(0));
  const auto a = sample(plus, 10000, 7);
  const auto b = sample(plus, 10000, 7);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.count("0") + a.count("1"), 10000U);
  EXPECT_LE(std::abs(static_cast<double>(a.count("0")) - 5000.0), 3.0 * std::sqrt(10000 * 0.25));
  EXPECT_NE(sample(plus, 10000, 8).counts, a.counts);
}

TEST(Sample, ZeroShotsRejected) {
  EXPECT_EQ(kind_of([] { sample(zero_state(1), 0, 1); }), ErrorKind::argument);
}

TEST(Sample, TotalVariationShrinksWithShots) {
  Circuit c(2);
  c.add(Gate::ry(1.1, 0)).add(Gate::cnot(0, 1)).add(Gate::ry(0.4, 1));
  const auto state = run_circuit(c, zero_state(2));
  const auto p = measure_probabilities(state);
  for (const std::uint64_t shots : {100ULL, 10000ULL, 1000000ULL}) {
    const auto counts = sample(state, shots, 17);
    double tv = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      tv += std::abs(static_cast<double>(counts.count(basis_label(k, 2))) / static_cast<double>(shots) - p[k]);
    }
    tv *= 0.5;
    EXPECT_LE(tv, 5.0 / std::sqrt(static_cast<double>(shots))) << "shots=" << shots;
  }
}

TEST(Sample, KeysAreValidBitstrings) {
  Rng rng(4);
  const auto counts = sample(oracle::random_state(3, rng), 5000, 1);
  std::uint64_t total = 0;
  for (const auto& [key, n] : counts.counts) {
    EXPECT_EQ(key.size(), 3U);
    EXPECT_EQ(key.find_first_not_of("01"), std::string::npos);
    total += n;
  }
  EXPECT_EQ(total, 5000U);
}

namespace {

double teleported_fidelity(Complex alpha, Complex beta) {
  const auto out = run_circuit(build_teleportation(alpha, beta), zero_state(3));
  return single_qubit_fidelity(reduced_density_matrix(out, 2), alpha, beta);
}

}  // namespace

TEST(Teleportation, Examples) {
  EXPECT_NEAR(teleported_fidelity(1.0, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(teleported_fidelity(kInvSqrt2, kInvSqrt2), 1.0, 1e-12);
  EXPECT_NEAR(teleported_fidelity(0.6, 0.8), 1.0, 1e-12);
  EXPECT_EQ(kind_of([] { build_teleportation(1.0, 1.0); }), ErrorKind::normalization);
}

TEST(Teleportation, MatchesDenseMatrixOracle) {
  // 0.6|0> + 0.8|1> on qubit 0: the 8x8 product of all gates gives the output
  // state; each measured (q0, q1) branch must leave qubit 2 in 0.6|0> + 0.8|1>
  // up to a branch phase, and the qubit-2 marginal must be [0.36, 0.64].
  const auto circuit = build_teleportation(0.6, 0.8);
  std::vector<Complex> in(8, 0.0);
  in[0] = 1.0;
  const auto out = oracle::apply(oracle::full(circuit), in);
  double p0 = 0.0;
  for (std::size_t branch = 0; branch < 4; ++branch) {
    const Complex a0 = out[branch * 2];
    const Complex a1 = out[branch * 2 + 1];
    EXPECT_NEAR(std::norm(a0) + std::norm(a1), 0.25, 1e-12);
    EXPECT_NEAR(std::abs(a0 * 0.8 - a1 * 0.6), 0.0, 1e-12);  // amplitudes proportional to (0.6, 0.8)
    p0 += std::norm(a0);
  }
  EXPECT_NEAR(p0, 0.36, 1e-12);
  const auto sim = run_circuit(circuit, zero_state(3));
  for (std::size_t k = 0; k < 8; ++k) EXPECT_LT(std::abs(sim[k] - out[k]), 1e-12);
}

TEST(Teleportation, RandomInputs) {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const auto s = oracle::random_state(1, rng);
    EXPECT_NEAR(teleported_fidelity(s[0], s[1]), 1.0, 1e-10);
  }
}

TEST(CircuitText, ParseAndFormat) {
  const auto c = parse_circuit("# fixture\nH 0\nCP 1.5707963 0 1\ncnot 0 1\n\nRY -0.5 1\n");
  ASSERT_EQ(c.n_qubits(), 2);
  ASSERT_EQ(c.size(), 4U);
  EXPECT_EQ(c.gates()[1], Gate::cp(1.5707963, 0, 1));
  EXPECT_EQ(c.gates()[2], Gate::cnot(0, 1));
  EXPECT_EQ(parse_circuit(format_circuit(c)), c);
  EXPECT_EQ(parse_circuit("qubits 4\nX 1\n").n_qubits(), 4);
  EXPECT_EQ(kind_of([] { parse_circuit("FOO 0\n"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { parse_circuit("CP 0 1\n"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { parse_circuit("qubits 2\nCNOT 0 2\n"); }), ErrorKind::index);
}

TEST(CircuitText, RoundTripRandomCircuits) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    Circuit c(4);
    for (int d = 0; d < 15; ++d) c.add(oracle::random_gate(4, rng));
    EXPECT_EQ(parse_circuit(format_circuit(c)), c);
  }
}
