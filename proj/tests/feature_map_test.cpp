#include "qkernel/feature_map.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qkernel;

namespace {

FeatureMapConfig config(int n, int depth, Entanglement e = Entanglement::linear) {
  return {n, depth, e, PairScale::product};
}

}  // namespace

TEST(FeatureCircuit, SingleQubitHasNoPairs) {
  const std::vector<double> x{0.0};
  const auto c = build_feature_circuit(x, config(1, 1));
  ASSERT_EQ(c.size(), 2U);
  EXPECT_EQ(c.gates()[0], Gate::h(0));
  EXPECT_EQ(c.gates()[1], Gate::p(0.0, 0));
}

TEST(FeatureCircuit, TwoQubitLinearLayout) {
  const std::vector<double> x{0.3, -1.2};
  const auto c = build_feature_circuit(x, config(2, 1));
  ASSERT_EQ(c.size(), 7U);
  const double pair = (std::numbers::pi - 0.3) * (std::numbers::pi + 1.2);
  const std::vector<Gate> expected{Gate::h(0),       Gate::h(1),         Gate::p(0.6, 0),
                                   Gate::p(-2.4, 1), Gate::cnot(0, 1),   Gate::p(2.0 * pair, 1),
                                   Gate::cnot(0, 1)};
  EXPECT_EQ(c.gates(), expected);

  const auto plain = build_feature_circuit(x, {2, 1, Entanglement::linear, PairScale::plain});
  EXPECT_DOUBLE_EQ(plain.gates()[5].theta, 2.0 * 0.3 * -1.2);
}

TEST(FeatureCircuit, DepthRepeatsTheLayer) {
  const std::vector<double> x{0.7, 2.1};
  const auto one = build_feature_circuit(x, config(2, 1));
  const auto two = build_feature_circuit(x, config(2, 2));
  ASSERT_EQ(two.size(), 2 * one.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(two.gates()[i], one.gates()[i]);
    EXPECT_EQ(two.gates()[i + one.size()], one.gates()[i]);
  }
}

TEST(FeatureCircuit, GateCountFormula) {
  for (int n = 1; n <= 6; ++n) {
    for (int depth = 1; depth <= 4; ++depth) {
      const std::vector<double> x(static_cast<std::size_t>(n), 0.5);
      const auto lin = config(n, depth, Entanglement::linear);
      const auto full = config(n, depth, Entanglement::full);
      const auto un = static_cast<std::size_t>(n);
      const auto ud = static_cast<std::size_t>(depth);
      EXPECT_EQ(build_feature_circuit(x, lin).size(), ud * (2 * un + 3 * (un - 1)));
      EXPECT_EQ(build_feature_circuit(x, full).size(), ud * (2 * un + 3 * un * (un - 1) / 2));
      EXPECT_EQ(feature_circuit_size(full), build_feature_circuit(x, full).size());
    }
  }
}

TEST(FeatureCircuit, Errors) {
  const std::vector<double> short_x{1.0};
  try {
    build_feature_circuit(short_x, config(2, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension);
  }
  const std::vector<double> nan_x{1.0, std::nan("")};
  try {
    build_feature_circuit(nan_x, config(2, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::argument);
  }
  try {
    build_feature_circuit(short_x, config(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::configuration);
  }
}

TEST(Encode, SingleQubitStates) {
  const double r = 1.0 / std::sqrt(2.0);
  auto s = encode(std::vector<double>{0.0}, config(1, 1));
  EXPECT_NEAR(std::abs(s[0] - Complex(r, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - Complex(r, 0)), 0.0, 1e-15);
  s = encode(std::vector<double>{std::numbers::pi / 2}, config(1, 1));
  EXPECT_NEAR(std::abs(s[0] - Complex(r, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - Complex(-r, 0)), 0.0, 1e-15);
}

TEST(Encode, UnitNormAndDeterministic) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 5));
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = uniform(rng, -4.0, 4.0);
    const auto cfg = config(n, 1 + static_cast<int>(uniform_index(rng, 3)),
                            uniform_index(rng, 2) ? Entanglement::full : Entanglement::linear);
    const auto a = encode(x, cfg);
    EXPECT_NEAR(a.norm_squared(), 1.0, 1e-12);
    EXPECT_EQ(a.amplitudes(), encode(x, cfg).amplitudes());
  }
}

TEST(Encode, SingleQubitOverlapClosedForm) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const double x = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const double y = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const double k = std::norm(inner_product(encode(std::vector<double>{x}, config(1, 1)),
                                             encode(std::vector<double>{y}, config(1, 1))));
    EXPECT_NEAR(k, std::pow(std::cos(x - y), 2), 1e-10);
  }
}

TEST(FeatureMapConfig, JsonRoundTrip) {
  const FeatureMapConfig c{3, 4, Entanglement::full, PairScale::plain};
  const nlohmann::json j = c;
  EXPECT_EQ(j.dump(), R"({"depth":4,"entanglement":"full","n_qubits":3,"pair_scale":"plain"})");
  EXPECT_EQ(j.get<FeatureMapConfig>(), c);
  const auto parsed = nlohmann::json::parse(
      R"({"n_qubits": 2, "depth": 2, "entanglement": "linear", "pair_scale": "product"})");
  EXPECT_EQ(parsed.get<FeatureMapConfig>(), FeatureMapConfig{});
  EXPECT_THROW(nlohmann::json::parse(R"({"n_qubits": 2, "depth": 2, "entanglement": "ring", "pair_scale": "product"})")
                   .get<FeatureMapConfig>(),
               Error);
}
