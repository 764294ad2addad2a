// Copyright 2026 The qaeint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <bit>

#include "oracles.hpp"
#include "qaeint/angles.hpp"
#include "qaeint/encoder.hpp"
#include "qaeint/errors.hpp"
#include "qaeint/integrate.hpp"

using namespace qaeint;
using namespace qaeint::enc;
using oracle::cd;
using oracle::kPi;

namespace {

MultilinearExpansion expansion_of(const std::vector<double>& values) {
  const int n = std::countr_zero(values.size());
  return angles::mobius_transform(
      angles::build_angle_table(angles::GridFunction({n, 0.0}, values)));
}

MultilinearExpansion expansion_of(const integ::TestFunction& f, int n) {
  return angles::mobius_transform(
      angles::build_angle_table(integ::sample(f, integ::Rule::Left, n)));
}

double run_prob(const Circuit& c) {
  return sim::ancilla_prob1(sim::apply(c, sim::initial_state(c.n_qubits)),
                            c.n_qubits - 1);
}

std::int64_t binom_prefix(int n, int d) {
  std::int64_t total = 0, c = 1;
  for (int k = 0; k <= d; ++k) {
    total += c;
    c = c * (n - k) / (k + 1);
  }
  return total;
}

}  // namespace

TEST_SUITE("encoder") {

TEST_CASE("g1 and g2 encodings") {
  const auto e1 = expansion_of(integ::g1(), 2);
  const auto c1 = build_encoding(e1);
  REQUIRE(c1.gates.size() == 2);
  CHECK(c1.gates[0].controls == 1u);
  CHECK(c1.gates[0].angle == doctest::Approx(kPi / 4));
  CHECK(c1.gates[1].controls == 2u);
  CHECK(c1.gates[1].angle == doctest::Approx(kPi / 2));
  EncodingOptions keep;
  keep.keep_zeros = true;
  const auto k1 = build_encoding(e1, keep);
  REQUIRE(k1.gates.size() == 3);
  CHECK(k1.gates[0].controls == 0u);
  CHECK(std::abs(k1.gates[0].angle) <= 1e-12);

  const auto e2 = expansion_of(integ::g2(), 2);
  keep.degree_cap = 2;
  const auto c2 = build_encoding(e2, keep);
  REQUIRE(c2.gates.size() == 4);
  CHECK(c2.gates[3].controls == 3u);
  CHECK(c2.gates[3].angle == doctest::Approx(-kPi));
  CHECK(c2.gates[3].target == 2);

  const auto zero = build_encoding(MultilinearExpansion{3, std::vector<double>(8, 0.0)});
  CHECK(zero.gates.empty());
  CHECK(zero.n_qubits == 4);
}

TEST_CASE("degree cap below the degree is rejected") {
  EncodingOptions opts;
  opts.degree_cap = 1;
  CHECK_THROWS_AS(plan_encoding(expansion_of(integ::g2(), 2), opts), ParameterError);
}

TEST_CASE("each fibre of G_g is the rotation by Theta(b)") {
  oracle::Gen gen(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const auto values = gen.values(std::size_t{1} << n);
    const auto e = expansion_of(values);
    const auto theta = angles::zeta_transform(e).theta;
    const auto c = build_encoding(e);
    for (std::size_t b = 0; b < values.size(); ++b) {
      std::vector<cd> amps(std::size_t{2} << n, 0.0);
      amps[b] = 1.0;
      const auto v = sim::apply(c, sim::StateVector(n + 1, amps));
      const std::size_t hi = b | (std::size_t{1} << n);
      REQUIRE(std::abs(v[b] - cd(std::cos(theta[b] / 2))) <= 1e-12);
      REQUIRE(std::abs(v[hi] - cd(std::sin(theta[b] / 2))) <= 1e-12);
      REQUIRE(std::abs(std::norm(v[hi]) - values[b]) <= 1e-12);
    }
  }
}

TEST_CASE("oracle probability equals the grid mean") {
  CHECK(run_prob(build_oracle(expansion_of(integ::g0(), 2))) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(run_prob(build_oracle(expansion_of(integ::g1(), 2))) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(run_prob(build_oracle(expansion_of(std::vector<double>(8, 0.0)))) <= 1e-15);
  oracle::Gen gen(103);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const auto values = gen.values(std::size_t{1} << n);
    REQUIRE(std::abs(run_prob(build_oracle(expansion_of(values))) - oracle::mean(values)) <= 1e-12);
  }
}

TEST_CASE("Grover powers follow the oscillation law") {
  const auto e0 = expansion_of(integ::g0(), 2);
  CHECK(std::abs(run_prob(build_grover_power(e0, 1)) - 1.0) <= 1e-12);
  CHECK(std::abs(run_prob(build_grover_power(e0, 2)) - 0.25) <= 1e-12);

  const auto half = expansion_of(integ::g2(), 3);
  for (int k = 0; k <= 8; ++k) {
    CHECK(std::abs(run_prob(build_grover_power(half, k)) - 0.5) <= 1e-10);
  }

  oracle::Gen gen(107);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    const auto values = gen.values(std::size_t{1} << n);
    const double a = oracle::mean(values);
    const auto e = expansion_of(values);
    for (int k = 0; k <= 8; ++k) {
      REQUIRE(std::abs(run_prob(build_grover_power(e, k)) - oracle::qae_prob(a, k)) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(build_grover_power(e0, -1), ParameterError);
}

TEST_CASE("CC-RY lowering matches the three-qubit unitary") {
  oracle::Gen gen(109);
  std::vector<double> angles = {-kPi, 0.0, kPi / 3, 2 * kPi};
  for (int i = 0; i < 20; ++i) angles.push_back(gen.uniform(-4 * kPi, 4 * kPi));
  for (double alpha : angles) {
    const Gate g = Gate::mcry(0b011u, 2, alpha);
    const Circuit low = decompose_ccry(g, 3);
    REQUIRE(low.gates.size() == 4);
    CHECK(low.gates[0].kind == sim::GateKind::MCRY);
    CHECK(low.gates[0].controls == 1u);
    CHECK(low.gates[0].angle == doctest::Approx(alpha / 2));
    CHECK(low.gates[1].kind == sim::GateKind::CNOT);
    CHECK(low.gates[1].controls == 2u);
    CHECK(low.gates[2].angle == doctest::Approx(-alpha / 2));
    CHECK(low.gates[3].kind == sim::GateKind::CNOT);
    const auto want = oracle::gate_matrix(g, 3);
    CHECK(oracle::max_abs_diff(oracle::circuit_matrix(low.gates, 3), want) <= 1e-12);
  }
  CHECK(oracle::max_abs_diff(oracle::circuit_matrix(decompose_ccry(Gate::mcry(3u, 2, 0.0), 3).gates, 3),
                             oracle::identity(8)) <= 1e-15);
  CHECK_THROWS_AS(decompose_ccry(Gate::mcry(1u, 2, 0.3), 3), ParameterError);
  CHECK_THROWS_AS(decompose_ccry(Gate::ry(2, 0.3), 3), ParameterError);
}

TEST_CASE("the opposite CNOT placement rotates the wrong way") {
  // CNOT first, then CRY(a/2), CNOT, CRY(-a/2) realises RY(-a) on |11>.
  const double alpha = 0.9;
  std::vector<Gate> alt = {Gate::cnot(1, 2), Gate::mcry(1u, 2, alpha / 2),
                           Gate::cnot(1, 2), Gate::mcry(1u, 2, -alpha / 2)};
  CHECK(oracle::max_abs_diff(oracle::circuit_matrix(alt, 3),
                             oracle::gate_matrix(Gate::mcry(3u, 2, -alpha), 3)) <= 1e-12);
}

TEST_CASE("general MCRY lowering is exact and has the predicted layer count") {
  oracle::Gen gen(113);
  for (int m = 1; m <= 3; ++m) {
    const std::uint32_t controls = (1u << m) - 1u;
    const Gate g = Gate::mcry(controls, m, gen.uniform(-kPi, kPi));
    const Circuit low = lower_mcry(g, m + 1);
    CHECK(static_cast<std::int64_t>(low.gates.size()) == lowered_layers(m));
    for (const auto& lg : low.gates) CHECK(lg.control_count() <= 1);
    CHECK(oracle::max_abs_diff(oracle::circuit_matrix(low.gates, m + 1),
                               oracle::gate_matrix(g, m + 1)) <= 1e-12);
  }
  CHECK(lowered_layers(0) == 1);
  CHECK(lowered_layers(2) == 4);
  CHECK(lowered_layers(3) == 10);
}

TEST_CASE("spin-echo identity") {
  CHECK(spin_echo_check());
  const double fs[] = {0.0, kPi / 3, kPi};
  CHECK(spin_echo_check(fs));
  // Independent 2x2 oracle for the same identity.
  for (double f : fs) {
    const Gate ry = Gate::ry(0, f), ry_neg = Gate::ry(0, -f), ry2 = Gate::ry(0, -2 * f);
    const Gate z = Gate::reflect_ancilla1(0);
    const auto lhs = oracle::circuit_matrix({ry, z, ry_neg}, 1);
    const auto rhs = oracle::circuit_matrix({z, ry2}, 1);
    CHECK(oracle::max_abs_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("gate counts equal the binomial prefix in keep-zeros mode") {
  oracle::Gen gen(127);
  for (int n = 1; n <= 10; ++n) {
    for (int d = 0; d <= n; ++d) {
      MultilinearExpansion e{n, std::vector<double>(std::size_t{1} << n, 0.0)};
      for (std::size_t m = 0; m < e.coeff.size(); ++m) {
        if (std::popcount(m) == d) e.coeff[m] = gen.uniform(0.05, 0.2);
      }
      EncodingOptions opts;
      opts.keep_zeros = true;
      opts.degree_cap = d;
      const auto plan = plan_encoding(e, opts);
      REQUIRE(plan.gate_count == binom_prefix(n, d));
      REQUIRE(plan.depth_layers == plan.gate_count);
    }
  }
}

TEST_CASE("gate count never exceeds the bound for planted degrees") {
  oracle::Gen gen(131);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.integer(1, 8);
    const int d = gen.integer(0, n);
    MultilinearExpansion e{n, std::vector<double>(std::size_t{1} << n, 0.0)};
    for (std::size_t m = 0; m < e.coeff.size(); ++m) {
      if (std::popcount(m) <= d && gen.integer(0, 3) > 0) e.coeff[m] = gen.uniform(0.01, 0.2);
    }
    const auto plan = plan_encoding(e);
    REQUIRE(plan.gate_count <= binom_prefix(n, d));
    std::size_t nonzero = 0;
    for (double c : e.coeff) nonzero += c != 0.0;
    REQUIRE(static_cast<std::size_t>(plan.gate_count) == nonzero);
  }
}

TEST_CASE("encoding cost counts") {
  EncodingOptions keep;
  keep.keep_zeros = true;
  const auto c1 = encoding_cost(expansion_of(integ::g1(), 2), {0, false},
                                HardwareProfile::triangulum60(), keep);
  CHECK(c1.gates_per_encoding == 3);
  CHECK(c1.oracle_lines == 4);
  keep.degree_cap = 2;
  const auto c2 = encoding_cost(expansion_of(integ::g2(), 2), {2, false},
                                HardwareProfile::triangulum60(), keep);
  CHECK(c2.gates_per_encoding == 4);
  CHECK(c2.oracle_lines == 10);
  CHECK(c2.expanded_layers_per_encoding == 3 + 4);
  REQUIRE(c2.levels.size() == 3);
  CHECK(c2.levels[2].encoding_applications == 5);
  CHECK(c2.levels[2].mcry_gates == 20);
  CHECK(c2.levels[2].total_lines == 5 * 10 + 2 * 53);

  const auto se = encoding_cost(expansion_of(integ::g2(), 2), {2, true});
  CHECK(se.levels[2].encoding_applications == 3);
  CHECK(encoding_cost(expansion_of(integ::g2(), 2), {0, false}).oracle_lines == 9);

  // Ten index qubits, every coefficient of degree <= 2 present.
  MultilinearExpansion e{10, std::vector<double>(1024, 0.0)};
  for (std::size_t m = 0; m < 1024; ++m) {
    if (std::popcount(m) <= 2) e.coeff[m] = 0.1;
  }
  CHECK(encoding_cost(e, {0, false}).gates_per_encoding == 56);
}

TEST_CASE("feasibility pattern under the 60-line profile") {
  EncodingOptions keep;
  keep.keep_zeros = true;
  const auto hw = HardwareProfile::triangulum60();
  const auto f0 = feasibility(expansion_of(integ::g0(), 2), {2, false}, hw, keep);
  CHECK(f0.levels[0].feasible);
  CHECK(f0.levels[1].feasible);
  CHECK_FALSE(f0.levels[2].feasible);
  const auto f1 = feasibility(expansion_of(integ::g1(), 2), {1, false}, hw, keep);
  CHECK(f1.levels[0].feasible);
  CHECK_FALSE(f1.levels[1].feasible);
  const auto f2 = feasibility(expansion_of(integ::g2(), 2), {2, false}, hw);
  CHECK(f2.levels[0].feasible);
  CHECK_FALSE(f2.levels[1].feasible);
  CHECK_FALSE(f2.levels[2].feasible);
  CHECK(feasibility(expansion_of(integ::g2(), 6), {8, false}, HardwareProfile::unlimited()).all_feasible());
}

TEST_CASE("hardware profile validation") {
  HardwareProfile hw = HardwareProfile::triangulum60();
  hw.layer_cost["cnot"] = 0;
  CHECK_THROWS_AS(hw.validate(), ParameterError);
  hw = HardwareProfile::triangulum60();
  hw.line_depth_limit = 0;
  CHECK_THROWS_AS(hw.validate(), ParameterError);
  hw = HardwareProfile::triangulum60();
  hw.layer_cost.erase("h_layer");
  CHECK_THROWS_AS(hw.validate(), ParameterError);
}

}  // TEST_SUITE
