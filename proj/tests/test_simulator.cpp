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

#include <algorithm>
#include <cstdlib>

#include "oracles.hpp"
#include "qaeint/errors.hpp"
#include "qaeint/simulator.hpp"

using namespace qaeint;
using namespace qaeint::sim;
using oracle::cd;
using oracle::kPi;

namespace {

StateVector random_state(oracle::Gen& gen, int n) {
  std::vector<cd> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = cd(gen.uniform(-1, 1), gen.uniform(-1, 1));
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector(n, amps);
}

double distance(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Gate random_gate(oracle::Gen& gen, int n) {
  const int t = gen.integer(0, n - 1);
  const double angle = gen.uniform(-2 * kPi, 2 * kPi);
  std::uint32_t controls = 0;
  for (int q = 0; q < n; ++q) {
    if (q != t && gen.integer(0, 1)) controls |= 1u << q;
  }
  int c = (t + 1) % n;
  switch (gen.integer(0, 6)) {
    case 0: return Gate::ry(t, angle);
    case 1: return Gate::x(t);
    case 2: return Gate::h(t);
    case 3: return n > 1 ? Gate::cnot(c, t) : Gate::x(t);
    case 4: return Gate::mcry(controls, t, angle);
    case 5: return Gate::reflect_zero();
    default: return Gate::reflect_ancilla1(t);
  }
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("initial state") {
  const auto v1 = initial_state(1);
  CHECK(v1.size() == 2);
  CHECK(v1[0] == cd(1.0));
  CHECK(v1[1] == cd(0.0));
  const auto v3 = initial_state(3);
  CHECK(v3.size() == 8);
  CHECK(v3[0] == cd(1.0));
  CHECK(v3.norm() == 1.0);
  CHECK_THROWS_AS(initial_state(0), ParameterError);
  CHECK_THROWS_AS(initial_state(26), ParameterError);
}

TEST_CASE("RY on |0>, CNOT and H layer") {
  const double th = 0.7;
  auto v = apply(Circuit{1, {Gate::ry(0, th)}, ""}, initial_state(1));
  CHECK(v[0].real() == doctest::Approx(std::cos(th / 2)).epsilon(1e-15));
  CHECK(v[1].real() == doctest::Approx(std::sin(th / 2)).epsilon(1e-15));

  // X(1) prepares index 2 (control set, target clear); CNOT then gives 3.
  auto c = apply(Circuit{2, {Gate::x(1), Gate::cnot(1, 0)}, ""}, initial_state(2));
  CHECK(std::abs(c[3] - cd(1.0)) <= 1e-15);

  auto h = apply(Circuit{2, {Gate::h(0), Gate::h(1)}, ""}, initial_state(2));
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(h[i] - cd(0.5)) <= 1e-15);
}

TEST_CASE("gate kernels agree with explicit matrices") {
  oracle::Gen gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen.integer(1, 4);
    const Gate g = random_gate(gen, n);
    const auto v = random_state(gen, n);
    auto w = v;
    w.apply(g);
    const auto m = oracle::gate_matrix(g, n);
    for (std::size_t o = 0; o < v.size(); ++o) {
      cd expect = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) expect += m[o][i] * v[i];
      REQUIRE(std::abs(expect - w[o]) <= 1e-12);
    }
  }
}

TEST_CASE("every gate followed by its inverse is the identity") {
  oracle::Gen gen(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen.integer(1, 5);
    const Gate g = random_gate(gen, n);
    const auto v = random_state(gen, n);
    auto w = v;
    w.apply(g);
    w.apply(g.inverse());
    REQUIRE(distance(v, w) <= 1e-12);
  }
}

TEST_CASE("reflections are involutions") {
  oracle::Gen gen(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen.integer(1, 6);
    const auto v = random_state(gen, n);
    for (const Gate& g : {Gate::reflect_zero(), Gate::reflect_ancilla1(gen.integer(0, n - 1))}) {
      auto w = v;
      w.apply(g);
      w.apply(g);
      REQUIRE(distance(v, w) <= 1e-12);
    }
  }
}

TEST_CASE("MCRY acts inside each fibre and leaves the index marginals alone") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(1, 6);
    const int anc = n;
    const auto v = random_state(gen, n + 1);
    const std::uint32_t controls = static_cast<std::uint32_t>(gen.integer(0, (1 << n) - 1));
    auto w = v;
    w.apply(Gate::mcry(controls, anc, gen.uniform(-kPi, kPi)));
    for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
      const std::size_t hi = b | (std::size_t{1} << anc);
      const double before = std::norm(v[b]) + std::norm(v[hi]);
      const double after = std::norm(w[b]) + std::norm(w[hi]);
      REQUIRE(std::abs(before - after) <= 1e-12);
      if ((b & controls) != controls) {
        REQUIRE(std::abs(v[b] - w[b]) <= 1e-15);
        REQUIRE(std::abs(v[hi] - w[hi]) <= 1e-15);
      }
    }
  }
}

TEST_CASE("ancilla marginals") {
  std::vector<cd> amps(4, 0.0);
  amps[2 | 1] = 1.0;  // u_1 (x) u_1 with ancilla qubit 1
  CHECK(ancilla_prob1(StateVector(2, amps), 1) == 1.0);
  std::vector<cd> half(4, 0.0);
  half[0] = half[2] = 1.0 / std::sqrt(2.0);
  CHECK(ancilla_prob1(StateVector(2, half), 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ancilla_prob1(StateVector(2, half), 2), ParameterError);
}

TEST_CASE("validation and dimension checks") {
  CHECK_THROWS_AS(Circuit({2, {Gate::mcry(1u, 0, 0.1)}, ""}).validate(), ParameterError);
  CHECK_THROWS_AS(Circuit({2, {Gate::x(2)}, ""}).validate(), ParameterError);
  CHECK_THROWS_AS(Circuit({2, {Gate::ry(0, std::nan(""))}, ""}).validate(), ParameterError);
  CHECK_THROWS_AS(apply(Circuit{2, {}, ""}, initial_state(3)), ParameterError);
  CHECK_THROWS_AS(StateVector(1, {1.0, 1.0}), ParameterError);
}

TEST_CASE("sampling edge cases and determinism") {
  CHECK(sample_binomial(1.0, 2048, 1) == 2048);
  CHECK(sample_binomial(0.0, 2048, 1) == 0);
  CHECK_THROWS_AS(sample_binomial(0.5, 0, 1), ParameterError);
  const auto a = sample_binomial(0.3, 5000, 77);
  CHECK(a == sample_binomial(0.3, 5000, 77));
  CHECK(a != sample_binomial(0.3, 5000, 78));

  Circuit c{2, {Gate::h(0), Gate::ry(1, 1.1)}, ""};
  const auto v = apply(c, initial_state(2));
  CHECK(sample_ancilla(v, 1000, 5) == sample_ancilla(apply(c, initial_state(2)), 1000, 5));
}

TEST_CASE("p = 1/2 with 10^6 shots stays within 4 sigma") {
  const std::int64_t hits = sample_binomial(0.5, 1000000, 12345);
  CHECK(std::llabs(hits - 500000) <= 2000);
}

TEST_CASE("derived seeds are distinct across levels and batches") {
  std::vector<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 16; ++k)
    for (std::uint64_t b = 0; b < 16; ++b) seen.push_back(derive_seed(9, k, b));
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  CHECK(derive_seed(9, 1, 2) == derive_seed(9, 1, 2));
}

TEST_CASE("sampler matches the binomial mean and variance") {
  const double p = 0.37;
  const std::int64_t N = 400;
  const int reps = 2000;
  double s = 0.0, s2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double x = static_cast<double>(sample_binomial(p, N, derive_seed(3, 0, r)));
    s += x;
    s2 += x * x;
  }
  const double mean = s / reps;
  const double var = s2 / reps - mean * mean;
  CHECK(std::abs(mean - N * p) <= 4.0 * std::sqrt(N * p * (1 - p) / reps));
  CHECK(var == doctest::Approx(N * p * (1 - p)).epsilon(0.1));
}

}  // TEST_SUITE
