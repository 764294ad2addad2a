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
#include "qaeint/errors.hpp"
#include "qaeint/integrate.hpp"

using namespace qaeint;
using namespace qaeint::angles;
using oracle::kPi;

namespace {

AngleTable table(std::vector<double> theta) {
  const int n = std::countr_zero(theta.size());
  return {n, std::move(theta)};
}

AngleTable random_table(oracle::Gen& gen, int n) {
  return {n, gen.values(std::size_t{1} << n, 0.0, kPi)};
}

}  // namespace

TEST_SUITE("angles") {

TEST_CASE("angle table of sin^2(pi x/2) on the left grid is affine") {
  const auto f = integ::sample(integ::g1(), integ::Rule::Left, 2);
  const auto t = build_angle_table(f);
  const double expect[] = {0, kPi / 4, kPi / 2, 3 * kPi / 4};
  for (int i = 0; i < 4; ++i) CHECK(t.theta[i] == doctest::Approx(expect[i]).epsilon(1e-14));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(oracle::sq(std::sin(t.theta[i] / 2)) - f.values()[i]) <= 1e-14);
  }
}

TEST_CASE("constant tables map to 0 and pi") {
  GridFunction zero({3, 0.0}, std::vector<double>(8, 0.0));
  GridFunction one({3, 0.0}, std::vector<double>(8, 1.0));
  for (double th : build_angle_table(zero).theta) CHECK(th == 0.0);
  for (double th : build_angle_table(one).theta) CHECK(th == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("out-of-range grid value names its index") {
  std::vector<double> v = {0.1, 0.2, 1.5, 0.3};
  try {
    GridFunction f({2, 0.0}, v);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
  CHECK_THROWS_AS(GridFunction({2, 0.0}, std::vector<double>(3, 0.5)), ParameterError);
}

TEST_CASE("Moebius coefficients of the affine and quadratic examples") {
  const auto e1 = mobius_transform(table({0, kPi / 4, kPi / 2, 3 * kPi / 4}));
  CHECK(std::abs(e1.coeff[0]) <= 1e-12);
  CHECK(std::abs(e1.coeff[1] - kPi / 4) <= 1e-12);
  CHECK(std::abs(e1.coeff[2] - kPi / 2) <= 1e-12);
  CHECK(std::abs(e1.coeff[3]) <= 1e-12);
  CHECK(degree(e1) == 1);

  const auto e2 = mobius_transform(table({0, kPi / 2, kPi, kPi / 2}));
  CHECK(std::abs(e2.coeff[0]) <= 1e-12);
  CHECK(std::abs(e2.coeff[1] - kPi / 2) <= 1e-12);
  CHECK(std::abs(e2.coeff[2] - kPi) <= 1e-12);
  CHECK(std::abs(e2.coeff[3] + kPi) <= 1e-12);
  CHECK(degree(e2) == 2);
}

TEST_CASE("constant table has degree 0") {
  const auto e = mobius_transform(table(std::vector<double>(16, 1.234)));
  CHECK(e.coeff[0] == doctest::Approx(1.234));
  for (std::size_t m = 1; m < 16; ++m) CHECK(std::abs(e.coeff[m]) <= 1e-15);
  CHECK(degree(e) == 0);
  CHECK(pm1_degree(table(std::vector<double>(16, 1.234))) == 0);
}

TEST_CASE("zeta transform examples") {
  MultilinearExpansion e{2, {0, kPi / 4, kPi / 2, 0}};
  const auto t = zeta_transform(e);
  const double expect[] = {0, kPi / 4, kPi / 2, 3 * kPi / 4};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(t.theta[i] - expect[i]) <= 1e-15);

  for (double th : zeta_transform({3, std::vector<double>(8, 0.0)}).theta) CHECK(th == 0.0);

  const auto mono = zeta_transform({2, {0, 0, 0, kPi}});
  CHECK(mono.theta == std::vector<double>{0, 0, 0, kPi});
}

TEST_CASE("degree rejects a non-positive tolerance") {
  CHECK_THROWS_AS(degree({1, {0, 1}}, 0.0), ParameterError);
}

TEST_CASE("membership for g1, g2 and the full class") {
  const auto r1 = check_membership(integ::sample(integ::g1(), integ::Rule::Left, 2), 1);
  CHECK(r1.member);
  CHECK(r1.violations.empty());
  REQUIRE(r1.affine_residuals.has_value());
  for (const auto& res : *r1.affine_residuals) CHECK(std::abs(res.coeff) <= 1e-12);

  const auto r2 = check_membership(integ::sample(integ::g2(), integ::Rule::Left, 2), 1);
  CHECK_FALSE(r2.member);
  REQUIRE(r2.violations.size() == 1);
  CHECK(r2.violations[0].subset_mask == 3u);
  CHECK(std::abs(r2.violations[0].coeff + kPi) <= 1e-12);
  // Walsh sum over S = {0,1}: theta(0) - theta(1) - theta(2) + theta(3).
  REQUIRE(r2.affine_residuals->size() == 1);
  CHECK(std::abs((*r2.affine_residuals)[0].coeff + kPi) <= 1e-12);

  oracle::Gen gen(11);
  for (int n = 1; n <= 6; ++n) {
    auto v = gen.values(std::size_t{1} << n);
    CHECK(check_membership(GridFunction({n, 0.0}, v), n).member);
  }
  CHECK_THROWS_AS(check_membership(table({0, 1}), 2), ParameterError);
}

TEST_CASE("round trip through Moebius and zeta over random tables") {
  oracle::Gen gen(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 10;
    const auto t = random_table(gen, n);
    const auto back = zeta_transform(mobius_transform(t));
    for (std::size_t i = 0; i < t.theta.size(); ++i) {
      REQUIRE(std::abs(back.theta[i] - t.theta[i]) <= 1e-12);
    }
  }
}

TEST_CASE("fast transform equals the inclusion-exclusion sum") {
  oracle::Gen gen(7);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      const auto t = random_table(gen, n);
      const auto fast = mobius_transform(t).coeff;
      const auto slow = oracle::mobius_bruteforce(t.theta);
      for (std::size_t m = 0; m < fast.size(); ++m) {
        REQUIRE(std::abs(fast[m] - slow[m]) <= 1e-12);
      }
      const auto recon = oracle::zeta_bruteforce(fast);
      for (std::size_t i = 0; i < recon.size(); ++i) {
        REQUIRE(std::abs(recon[i] - t.theta[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("degree agrees with the parity-basis degree") {
  oracle::Gen gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    // Mix dense tables with planted low-degree ones.
    AngleTable t;
    if (trial % 2) {
      t = random_table(gen, n);
    } else {
      const int d = gen.integer(0, n);
      MultilinearExpansion e{n, std::vector<double>(std::size_t{1} << n, 0.0)};
      for (std::size_t m = 0; m < e.coeff.size(); ++m) {
        if (std::popcount(m) <= d) e.coeff[m] = gen.uniform(-1.0, 1.0);
      }
      t = zeta_transform(e);
    }
    REQUIRE(pm1_degree(t) == degree(mobius_transform(t)));
  }
  CHECK(pm1_degree(table({0, kPi / 4, kPi / 2, 3 * kPi / 4})) == 1);
  CHECK(pm1_degree(table({0, kPi / 2, kPi, kPi / 2})) == 2);
}

TEST_CASE("membership is monotone in d") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen.integer(1, 6);
    const auto t = random_table(gen, n);
    bool seen = false;
    for (int d = 0; d <= n; ++d) {
      const bool m = check_membership(t, d).member;
      if (seen) REQUIRE(m);
      seen = seen || m;
    }
    REQUIRE(seen);
  }
}

TEST_CASE("monomial witness pi * chi_S has degree |S|") {
  for (int n = 1; n <= 6; ++n) {
    for (int d = 1; d <= n; ++d) {
      const std::uint32_t s = (1u << d) - 1u;
      std::vector<double> theta(std::size_t{1} << n);
      for (std::size_t b = 0; b < theta.size(); ++b) {
        theta[b] = (b & s) == s ? kPi : 0.0;
      }
      const AngleTable t{n, theta};
      CHECK(degree(mobius_transform(t)) == d);
      CHECK(check_membership(t, d).member);
      CHECK_FALSE(check_membership(t, d - 1).member);
    }
  }
}

TEST_CASE("walsh_hadamard is orthonormal") {
  oracle::Gen gen(3);
  const auto v = gen.values(32);
  const auto w = walsh_hadamard(v);
  const auto back = walsh_hadamard(w);
  double e1 = 0, e2 = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(std::abs(back[i] - v[i]) <= 1e-12);
    e1 += v[i] * v[i];
    e2 += w[i] * w[i];
  }
  CHECK(e1 == doctest::Approx(e2));
}

TEST_CASE("joint addition table degree") {
  oracle::Gen gen(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 5);
    // Plant degrees d1, d2 in theta_g, theta_h.
    auto planted = [&](int d) {
      MultilinearExpansion e{n, std::vector<double>(std::size_t{1} << n, 0.0)};
      for (std::size_t m = 0; m < e.coeff.size(); ++m) {
        if (std::popcount(m) <= d) e.coeff[m] = gen.uniform(0.05, 0.3);
      }
      return zeta_transform(e);
    };
    const int d1 = gen.integer(0, n);
    const int d2 = gen.integer(0, n);
    const auto tg = planted(d1);
    const auto th = planted(d2);
    const auto joint = joint_addition_table(tg, th);
    REQUIRE(joint.n_qubits == n + 1);

    AngleTable diff{n, th.theta};
    for (std::size_t i = 0; i < diff.theta.size(); ++i) diff.theta[i] -= tg.theta[i];
    const int dg = degree(mobius_transform(tg));
    const int ddiff = degree(mobius_transform(diff));
    const int expected = ddiff == 0 && std::abs(mobius_transform(diff).coeff[0]) <= 1e-9
                             ? dg
                             : std::max(dg, 1 + ddiff);
    CHECK(degree(mobius_transform(joint)) == expected);
  }
  // A case where the joint degree exceeds max(d1, d2).
  const AngleTable tg{1, {0.0, 0.5}};
  const AngleTable th{1, {0.2, 0.2}};
  CHECK(degree(mobius_transform(joint_addition_table(tg, th))) == 2);
}

}  // TEST_SUITE
