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

#include "qaeint/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qaeint/errors.hpp"

namespace qaeint::integ {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

}  // namespace

int order(Rule r) {
  switch (r) {
    case Rule::Left: return 1;
    case Rule::Midpoint: return 2;
    case Rule::Right: return 1;
    case Rule::Simpson: return 4;
  }
  return 1;
}

double error_constant(Rule r) {
  switch (r) {
    case Rule::Left:
    case Rule::Right: return 0.5;
    case Rule::Midpoint: return 1.0 / 24.0;
    case Rule::Simpson: return 1.0 / 2880.0;
  }
  return 0.5;
}

double sample_offset(Rule r) {
  switch (r) {
    case Rule::Left: return 0.0;
    case Rule::Midpoint: return 0.5;
    case Rule::Right: return 1.0;
    case Rule::Simpson: break;
  }
  throw ParameterError(
      "simpson has no single sample grid; combine left, mid and right");
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Left: return "left";
    case Rule::Midpoint: return "mid";
    case Rule::Right: return "right";
    case Rule::Simpson: return "simpson";
  }
  return "?";
}

Rule rule_from_name(const std::string& name) {
  if (name == "left") return Rule::Left;
  if (name == "mid" || name == "midpoint") return Rule::Midpoint;
  if (name == "right") return Rule::Right;
  if (name == "simpson") return Rule::Simpson;
  throw ParameterError("unknown quadrature rule '" + name + "'");
}

double TestFunction::deriv_sup_for(Rule r) const {
  const int p = order(r);
  if (auto it = deriv_sup.find(p); it != deriv_sup.end()) return it->second;
  return estimate_deriv_sup(g, p);
}

TestFunction g0() {
  return {"g0", [](double) { return 0.25; }, 0.25,
          {{1, 0.0}, {2, 0.0}, {4, 0.0}}};
}

TestFunction g1() {
  return {"g1", [](double x) { return sq(std::sin(0.5 * kPi * x)); }, 0.5,
          {{1, kPi / 2.0}, {2, kPi * kPi / 2.0}, {4, std::pow(kPi, 4) / 2.0}}};
}

TestFunction g2() {
  return {"g2", [](double x) { return sq(std::sin(kPi * x)); }, 0.5,
          {{1, kPi}, {2, 2.0 * kPi * kPi}, {4, 8.0 * std::pow(kPi, 4)}}};
}

TestFunction builtin(const std::string& id) {
  if (id == "g0") return g0();
  if (id == "g1") return g1();
  if (id == "g2") return g2();
  throw ParameterError("unknown test function '" + id + "'");
}

angles::GridFunction sample(const Callable& f, Rule r, int n) {
  angles::GridSpec grid{n, sample_offset(r)};
  if (n < 1 || n > angles::kMaxQubits) {
    throw ParameterError("qubit count outside the supported range");
  }
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(grid.point(i));
  return angles::GridFunction(grid, std::move(values));
}

angles::GridFunction sample(const TestFunction& f, Rule r, int n) {
  return sample(f.g, r, n);
}

double riemann_mean(const angles::GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.values().size());
}

double quadrature(const Callable& f, Rule r, int n) {
  if (r != Rule::Simpson) return riemann_mean(sample(f, r, n));
  const double left = riemann_mean(sample(f, Rule::Left, n));
  const double mid = riemann_mean(sample(f, Rule::Midpoint, n));
  const double right = riemann_mean(sample(f, Rule::Right, n));
  return (left + 4.0 * mid + right) / 6.0;
}

ErrorBound error_bound(Rule r, int n, double deriv_sup) {
  if (!(deriv_sup >= 0.0)) throw ParameterError("deriv_sup must be >= 0");
  if (n < 0) throw ParameterError("n must be >= 0");
  const double bound =
      error_constant(r) * std::exp2(-static_cast<double>(order(r) * n)) *
      deriv_sup;
  return {r, n, deriv_sup, bound};
}

int min_qubits(Rule r, double eps, double deriv_sup) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (!(deriv_sup >= 0.0)) throw ParameterError("deriv_sup must be >= 0");
  if (deriv_sup == 0.0) return 1;
  const double p = order(r);
  const double raw = std::log2(2.0 * error_constant(r) * deriv_sup / eps) / p;
  int n = std::max(1, static_cast<int>(std::ceil(raw)));
  // Rounding in log2 can land one step short of the bound.
  while (error_bound(r, n, deriv_sup).bound > 0.5 * eps) ++n;
  return n;
}

double estimate_deriv_sup(const Callable& f, int p, int points) {
  if (points < 64) throw ParameterError("too few points for finite differences");
  const double base = 1.0 / static_cast<double>(points);
  double sup = 0.0;
  switch (p) {
    case 1: {
      const double h = base;
      for (int i = 1; i < points; ++i) {
        const double x = i * base;
        sup = std::max(sup, std::abs(f(x + h) - f(x - h)) / (2.0 * h));
      }
      break;
    }
    case 2: {
      const double h = 2.0 * base;
      for (int i = 2; i <= points - 2; ++i) {
        const double x = i * base;
        sup = std::max(sup,
                       std::abs(f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h));
      }
      break;
    }
    case 4: {
      const double h = 32.0 * base;
      for (int i = 64; i <= points - 64; ++i) {
        const double x = i * base;
        const double d4 = f(x - 2 * h) - 4.0 * f(x - h) + 6.0 * f(x) -
                          4.0 * f(x + h) + f(x + 2 * h);
        sup = std::max(sup, std::abs(d4) / std::pow(h, 4));
      }
      break;
    }
    default: {
      std::ostringstream os;
      os << "derivative order " << p << " is not a quadrature order";
      throw ParameterError(os.str());
    }
  }
  return sup;
}

}  // namespace qaeint::integ
