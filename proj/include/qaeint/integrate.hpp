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

/**
 * @file
 * Uniform-grid quadrature rules, their discretisation bounds and the
 * built-in test integrands.
 */

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qaeint/angles.hpp"

namespace qaeint::integ {

enum class Rule { Left, Midpoint, Right, Simpson };

/// 1, 2, 1, 4.
int order(Rule r);
/// C_p in E <= C_p 2^{-pn} ||g^{(p)}||: 1/2, 1/24, 1/2, 1/2880.
double error_constant(Rule r);
/// 0, 1/2, 1. Simpson has no single grid and throws.
double sample_offset(Rule r);
const char* rule_name(Rule r);
/// Accepts left, mid, midpoint, right, simpson.
Rule rule_from_name(const std::string& name);

using Callable = std::function<double(double)>;

struct TestFunction {
  std::string id;
  Callable g;
  std::optional<double> exact_integral;
  /// ||g^{(p)}||_inf keyed by derivative order, where known in closed form.
  std::map<int, double> deriv_sup;

  double operator()(double x) const { return g(x); }
  /// Known sup for the rule's order, or a finite-difference estimate.
  double deriv_sup_for(Rule r) const;
};

/// g0 = 1/4.
TestFunction g0();
/// g1 = sin^2(pi x / 2).
TestFunction g1();
/// g2 = sin^2(pi x).
TestFunction g2();
/// Looks up g0, g1, g2 by id.
TestFunction builtin(const std::string& id);

/// Samples at (i + offset)/2^n for left, midpoint and right rules.
angles::GridFunction sample(const Callable& f, Rule r, int n);
angles::GridFunction sample(const TestFunction& f, Rule r, int n);

double riemann_mean(const angles::GridFunction& f);

/// Classical value of the rule; Simpson is (L + 4M + R)/6.
double quadrature(const Callable& f, Rule r, int n);

struct ErrorBound {
  Rule rule = Rule::Left;
  int n = 0;
  double deriv_sup = 0.0;
  double bound = 0.0;
};

ErrorBound error_bound(Rule r, int n, double deriv_sup);

/// Smallest n >= 1 with error_bound(r, n, deriv_sup) <= eps/2, from
/// n >= (1/p) log2(2 C_p deriv_sup / eps).
int min_qubits(Rule r, double eps, double deriv_sup);

/// sup |f^{(p)}| on [0,1] by central differences on 2^14 points, with a
/// wider stencil step for higher orders. p must be 1, 2 or 4.
double estimate_deriv_sup(const Callable& f, int p, int points = 1 << 14);

}  // namespace qaeint::integ
