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
 * Monomial-factorisation encoding G_g, amplitude oracle A_g, Grover powers
 * and line-depth accounting.
 *
 * Every circuit built here acts on n+1 qubits: the index register 0..n-1
 * and the ancilla n. The encoding is a product of one C^S R_Y(coeff_S) per
 * subset S, all targeting the ancilla.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qaeint/angles.hpp"
#include "qaeint/simulator.hpp"

namespace qaeint::enc {

using angles::MultilinearExpansion;
using sim::Circuit;
using sim::Gate;

struct EncodingOptions {
  double zero_tol = angles::kDefaultZeroTol;
  /// Emit a gate for every |S| <= degree_cap, including zero coefficients.
  bool keep_zeros = false;
  /// Defaults to the degree of the expansion. A cap below that degree would
  /// silently drop non-zero terms and is rejected.
  std::optional<int> degree_cap;
};

struct EncodingPlan {
  MultilinearExpansion expansion;
  int degree_cap = 0;
  Circuit gate_list;
  int gate_count = 0;
  /// Every gate targets the shared ancilla, so layers are sequential.
  int depth_layers = 0;
};

EncodingPlan plan_encoding(const MultilinearExpansion& e,
                           const EncodingOptions& opts = {});

/// G_g: gates ordered by (|S|, mask).
Circuit build_encoding(const MultilinearExpansion& e,
                       double zero_tol = angles::kDefaultZeroTol);
Circuit build_encoding(const MultilinearExpansion& e,
                       const EncodingOptions& opts);

/// A_g = G_g (H_n (x) I): a Hadamard on each index qubit, then G_g.
Circuit build_oracle(const MultilinearExpansion& e,
                     const EncodingOptions& opts = {});

/// Q^k A_g with Q = A_g S_0 A_g^* S_anc (global phase -1 dropped).
Circuit build_grover_power(const MultilinearExpansion& e, int k,
                           const EncodingOptions& opts = {});

/// Two-control MCRY as CRY_j(a/2), CNOT(k->t), CRY_j(-a/2), CNOT(k->t) in
/// time order, with j the lower and k the higher control.
Circuit decompose_ccry(const Gate& gate, int n_qubits);

/// Lowers an MCRY with any number of controls to single-controlled RY and
/// CNOT gates by peeling off the highest control recursively.
Circuit lower_mcry(const Gate& gate, int n_qubits);

/// Compiled layers of an m-control MCRY after lowering: 1 for m <= 1,
/// otherwise 2 L(m-1) + 2.
std::int64_t lowered_layers(int controls);

/// Checks R_Y(-f) Z R_Y(f) = R_Y(-2f) Z through the simulator's gate
/// kernels for 20 seeded random f. Throws InternalConsistencyError on
/// a mismatch above 1e-12.
bool spin_echo_check();
bool spin_echo_check(std::span<const double> fs);

/// Compiled-line cost model for a line-depth-limited device.
struct HardwareProfile {
  std::string name;
  std::int64_t line_depth_limit = 60;
  /// Keys: h_layer, ry, cry, cnot, x, reflect_zero, reflect_ancilla1.
  std::map<std::string, std::int64_t> layer_cost;

  void validate() const;
  std::int64_t cost(const std::string& key) const;
  /// Lines for an MCRY with the given number of controls.
  std::int64_t mcry_lines(int controls) const;

  /// A labelled model of a 60-line NMR device; the per-gate expansion
  /// factors are calibrated, not published.
  static HardwareProfile triangulum60();
  static HardwareProfile unlimited();
};

struct GroverConfig {
  int k_max = 0;
  /// Count k+1 encoding applications per Q^k A_g instead of 2k+1.
  bool spin_echo = false;
};

struct LevelCost {
  int k = 0;
  std::int64_t encoding_applications = 0;
  std::int64_t mcry_gates = 0;
  std::int64_t expanded_layers = 0;
  std::int64_t total_lines = 0;
};

struct CostBreakdown {
  int n_qubits = 0;
  int degree = 0;
  bool spin_echo = false;
  std::string profile;
  std::int64_t gates_per_encoding = 0;
  std::int64_t expanded_layers_per_encoding = 0;
  std::int64_t oracle_lines = 0;
  std::vector<LevelCost> levels;
};

CostBreakdown encoding_cost(
    const MultilinearExpansion& e, const GroverConfig& cfg,
    const HardwareProfile& hw = HardwareProfile::triangulum60(),
    const EncodingOptions& opts = {});

struct LevelFeasibility {
  int k = 0;
  std::int64_t total_lines = 0;
  bool feasible = false;
};

struct FeasibilityReport {
  std::string profile;
  std::int64_t line_depth_limit = 0;
  std::vector<LevelFeasibility> levels;

  bool all_feasible() const;
};

FeasibilityReport feasibility(const MultilinearExpansion& e,
                              const GroverConfig& cfg,
                              const HardwareProfile& hw,
                              const EncodingOptions& opts = {});

}  // namespace qaeint::enc
