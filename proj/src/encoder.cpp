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

#include "qaeint/encoder.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "qaeint/errors.hpp"

namespace qaeint::enc {

namespace {

int register_size(const MultilinearExpansion& e) {
  if (e.n_qubits < 1 || e.n_qubits > angles::kMaxQubits ||
      e.coeff.size() != (std::size_t{1} << e.n_qubits)) {
    throw ParameterError("malformed multilinear expansion");
  }
  return e.n_qubits;
}

std::vector<std::uint32_t> masks_by_degree(int n) {
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  for (std::size_t m = 0; m < masks.size(); ++m) {
    masks[m] = static_cast<std::uint32_t>(m);
  }
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     return std::popcount(a) < std::popcount(b);
                   });
  return masks;
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  if (a > kMax - b) return kMax;
  return a + b;
}

std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

void lower_into(const Gate& g, Circuit& out) {
  const int m = g.control_count();
  if (m <= 1) {
    out.gates.push_back(g);
    return;
  }
  const int k = 31 - std::countl_zero(g.controls);
  Gate half = g;
  half.controls = g.controls & ~(std::uint32_t{1} << k);
  half.angle = 0.5 * g.angle;
  lower_into(half, out);
  out.gates.push_back(Gate::cnot(k, g.target));
  half.angle = -0.5 * g.angle;
  lower_into(half, out);
  out.gates.push_back(Gate::cnot(k, g.target));
}

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 single_qubit_matrix(const std::vector<Gate>& gates) {
  Mat2 u{};
  for (int col = 0; col < 2; ++col) {
    std::vector<std::complex<double>> amps(2);
    amps[col] = 1.0;
    sim::StateVector v(1, amps);
    for (const auto& g : gates) v.apply(g);
    for (int row = 0; row < 2; ++row) {
      if (std::abs(v[row].imag()) > 1e-15) {
        throw InternalConsistencyError("real gate produced complex amplitude");
      }
      u[row][col] = v[row].real();
    }
  }
  return u;
}

}  // namespace

EncodingPlan plan_encoding(const MultilinearExpansion& e,
                           const EncodingOptions& opts) {
  const int n = register_size(e);
  if (!(opts.zero_tol > 0.0)) throw ParameterError("zero_tol must be positive");
  const int deg = angles::degree(e, opts.zero_tol);
  const int cap = opts.degree_cap.value_or(deg);
  if (cap < deg || cap > n) {
    std::ostringstream os;
    os << "degree cap " << cap << " must lie in [" << deg << ", " << n
       << "] for an expansion of degree " << deg;
    throw ParameterError(os.str());
  }
  EncodingPlan plan;
  plan.expansion = e;
  plan.degree_cap = cap;
  plan.gate_list.n_qubits = n + 1;
  plan.gate_list.label = "encoding";
  for (std::uint32_t mask : masks_by_degree(n)) {
    if (std::popcount(mask) > cap) break;
    const double c = e.coeff[mask];
    if (!opts.keep_zeros && std::abs(c) <= opts.zero_tol) continue;
    plan.gate_list.gates.push_back(Gate::mcry(mask, n, c));
  }
  plan.gate_count = static_cast<int>(plan.gate_list.gates.size());
  plan.depth_layers = plan.gate_count;
  return plan;
}

Circuit build_encoding(const MultilinearExpansion& e, double zero_tol) {
  EncodingOptions opts;
  opts.zero_tol = zero_tol;
  return build_encoding(e, opts);
}

Circuit build_encoding(const MultilinearExpansion& e,
                       const EncodingOptions& opts) {
  return plan_encoding(e, opts).gate_list;
}

Circuit build_oracle(const MultilinearExpansion& e,
                     const EncodingOptions& opts) {
  const int n = register_size(e);
  Circuit c{n + 1, {}, "oracle"};
  for (int q = 0; q < n; ++q) c.gates.push_back(Gate::h(q));
  c.append(build_encoding(e, opts));
  return c;
}

Circuit build_grover_power(const MultilinearExpansion& e, int k,
                           const EncodingOptions& opts) {
  if (k < 0) throw ParameterError("Grover power must be >= 0");
  const int n = register_size(e);
  const Circuit a = build_oracle(e, opts);
  const Circuit a_inv = a.inverse();
  std::ostringstream label;
  label << "grover_power_" << k;
  Circuit c{n + 1, a.gates, label.str()};
  c.gates.reserve(a.gates.size() * (2 * static_cast<std::size_t>(k) + 1) +
                  2 * static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    c.gates.push_back(Gate::reflect_ancilla1(n));
    c.append(a_inv);
    c.gates.push_back(Gate::reflect_zero());
    c.append(a);
  }
  return c;
}

Circuit decompose_ccry(const Gate& gate, int n_qubits) {
  if (gate.kind != sim::GateKind::MCRY || gate.control_count() != 2) {
    throw ParameterError("decompose_ccry needs an MCRY with two controls");
  }
  Circuit c{n_qubits, {}, "ccry"};
  lower_into(gate, c);
  c.validate();
  return c;
}

Circuit lower_mcry(const Gate& gate, int n_qubits) {
  if (gate.kind != sim::GateKind::MCRY) {
    throw ParameterError("lower_mcry needs an MCRY gate");
  }
  Circuit c{n_qubits, {}, "lowered"};
  lower_into(gate, c);
  c.validate();
  return c;
}

std::int64_t lowered_layers(int controls) {
  if (controls < 0) throw ParameterError("negative control count");
  std::int64_t layers = 1;
  for (int m = 2; m <= controls; ++m) {
    layers = saturating_add(saturating_mul(2, layers), 2);
  }
  return layers;
}

bool spin_echo_check() {
  std::mt19937_64 gen(0x5EC0);
  std::uniform_real_distribution<double> dist(-2.0 * std::numbers::pi,
                                              2.0 * std::numbers::pi);
  std::vector<double> fs(20);
  for (auto& f : fs) f = dist(gen);
  return spin_echo_check(fs);
}

bool spin_echo_check(std::span<const double> fs) {
  const Gate z = Gate::reflect_ancilla1(0);
  for (double f : fs) {
    const Mat2 lhs =
        single_qubit_matrix({Gate::ry(0, f), z, Gate::ry(0, -f)});
    const Mat2 rhs = single_qubit_matrix({z, Gate::ry(0, -2.0 * f)});
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        if (std::abs(lhs[r][c] - rhs[r][c]) > 1e-12) {
          std::ostringstream os;
          os << "spin-echo identity fails at f = " << f;
          throw InternalConsistencyError(os.str());
        }
      }
    }
  }
  return true;
}

void HardwareProfile::validate() const {
  if (line_depth_limit <= 0) {
    throw ParameterError("line depth limit must be positive");
  }
  for (const char* key : {"h_layer", "ry", "cry", "cnot", "x", "reflect_zero",
                          "reflect_ancilla1"}) {
    auto it = layer_cost.find(key);
    if (it == layer_cost.end()) {
      throw ParameterError(std::string("hardware profile lacks cost '") + key +
                           "'");
    }
    if (it->second < 1) {
      throw ParameterError(std::string("hardware cost '") + key +
                           "' must be >= 1");
    }
  }
}

std::int64_t HardwareProfile::cost(const std::string& key) const {
  auto it = layer_cost.find(key);
  if (it == layer_cost.end()) {
    throw ParameterError("hardware profile lacks cost '" + key + "'");
  }
  return it->second;
}

std::int64_t HardwareProfile::mcry_lines(int controls) const {
  if (controls < 0) throw ParameterError("negative control count");
  if (controls == 0) return cost("ry");
  std::int64_t lines = cost("cry");
  const std::int64_t cnot2 = saturating_mul(2, cost("cnot"));
  for (int m = 2; m <= controls; ++m) {
    lines = saturating_add(saturating_mul(2, lines), cnot2);
  }
  return lines;
}

HardwareProfile HardwareProfile::triangulum60() {
  return {"triangulum60",
          60,
          {{"h_layer", 1},
           {"ry", 1},
           {"cry", 1},
           {"cnot", 2},
           {"x", 1},
           {"reflect_zero", 52},
           {"reflect_ancilla1", 1}}};
}

HardwareProfile HardwareProfile::unlimited() {
  return {"unlimited",
          std::numeric_limits<std::int64_t>::max(),
          {{"h_layer", 1},
           {"ry", 1},
           {"cry", 1},
           {"cnot", 1},
           {"x", 1},
           {"reflect_zero", 1},
           {"reflect_ancilla1", 1}}};
}

CostBreakdown encoding_cost(const MultilinearExpansion& e,
                            const GroverConfig& cfg,
                            const HardwareProfile& hw,
                            const EncodingOptions& opts) {
  if (cfg.k_max < 0) throw ParameterError("k_max must be >= 0");
  hw.validate();
  const EncodingPlan plan = plan_encoding(e, opts);
  CostBreakdown out;
  out.n_qubits = e.n_qubits;
  out.degree = angles::degree(e, opts.zero_tol);
  out.spin_echo = cfg.spin_echo;
  out.profile = hw.name;
  out.gates_per_encoding = plan.gate_count;
  out.oracle_lines = hw.cost("h_layer");
  for (const auto& g : plan.gate_list.gates) {
    out.expanded_layers_per_encoding = saturating_add(
        out.expanded_layers_per_encoding, lowered_layers(g.control_count()));
    out.oracle_lines =
        saturating_add(out.oracle_lines, hw.mcry_lines(g.control_count()));
  }
  const std::int64_t reflections =
      saturating_add(hw.cost("reflect_zero"), hw.cost("reflect_ancilla1"));
  for (int k = 0; k <= cfg.k_max; ++k) {
    LevelCost lc;
    lc.k = k;
    lc.encoding_applications = cfg.spin_echo ? k + 1 : 2 * std::int64_t{k} + 1;
    lc.mcry_gates = saturating_mul(lc.encoding_applications, plan.gate_count);
    lc.expanded_layers = saturating_mul(lc.encoding_applications,
                                        out.expanded_layers_per_encoding);
    lc.total_lines =
        saturating_add(saturating_mul(lc.encoding_applications,
                                      out.oracle_lines),
                       saturating_mul(k, reflections));
    out.levels.push_back(lc);
  }
  return out;
}

bool FeasibilityReport::all_feasible() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const LevelFeasibility& l) { return l.feasible; });
}

FeasibilityReport feasibility(const MultilinearExpansion& e,
                              const GroverConfig& cfg,
                              const HardwareProfile& hw,
                              const EncodingOptions& opts) {
  const CostBreakdown cost = encoding_cost(e, cfg, hw, opts);
  FeasibilityReport r;
  r.profile = hw.name;
  r.line_depth_limit = hw.line_depth_limit;
  for (const auto& lc : cost.levels) {
    r.levels.push_back(
        {lc.k, lc.total_lines, lc.total_lines <= hw.line_depth_limit});
  }
  return r;
}

}  // namespace qaeint::enc
