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
 * Dense statevector simulation of small circuits.
 *
 * Qubit q corresponds to bit q of a basis index. For amplitude-estimation
 * circuits qubits 0..n-1 hold the index register and qubit n is the ancilla.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qaeint::sim {

inline constexpr int kMaxQubits = 25;

/// Allowed drift of the state norm before a gate is reported as broken.
inline constexpr double kNormTolerance = 1e-10;

enum class GateKind {
  RY,
  X,
  H,
  CNOT,
  MCRY,
  ReflectZero,      // I - 2 e0 e0^*
  ReflectAncilla1,  // I - 2 Pi_1 on the target qubit
};

struct Gate {
  GateKind kind = GateKind::X;
  std::uint32_t controls = 0;  // bit set of control qubits
  int target = 0;
  double angle = 0.0;

  static Gate ry(int target, double angle);
  static Gate x(int target);
  static Gate h(int target);
  static Gate cnot(int control, int target);
  static Gate mcry(std::uint32_t controls, int target, double angle);
  static Gate reflect_zero();
  static Gate reflect_ancilla1(int ancilla);

  /// Inverse gate: angles negated, the rest are self-inverse.
  Gate inverse() const;
  int control_count() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

const char* kind_name(GateKind kind);
GateKind kind_from_name(const std::string& name);

struct Circuit {
  int n_qubits = 1;
  std::vector<Gate> gates;
  std::string label;

  /// Throws ParameterError when a gate does not fit the register or a
  /// target is also a control.
  void validate() const;
  void append(const Circuit& other);
  Circuit inverse() const;
};

class StateVector {
 public:
  /// |0...0> on n_qubits qubits; 1 <= n_qubits <= kMaxQubits.
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<std::complex<double>> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  std::complex<double> operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

  /// Applies one gate in place. Throws InternalConsistencyError if the
  /// norm drifts by more than kNormTolerance.
  void apply(const Gate& g);

 private:
  int n_qubits_;
  std::vector<std::complex<double>> amps_;
};

StateVector initial_state(int n_qubits);

/// Applies the gates of c in list order to a copy of v.
StateVector apply(const Circuit& c, StateVector v);

/// Sum of |amp|^2 over basis states whose ancilla bit is 1.
double ancilla_prob1(const StateVector& v, int ancilla_index);

/// SplitMix64 finaliser; the mixing step behind derive_seed.
std::uint64_t mix64(std::uint64_t x);

/// Independent stream seed for (level, batch) under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t level,
                          std::uint64_t batch);

/// Binomial(shots, p) draw from a seeded mt19937_64, realised as a sum of
/// Bernoulli trials on 53-bit uniforms so counts agree across platforms.
std::int64_t sample_binomial(double p, std::int64_t shots, std::uint64_t seed);

std::int64_t sample_ancilla(const StateVector& v, int ancilla_index,
                            std::int64_t shots, std::uint64_t seed);

/// Same, with the ancilla taken to be the highest qubit.
std::int64_t sample_ancilla(const StateVector& v, std::int64_t shots,
                            std::uint64_t seed);

}  // namespace qaeint::sim
