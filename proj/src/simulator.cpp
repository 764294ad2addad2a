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

#include "qaeint/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "qaeint/errors.hpp"

namespace qaeint::sim {

Gate Gate::ry(int target, double angle) {
  return {GateKind::RY, 0, target, angle};
}
Gate Gate::x(int target) { return {GateKind::X, 0, target, 0.0}; }
Gate Gate::h(int target) { return {GateKind::H, 0, target, 0.0}; }
Gate Gate::cnot(int control, int target) {
  if (control < 0 || control >= 32) throw ParameterError("bad control qubit");
  return {GateKind::CNOT, std::uint32_t{1} << control, target, 0.0};
}
Gate Gate::mcry(std::uint32_t controls, int target, double angle) {
  return {GateKind::MCRY, controls, target, angle};
}
Gate Gate::reflect_zero() { return {GateKind::ReflectZero, 0, 0, 0.0}; }
Gate Gate::reflect_ancilla1(int ancilla) {
  return {GateKind::ReflectAncilla1, 0, ancilla, 0.0};
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (kind == GateKind::RY || kind == GateKind::MCRY) g.angle = -angle;
  return g;
}

int Gate::control_count() const { return std::popcount(controls); }

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::RY: return "ry";
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::CNOT: return "cnot";
    case GateKind::MCRY: return "mcry";
    case GateKind::ReflectZero: return "reflect_zero";
    case GateKind::ReflectAncilla1: return "reflect_ancilla1";
  }
  return "?";
}

GateKind kind_from_name(const std::string& name) {
  for (auto k : {GateKind::RY, GateKind::X, GateKind::H, GateKind::CNOT,
                 GateKind::MCRY, GateKind::ReflectZero,
                 GateKind::ReflectAncilla1}) {
    if (name == kind_name(k)) return k;
  }
  throw ParameterError("unknown gate kind '" + name + "'");
}

void Circuit::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ParameterError("circuit qubit count out of range");
  }
  const std::uint64_t all = (std::uint64_t{1} << n_qubits) - 1;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    std::ostringstream where;
    where << "gate " << i << " (" << kind_name(g.kind) << "): ";
    if (g.kind == GateKind::ReflectZero) continue;
    if (g.target < 0 || g.target >= n_qubits) {
      throw ParameterError(where.str() + "target outside register");
    }
    if ((g.controls & ~all) != 0) {
      throw ParameterError(where.str() + "control outside register");
    }
    if (g.controls & (std::uint32_t{1} << g.target)) {
      throw ParameterError(where.str() + "target is also a control");
    }
    if (g.kind == GateKind::CNOT && g.control_count() != 1) {
      throw ParameterError(where.str() + "CNOT needs exactly one control");
    }
    if (!std::isfinite(g.angle)) {
      throw ParameterError(where.str() + "non-finite angle");
    }
  }
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits != n_qubits) {
    throw ParameterError("cannot append circuits of different width");
  }
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

Circuit Circuit::inverse() const {
  Circuit inv{n_qubits, {}, label.empty() ? label : label + "^-1"};
  inv.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    inv.gates.push_back(it->inverse());
  }
  return inv;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    std::ostringstream os;
    os << "state of " << n_qubits << " qubits exceeds the supported range [1, "
       << kMaxQubits << "]";
    throw ParameterError(os.str());
  }
  amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits,
                         std::vector<std::complex<double>> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits ||
      amps_.size() != (std::size_t{1} << n_qubits)) {
    throw ParameterError("amplitude count does not match 2^n_qubits");
  }
  if (std::abs(norm() - 1.0) > kNormTolerance) {
    throw ParameterError("state vector is not normalised");
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply(const Gate& g) {
  const std::size_t dim = amps_.size();
  const std::size_t tbit = std::size_t{1} << g.target;
  switch (g.kind) {
    case GateKind::RY:
    case GateKind::MCRY: {
      const double c = std::cos(0.5 * g.angle);
      const double s = std::sin(0.5 * g.angle);
      const std::size_t cmask = g.kind == GateKind::RY ? 0 : g.controls;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tbit) || (i & cmask) != cmask) continue;
        const auto a0 = amps_[i];
        const auto a1 = amps_[i | tbit];
        amps_[i] = c * a0 - s * a1;
        amps_[i | tbit] = s * a0 + c * a1;
      }
      break;
    }
    case GateKind::X:
    case GateKind::CNOT: {
      const std::size_t cmask = g.kind == GateKind::X ? 0 : g.controls;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tbit) || (i & cmask) != cmask) continue;
        std::swap(amps_[i], amps_[i | tbit]);
      }
      break;
    }
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & tbit) continue;
        const auto a0 = amps_[i];
        const auto a1 = amps_[i | tbit];
        amps_[i] = r * (a0 + a1);
        amps_[i | tbit] = r * (a0 - a1);
      }
      break;
    }
    case GateKind::ReflectZero:
      amps_[0] = -amps_[0];
      break;
    case GateKind::ReflectAncilla1:
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & tbit) amps_[i] = -amps_[i];
      }
      break;
  }
  const double drift = std::abs(norm() - 1.0);
  if (drift > kNormTolerance) {
    std::ostringstream os;
    os << "norm drift " << drift << " after " << kind_name(g.kind);
    throw InternalConsistencyError(os.str());
  }
}

StateVector initial_state(int n_qubits) { return StateVector(n_qubits); }

StateVector apply(const Circuit& c, StateVector v) {
  if (c.n_qubits != v.n_qubits()) {
    std::ostringstream os;
    os << "circuit acts on " << c.n_qubits << " qubits but the state has "
       << v.n_qubits();
    throw ParameterError(os.str());
  }
  c.validate();
  for (const auto& g : c.gates) v.apply(g);
  return v;
}

double ancilla_prob1(const StateVector& v, int ancilla_index) {
  if (ancilla_index < 0 || ancilla_index >= v.n_qubits()) {
    throw ParameterError("ancilla index outside register");
  }
  const std::size_t abit = std::size_t{1} << ancilla_index;
  double p = 0.0;
  const auto amps = v.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & abit) p += std::norm(amps[i]);
  }
  return std::clamp(p, 0.0, 1.0);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t level,
                          std::uint64_t batch) {
  return mix64(mix64(mix64(master) ^ level) ^ (batch * 0xD1B54A32D192ED03ull));
}

std::int64_t sample_binomial(double p, std::int64_t shots,
                             std::uint64_t seed) {
  if (shots < 1) throw ParameterError("shots must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0,1]");
  if (p == 0.0) return 0;
  if (p == 1.0) return shots;
  std::mt19937_64 gen(seed);
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(gen() >> 11) * kScale;
    if (u < p) ++hits;
  }
  return hits;
}

std::int64_t sample_ancilla(const StateVector& v, int ancilla_index,
                            std::int64_t shots, std::uint64_t seed) {
  return sample_binomial(ancilla_prob1(v, ancilla_index), shots, seed);
}

std::int64_t sample_ancilla(const StateVector& v, std::int64_t shots,
                            std::uint64_t seed) {
  return sample_ancilla(v, v.n_qubits() - 1, shots, seed);
}

}  // namespace qaeint::sim
