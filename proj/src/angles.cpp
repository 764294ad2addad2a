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

#include "qaeint/angles.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "qaeint/errors.hpp"

namespace qaeint::angles {

namespace {

void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    std::ostringstream os;
    os << "qubit count " << n << " outside [1, " << kMaxQubits << "]";
    throw ParameterError(os.str());
  }
}

int log2_exact(std::size_t len) {
  if (len < 2 || !std::has_single_bit(len)) {
    throw ParameterError("table length must be a power of two >= 2");
  }
  return std::countr_zero(len);
}

void check_table(int n, std::size_t len) {
  check_qubits(n);
  if (len != (std::size_t{1} << n)) {
    throw ParameterError("table length does not match 2^n");
  }
}

}  // namespace

double GridSpec::point(std::size_t i) const {
  return (static_cast<double>(i) + sample_offset) /
         static_cast<double>(size());
}

GridFunction::GridFunction(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  check_qubits(grid_.n_qubits);
  if (!(grid_.sample_offset >= 0.0 && grid_.sample_offset <= 1.0)) {
    throw ParameterError("sample offset must lie in [0, 1]");
  }
  if (values_.size() != grid_.size()) {
    throw ParameterError("grid function needs exactly 2^n values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0)) {
      std::ostringstream os;
      os << "grid value at index " << i << " is " << values_[i]
         << ", outside [0, 1]";
      throw DomainError(os.str());
    }
  }
}

int popcount(std::uint32_t mask) { return std::popcount(mask); }

int MultilinearExpansion::degree(double zero_tol) const {
  return angles::degree(*this, zero_tol);
}

AngleTable build_angle_table(const GridFunction& f) {
  AngleTable t;
  t.n_qubits = f.n_qubits();
  t.theta.reserve(f.values().size());
  for (double v : f.values()) {
    t.theta.push_back(2.0 * std::asin(std::sqrt(v)));
  }
  return t;
}

MultilinearExpansion mobius_transform(const AngleTable& t) {
  check_table(t.n_qubits, t.theta.size());
  MultilinearExpansion e{t.n_qubits, t.theta};
  auto& a = e.coeff;
  const std::size_t len = a.size();
  for (std::size_t bit = 1; bit < len; bit <<= 1) {
    for (std::size_t i = 0; i < len; ++i) {
      if (i & bit) a[i] -= a[i ^ bit];
    }
  }
  return e;
}

AngleTable zeta_transform(const MultilinearExpansion& e) {
  check_table(e.n_qubits, e.coeff.size());
  AngleTable t{e.n_qubits, e.coeff};
  auto& a = t.theta;
  const std::size_t len = a.size();
  for (std::size_t bit = 1; bit < len; bit <<= 1) {
    for (std::size_t i = 0; i < len; ++i) {
      if (i & bit) a[i] += a[i ^ bit];
    }
  }
  return t;
}

int degree(const MultilinearExpansion& e, double zero_tol) {
  if (!(zero_tol > 0.0)) throw ParameterError("zero_tol must be positive");
  int deg = 0;
  for (std::size_t m = 0; m < e.coeff.size(); ++m) {
    if (std::abs(e.coeff[m]) > zero_tol) {
      deg = std::max(deg, popcount(static_cast<std::uint32_t>(m)));
    }
  }
  return deg;
}

std::vector<double> walsh_hadamard(std::span<const double> values) {
  log2_exact(values.size());
  std::vector<double> a(values.begin(), values.end());
  const double norm = 1.0 / std::sqrt(2.0);
  const std::size_t len = a.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j];
        const double y = a[j + h];
        a[j] = (x + y) * norm;
        a[j + h] = (x - y) * norm;
      }
    }
  }
  return a;
}

int pm1_degree(const AngleTable& t, double zero_tol) {
  check_table(t.n_qubits, t.theta.size());
  if (!(zero_tol > 0.0)) throw ParameterError("zero_tol must be positive");
  const auto w = walsh_hadamard(t.theta);
  int deg = 0;
  for (std::size_t m = 0; m < w.size(); ++m) {
    if (std::abs(w[m]) > zero_tol) {
      deg = std::max(deg, popcount(static_cast<std::uint32_t>(m)));
    }
  }
  return deg;
}

MembershipReport check_membership(const GridFunction& f, int d,
                                  double zero_tol) {
  return check_membership(build_angle_table(f), d, zero_tol);
}

MembershipReport check_membership(const AngleTable& t, int d,
                                  double zero_tol) {
  check_table(t.n_qubits, t.theta.size());
  if (d < 0 || d > t.n_qubits) {
    throw ParameterError("requested degree must lie in [0, n]");
  }
  MembershipReport r;
  r.n_qubits = t.n_qubits;
  r.requested_degree = d;
  r.zero_tol = zero_tol;
  r.expansion = mobius_transform(t);
  r.degree = degree(r.expansion, zero_tol);
  r.member = r.degree <= d;
  for (std::size_t m = 0; m < r.expansion.coeff.size(); ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    const double c = r.expansion.coeff[m];
    if (popcount(mask) > d && std::abs(c) > zero_tol) {
      r.violations.push_back({mask, c});
    }
  }
  if (d == 1) {
    // Unnormalised Walsh sums: undo the 2^{-n/2} of the orthonormal WHT.
    auto w = walsh_hadamard(t.theta);
    const double scale = std::sqrt(static_cast<double>(w.size()));
    std::vector<SubsetCoefficient> residuals;
    for (std::size_t m = 0; m < w.size(); ++m) {
      const auto mask = static_cast<std::uint32_t>(m);
      if (popcount(mask) >= 2) residuals.push_back({mask, w[m] * scale});
    }
    r.affine_residuals = std::move(residuals);
  }
  return r;
}

AngleTable joint_addition_table(const AngleTable& theta_g,
                                const AngleTable& theta_h) {
  if (theta_g.n_qubits != theta_h.n_qubits ||
      theta_g.theta.size() != theta_h.theta.size()) {
    throw ParameterError("addition tables must share the register size");
  }
  check_table(theta_g.n_qubits, theta_g.theta.size());
  check_qubits(theta_g.n_qubits + 1);
  AngleTable joint;
  joint.n_qubits = theta_g.n_qubits + 1;
  joint.theta = theta_g.theta;
  joint.theta.insert(joint.theta.end(), theta_h.theta.begin(),
                     theta_h.theta.end());
  return joint;
}

}  // namespace qaeint::angles
