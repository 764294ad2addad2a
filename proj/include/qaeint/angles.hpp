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
 * Angle tables on the n-bit hypercube and their multilinear structure.
 *
 * Every array in this module is indexed by the little-endian grid index
 * i(b) = sum_k b_k 2^k, so bit k of an array position is coordinate b_k and
 * a coefficient position m stands for the subset S = supp(m).
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qaeint::angles {

/// Largest register size for which dense tables are built.
inline constexpr int kMaxQubits = 24;

/// Default absolute threshold below which a coefficient counts as zero.
inline constexpr double kDefaultZeroTol = 1e-9;

/// Uniform grid x_i = (i + offset) / 2^n, i = 0..2^n-1.
struct GridSpec {
  int n_qubits = 1;
  /// 0 for left endpoints, 1/2 for cell midpoints, 1 for right endpoints.
  double sample_offset = 0.0;

  std::size_t size() const { return std::size_t{1} << n_qubits; }
  double point(std::size_t i) const;
};

/// Values of a function sampled on a GridSpec; every value lies in [0,1].
class GridFunction {
 public:
  /// Throws DomainError naming the first index whose value is outside
  /// [0,1], ParameterError on a size mismatch.
  GridFunction(GridSpec grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  int n_qubits() const { return grid_.n_qubits; }
  std::span<const double> values() const { return values_; }

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// theta[i(b)] = Theta_g(b) in [0, pi].
struct AngleTable {
  int n_qubits = 0;
  std::vector<double> theta;
};

/// Coefficients of the unique multilinear polynomial
/// f(b) = sum_S coeff[S] prod_{j in S} b_j, stored densely by subset mask.
struct MultilinearExpansion {
  int n_qubits = 0;
  std::vector<double> coeff;

  int degree(double zero_tol = kDefaultZeroTol) const;
};

struct SubsetCoefficient {
  std::uint32_t subset_mask = 0;
  double coeff = 0.0;
};

struct MembershipReport {
  int n_qubits = 0;
  int requested_degree = 0;
  int degree = 0;
  double zero_tol = kDefaultZeroTol;
  bool member = false;
  MultilinearExpansion expansion;
  /// Subsets with |S| > d whose coefficient exceeds zero_tol.
  std::vector<SubsetCoefficient> violations;
  /// Only for d = 1: sum_b (-1)^{|S & supp(b)|} theta_b for every |S| >= 2.
  std::optional<std::vector<SubsetCoefficient>> affine_residuals;
};

int popcount(std::uint32_t mask);

/// theta[i] = 2 asin(sqrt(values[i])).
AngleTable build_angle_table(const GridFunction& f);

/// Subset-lattice Moebius inversion, n passes of 2^(n-1) butterflies.
MultilinearExpansion mobius_transform(const AngleTable& t);

/// Inverse of mobius_transform (subset-sum / zeta transform).
AngleTable zeta_transform(const MultilinearExpansion& e);

int degree(const MultilinearExpansion& e, double zero_tol = kDefaultZeroTol);

/// Membership of f in the class of angle maps of degree <= d.
MembershipReport check_membership(const GridFunction& f, int d,
                                  double zero_tol = kDefaultZeroTol);
MembershipReport check_membership(const AngleTable& t, int d,
                                  double zero_tol = kDefaultZeroTol);

/// Orthonormal Walsh-Hadamard transform (H^{\otimes n} with 1/sqrt(2) per
/// stage) of a power-of-two length table.
std::vector<double> walsh_hadamard(std::span<const double> values);

/// Degree measured in the +-1 parity basis via walsh_hadamard.
int pm1_degree(const AngleTable& t, double zero_tol = kDefaultZeroTol);

/// Angle table over (b, beta) for the shared-ancilla addition construction:
/// value (1 - beta) * theta_g(b) + beta * theta_h(b), with beta as bit n.
AngleTable joint_addition_table(const AngleTable& theta_g,
                                const AngleTable& theta_h);

}  // namespace qaeint::angles
