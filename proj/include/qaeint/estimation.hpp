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
 * Maximum-likelihood amplitude estimation over a schedule of Grover powers.
 *
 * The likelihood is parametrised by theta in [0, pi/2] with a = sin^2 theta
 * and p_k = sin^2((2k+1) theta).
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qaeint/angles.hpp"
#include "qaeint/encoder.hpp"
#include "qaeint/integrate.hpp"

namespace qaeint::est {

inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// sin^2((2k+1) asin(sqrt(a))); exactly a at k = 0.
double model_prob(double a, int k);

struct DegeneracyReport {
  std::vector<int> levels;
  /// a is 0 or 1, so every level is degenerate.
  bool boundary_amplitude = false;

  bool contains(int k) const;
};

/// Levels k <= k_max with p_k(a) within tol of 0 or 1.
DegeneracyReport degenerate_levels(double a, int k_max,
                                   double tol = kDefaultDegeneracyTol);

struct Schedule {
  std::vector<int> levels;
  std::vector<std::int64_t> shots;

  /// Throws ParameterError unless non-empty, strictly increasing, k >= 0
  /// and every N_k >= 1.
  void validate() const;
  static Schedule uniform(std::vector<int> levels, std::int64_t shots);
};

bool is_admissible(const Schedule& s, double a,
                   double tol = kDefaultDegeneracyTol);

/// sum_k N_k (2k+1)^2 / (a(1-a)); empty when a level is degenerate.
std::optional<double> fisher_info(double a, const Schedule& s,
                                  double tol = kDefaultDegeneracyTol);
/// 1 / fisher_info.
std::optional<double> cramer_rao_bound(double a, const Schedule& s,
                                       double tol = kDefaultDegeneracyTol);

struct ShotRecord {
  int k = 0;
  std::int64_t N = 0;
  /// Integer in stochastic mode, N p in exact mode.
  double m = 0.0;
};

enum class ShotMode { Exact, Stochastic };

const char* mode_name(ShotMode mode);
ShotMode mode_from_name(const std::string& name);

/// Ancilla probabilities of Q^k A_g for each level, simulated in parallel.
std::vector<double> simulate_levels(const angles::MultilinearExpansion& e,
                                    const std::vector<int>& levels,
                                    const enc::EncodingOptions& opts = {});

/// Records from known level probabilities. Stochastic counts use the stream
/// derive_seed(seed, k, 0) for level k.
std::vector<ShotRecord> records_from_probs(const Schedule& s,
                                           const std::vector<double>& probs,
                                           ShotMode mode, std::uint64_t seed);

std::vector<ShotRecord> collect_shots(const angles::MultilinearExpansion& e,
                                      const Schedule& s, ShotMode mode,
                                      std::uint64_t seed,
                                      const enc::EncodingOptions& opts = {});

struct MlaeOptions {
  int scan_points = 100000;
  double refine_tol = 1e-12;
  double p_floor = 1e-12;
  /// Local maxima within this many log-units of the global one are kept.
  double bimodal_window = 2.0;
};

struct LocalMaximum {
  double theta = 0.0;
  double a = 0.0;
  double loglik = 0.0;
};

struct Component {
  std::string rule;
  double a_hat = 0.0;
  std::uint64_t seed = 0;
};

struct EstimationResult {
  double a_hat = 0.0;
  double theta_hat = 0.0;
  double loglik_at_max = 0.0;
  /// Integral estimate; equals a_hat except for combined rules.
  double I_hat = 0.0;
  std::optional<double> fisher;
  std::optional<double> cr_bound;
  std::vector<ShotRecord> records;
  /// Sorted by theta; includes the global maximum.
  std::vector<LocalMaximum> local_maxima;
  ShotMode mode = ShotMode::Exact;
  std::optional<std::uint64_t> seed;
  std::string rule;
  int n_qubits = 0;
  int encoded_degree = 0;
  std::vector<Component> components;
  std::vector<std::string> warnings;

  /// Local maxima other than the global one.
  std::size_t secondary_maxima() const;
};

/// l(theta) with p clamped to [p_floor, 1 - p_floor].
double loglik(double theta, const std::vector<ShotRecord>& records,
              double p_floor = 1e-12);

EstimationResult mlae(const std::vector<ShotRecord>& records,
                      const MlaeOptions& opts = {});

struct EstimateOptions {
  MlaeOptions mlae;
  enc::EncodingOptions encoding;
  double degeneracy_tol = kDefaultDegeneracyTol;
};

/// Encode -> Grover -> MLAE for one grid function; I_hat = a_hat.
EstimationResult estimate_amplitude(const angles::GridFunction& f,
                                    const Schedule& s, ShotMode mode,
                                    std::uint64_t seed,
                                    const EstimateOptions& opts = {});

/// Samples f for the rule and runs the pipeline. Simpson runs the left,
/// midpoint and right pipelines with derived seeds and combines them as
/// (L + 4M + R)/6; the top-level fields then describe the midpoint run.
EstimationResult estimate_integral(const integ::Callable& f, integ::Rule rule,
                                   int n, const Schedule& s, ShotMode mode,
                                   std::uint64_t seed,
                                   const EstimateOptions& opts = {});
EstimationResult estimate_integral(const integ::TestFunction& f,
                                   integ::Rule rule, int n, const Schedule& s,
                                   ShotMode mode, std::uint64_t seed,
                                   const EstimateOptions& opts = {});

}  // namespace qaeint::est
