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
 * Resource trade-off curves, the g_s separation family, Sobolev series
 * diagnostics and calibration of the MLAE constant.
 *
 * Classical costs are normalised; no absolute classical constant is
 * claimed anywhere in this module.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "qaeint/angles.hpp"
#include "qaeint/estimation.hpp"
#include "qaeint/integrate.hpp"

namespace qaeint::analysis {

struct CostModel {
  /// Constant in the MLAE error law RMSE <= C_est / M.
  double C_est = 1.0;
  /// Failure probability slack of the Chebyshev bound.
  double delta = 0.25;

  void validate() const;
  /// ceil(2 C_est / (eps sqrt(delta))).
  std::int64_t oracle_calls(double eps) const;
};

/// sum_{k <= d} C(n, k), saturating at INT64_MAX.
std::int64_t binomial_prefix(int n, int d);

struct TradeoffPoint {
  double eps = 0.0;
  int n_star = 0;
  std::int64_t M = 0;
  std::int64_t gates_per_call = 0;
  std::int64_t total_gates = 0;
  /// (eps / 1e-4)^{-(2 + 1/p)}.
  double classical_mc_cost = 0.0;
  /// total_gates relative to its value at eps = 1e-4.
  double quantum_normalized = 0.0;
};

inline constexpr double kNormalisationEps = 1e-4;

/// d < 0 means no degree structure (d = n*).
std::vector<TradeoffPoint> tradeoff_curve(integ::Rule rule, int d,
                                          double deriv_sup,
                                          const CostModel& model,
                                          const std::vector<double>& eps_grid);

/// g_s(x) = v_i + (v_{i+1} - v_i) w_s(2^n x - i) with v_N = v_0 and
/// w_s(t) = Z_s^{-1} sum_{m < M} 2^{-ms} sin^2(pi frac(2^m t)).
class SeparationFunction {
 public:
  SeparationFunction(double s, int n, double gamma, std::vector<double> c,
                     double trunc_tol);

  double s() const { return s_; }
  int n_qubits() const { return n_; }
  double gamma() const { return gamma_; }
  const std::vector<double>& c() const { return c_; }
  double trunc_tol() const { return trunc_tol_; }
  int trunc_terms() const { return trunc_M_; }
  double Z_s() const { return Z_s_; }
  /// Uniform bound 2^{-Ms} on the dropped part of the Z_s-scaled series.
  double tail_bound() const;
  /// v_i = sin^2(Theta(b(i))/2).
  const std::vector<double>& grid_values() const { return v_; }
  angles::AngleTable angle_table() const;

  double w(double t) const;
  double operator()(double x) const;
  integ::Callable callable() const;

 private:
  double s_;
  int n_;
  double gamma_;
  std::vector<double> c_;
  double trunc_tol_;
  int trunc_M_ = 0;
  double Z_s_;
  std::vector<double> theta_;
  std::vector<double> v_;
};

/// s in (0, 1/2). Empty c selects c_k = pi / 2^{k+2}; gamma defaults to
/// pi/4 through the overload below.
SeparationFunction build_gs(double s, int n, double gamma,
                            std::vector<double> c, double trunc_tol = 1e-10);
SeparationFunction build_gs(double s, int n);

struct SeriesReport {
  double s = 0.0;
  double s_prime = 0.0;
  double ratio = 0.0;
  double prefactor = 0.0;
  /// partial_sums[m] sums the terms 0..m.
  std::vector<double> partial_sums;
  bool convergent = false;
  std::optional<double> limit;
};

/// (1/8)/Z_s^2 * sum_m 2^{2m(s'-s)}.
SeriesReport sobolev_series(double s, double s_prime, int m_max);

struct SeparationPoint {
  double s = 0.0;
  double eps = 0.0;
  std::int64_t M = 0;
  /// Normalised classical sample count (c_s/eps)^{1/s}.
  double N = 0.0;
  double ratio = 0.0;
  /// s = 1/2: the regularity boundary, not evaluated.
  bool boundary = false;
};

/// One row per (s, eps) in grid order.
std::vector<SeparationPoint> separation_curve(
    const std::vector<double>& s_grid, const std::vector<double>& eps_grid,
    const CostModel& model, double c_s = 1.0);

/// Absolute MLAE errors at one total cost M = sum_k N_k (2k+1).
struct TrialSet {
  std::int64_t M = 0;
  std::vector<double> errors;

  double rmse() const;
};

struct CestFit {
  /// exp(mean(log RMSE + log M)), the slope -1 fit.
  double C = 0.0;
  /// Free log-log least squares.
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::int64_t> M;
  std::vector<double> rmse;
};

/// Needs >= 5 distinct M and >= 50 errors per level; throws
/// InsufficientDataError otherwise.
CestFit fit_cest(const std::vector<TrialSet>& trials);

struct TrialHarness {
  int max_level = 4;
  std::int64_t shots = 256;
  int seeds = 200;
  std::uint64_t master_seed = 20260101;
  est::MlaeOptions mlae;
};

/// Stochastic MLAE on schedules {0..j}, j = 0..max_level. Level
/// probabilities are simulated once from e and shared by all schedules.
std::vector<TrialSet> run_mlae_trials(const angles::MultilinearExpansion& e,
                                      const TrialHarness& h = {});

void write_tradeoff_csv(std::ostream& os,
                        const std::vector<std::pair<int, std::vector<TradeoffPoint>>>& curves);
void write_separation_csv(std::ostream& os,
                          const std::vector<SeparationPoint>& points);
void write_sobolev_csv(std::ostream& os,
                       const std::vector<SeriesReport>& reports);

}  // namespace qaeint::analysis
