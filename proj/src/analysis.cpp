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

#include "qaeint/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "qaeint/errors.hpp"
#include "qaeint/simulator.hpp"

namespace qaeint::analysis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kSat = std::numeric_limits<std::int64_t>::max();

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  return a > kSat - b ? kSat : a + b;
}

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a != 0 && b > kSat / a) return kSat;
  return a * b;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

void CostModel::validate() const {
  if (!(C_est > 0.0) || !std::isfinite(C_est)) {
    throw ParameterError("C_est must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("delta must lie in (0, 1)");
  }
}

std::int64_t CostModel::oracle_calls(double eps) const {
  validate();
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  const double m = std::ceil(2.0 * C_est / (eps * std::sqrt(delta)));
  if (m >= 9.0e18) return kSat;
  return static_cast<std::int64_t>(m);
}

std::int64_t binomial_prefix(int n, int d) {
  if (n < 0) throw ParameterError("n must be >= 0");
  if (d < 0 || d > n) d = n;
  std::int64_t c = 1;  // C(n, k)
  std::int64_t total = 1;
  for (int k = 0; k < d; ++k) {
    if (c == kSat) return kSat;
    // C(n, k+1) = C(n, k) (n-k)/(k+1), reduced first so it cannot overflow
    // unless the result does.
    const std::int64_t g = std::gcd(c, std::int64_t{k + 1});
    c = sat_mul(c / g, (n - k) / ((k + 1) / g));
    total = sat_add(total, c);
  }
  return total;
}

std::vector<TradeoffPoint> tradeoff_curve(integ::Rule rule, int d,
                                          double deriv_sup,
                                          const CostModel& model,
                                          const std::vector<double>& eps_grid) {
  model.validate();
  if (eps_grid.empty()) throw ParameterError("eps grid is empty");
  const double p = integ::order(rule);
  auto total_at = [&](double eps, TradeoffPoint& pt) {
    pt.eps = eps;
    pt.n_star = integ::min_qubits(rule, eps, deriv_sup);
    pt.M = model.oracle_calls(eps);
    pt.gates_per_call = binomial_prefix(pt.n_star, d);
    pt.total_gates = sat_mul(pt.gates_per_call, pt.M);
  };
  TradeoffPoint ref;
  total_at(kNormalisationEps, ref);
  std::vector<TradeoffPoint> out;
  for (double eps : eps_grid) {
    if (!(eps > 0.0)) throw ParameterError("eps values must be positive");
    TradeoffPoint pt;
    total_at(eps, pt);
    pt.classical_mc_cost = std::pow(eps / kNormalisationEps, -(2.0 + 1.0 / p));
    pt.quantum_normalized = static_cast<double>(pt.total_gates) /
                            static_cast<double>(ref.total_gates);
    out.push_back(pt);
  }
  return out;
}

SeparationFunction::SeparationFunction(double s, int n, double gamma,
                                       std::vector<double> c, double trunc_tol)
    : s_(s), n_(n), gamma_(gamma), c_(std::move(c)), trunc_tol_(trunc_tol) {
  if (!(s > 0.0 && s < 0.5)) {
    throw ParameterError("regularity s must lie in (0, 1/2)");
  }
  if (n < 1 || n > angles::kMaxQubits) {
    throw ParameterError("qubit count outside the supported range");
  }
  if (c_.size() != static_cast<std::size_t>(n)) {
    throw ParameterError("need one coefficient c_k per qubit");
  }
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0.0 || !std::isfinite(c_[k])) {
      std::ostringstream os;
      os << "coefficient c_" << k << " must be finite and non-zero";
      throw ParameterError(os.str());
    }
  }
  if (!(trunc_tol > 0.0 && trunc_tol < 1.0)) {
    throw ParameterError("trunc_tol must lie in (0, 1)");
  }
  while (std::exp2(-trunc_M_ * s_) >= trunc_tol_) ++trunc_M_;
  Z_s_ = 1.0 / (1.0 - std::exp2(-s_));

  const std::size_t N = std::size_t{1} << n;
  theta_.resize(N);
  v_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    double th = gamma_;
    for (int k = 0; k < n; ++k) {
      if (i >> k & 1) th += c_[k];
    }
    if (!(th >= 0.0 && th <= kPi)) {
      std::ostringstream os;
      os << "angle " << th << " at grid index " << i << " outside [0, pi]";
      throw ParameterError(os.str());
    }
    theta_[i] = th;
    const double half = std::sin(0.5 * th);
    v_[i] = half * half;
  }
}

double SeparationFunction::tail_bound() const {
  return std::exp2(-trunc_M_ * s_);
}

angles::AngleTable SeparationFunction::angle_table() const {
  return {n_, theta_};
}

double SeparationFunction::w(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("w_s argument outside [0, 1]");
  double u = t;
  double sum = 0.0;
  for (int m = 0; m < trunc_M_; ++m) {
    const double phi = std::sin(kPi * u);
    sum += std::exp2(-m * s_) * phi * phi;
    u *= 2.0;
    if (u >= 1.0) u -= 1.0;
  }
  return sum / Z_s_;
}

double SeparationFunction::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("g_s argument outside [0, 1]");
  const std::size_t N = v_.size();
  const double scaled = x * static_cast<double>(N);
  const auto i = static_cast<std::size_t>(std::floor(scaled));
  if (i >= N) return v_[0];
  const double t = scaled - static_cast<double>(i);
  const double next = i + 1 < N ? v_[i + 1] : v_[0];
  if (t == 0.0) return v_[i];
  return v_[i] + (next - v_[i]) * w(t);
}

integ::Callable SeparationFunction::callable() const {
  auto self = std::make_shared<const SeparationFunction>(*this);
  return [self](double x) { return (*self)(x); };
}

SeparationFunction build_gs(double s, int n, double gamma,
                            std::vector<double> c, double trunc_tol) {
  if (c.empty()) {
    if (n < 1) throw ParameterError("qubit count must be >= 1");
    for (int k = 0; k < n; ++k) c.push_back(kPi / std::exp2(k + 2));
  }
  SeparationFunction f(s, n, gamma, std::move(c), trunc_tol);
  const auto e = angles::mobius_transform(f.angle_table());
  if (angles::degree(e) != 1) {
    throw InternalConsistencyError("separation angle table is not affine");
  }
  return f;
}

SeparationFunction build_gs(double s, int n) {
  return build_gs(s, n, kPi / 4.0, {});
}

SeriesReport sobolev_series(double s, double s_prime, int m_max) {
  if (!(s > 0.0 && s < 0.5)) {
    throw ParameterError("regularity s must lie in (0, 1/2)");
  }
  if (!(s_prime >= 0.0)) throw ParameterError("s' must be >= 0");
  if (m_max < 0) throw ParameterError("m_max must be >= 0");
  SeriesReport r;
  r.s = s;
  r.s_prime = s_prime;
  r.ratio = std::exp2(2.0 * (s_prime - s));
  const double inv_z = 1.0 - std::exp2(-s);
  r.prefactor = 0.125 * inv_z * inv_z;
  double sum = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    sum += r.prefactor * std::pow(r.ratio, m);
    r.partial_sums.push_back(sum);
  }
  r.convergent = r.ratio < 1.0;
  if (r.convergent) r.limit = r.prefactor / (1.0 - r.ratio);
  return r;
}

std::vector<SeparationPoint> separation_curve(
    const std::vector<double>& s_grid, const std::vector<double>& eps_grid,
    const CostModel& model, double c_s) {
  model.validate();
  if (s_grid.empty()) throw ParameterError("s grid is empty");
  if (eps_grid.empty()) throw ParameterError("eps grid is empty");
  if (!(c_s > 0.0)) throw ParameterError("c_s must be positive");
  std::vector<SeparationPoint> out;
  for (double s : s_grid) {
    if (!(s > 0.0 && s <= 0.5)) {
      std::ostringstream os;
      os << "regularity s = " << s << " outside (0, 1/2]";
      throw ParameterError(os.str());
    }
    for (double eps : eps_grid) {
      SeparationPoint pt;
      pt.s = s;
      pt.eps = eps;
      pt.M = model.oracle_calls(eps);
      if (s == 0.5) {
        pt.boundary = true;
        pt.N = std::numeric_limits<double>::quiet_NaN();
        pt.ratio = std::numeric_limits<double>::quiet_NaN();
      } else {
        pt.N = std::pow(c_s / eps, 1.0 / s);
        pt.ratio = static_cast<double>(pt.M) / pt.N;
      }
      out.push_back(pt);
    }
  }
  return out;
}

double TrialSet::rmse() const {
  if (errors.empty()) throw InsufficientDataError("no trial errors");
  double s = 0.0;
  for (double e : errors) s += e * e;
  return std::sqrt(s / static_cast<double>(errors.size()));
}

CestFit fit_cest(const std::vector<TrialSet>& trials) {
  std::set<std::int64_t> distinct;
  for (const auto& t : trials) {
    if (t.M < 1) throw ParameterError("cost level M must be >= 1");
    if (t.errors.size() < 50) {
      std::ostringstream os;
      os << "cost level M = " << t.M << " has " << t.errors.size()
         << " seeds; at least 50 are needed";
      throw InsufficientDataError(os.str());
    }
    distinct.insert(t.M);
  }
  if (distinct.size() < 5 || distinct.size() != trials.size()) {
    throw InsufficientDataError(
        "fit needs at least 5 distinct cost levels, one trial set each");
  }
  CestFit fit;
  std::vector<double> x, y;
  for (const auto& t : trials) {
    const double r = t.rmse();
    if (!(r > 0.0)) throw InsufficientDataError("zero RMSE cannot be fitted");
    fit.M.push_back(t.M);
    fit.rmse.push_back(r);
    x.push_back(std::log(static_cast<double>(t.M)));
    y.push_back(std::log(r));
  }
  const double k = static_cast<double>(x.size());
  double log_c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) log_c += y[i] + x[i];
  fit.C = std::exp(log_c / k);

  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

std::vector<TrialSet> run_mlae_trials(const angles::MultilinearExpansion& e,
                                      const TrialHarness& h) {
  if (h.max_level < 0 || h.shots < 1 || h.seeds < 1) {
    throw ParameterError("invalid trial harness parameters");
  }
  std::vector<int> levels;
  for (int k = 0; k <= h.max_level; ++k) levels.push_back(k);
  const auto probs = est::simulate_levels(e, levels);
  const double a_true = probs[0];

  std::vector<TrialSet> out;
  for (int j = 0; j <= h.max_level; ++j) {
    std::vector<int> ks(levels.begin(), levels.begin() + j + 1);
    const auto sched = est::Schedule::uniform(ks, h.shots);
    const std::vector<double> ps(probs.begin(), probs.begin() + j + 1);
    TrialSet set;
    set.M = h.shots * static_cast<std::int64_t>(j + 1) * (j + 1);
    for (int t = 0; t < h.seeds; ++t) {
      const auto seed = sim::derive_seed(h.master_seed,
                                         static_cast<std::uint64_t>(j),
                                         static_cast<std::uint64_t>(t));
      const auto recs =
          est::records_from_probs(sched, ps, est::ShotMode::Stochastic, seed);
      set.errors.push_back(est::mlae(recs, h.mlae).a_hat - a_true);
    }
    out.push_back(std::move(set));
  }
  return out;
}

void write_tradeoff_csv(
    std::ostream& os,
    const std::vector<std::pair<int, std::vector<TradeoffPoint>>>& curves) {
  os << "d,eps,n_star,M,gates_per_call,total_gates,classical_cost,"
        "quantum_normalized\n";
  for (const auto& [d, pts] : curves) {
    for (const auto& p : pts) {
      os << (d < 0 ? std::string("generic") : std::to_string(d)) << ','
         << num(p.eps) << ',' << p.n_star << ',' << p.M << ','
         << p.gates_per_call << ',' << p.total_gates << ','
         << num(p.classical_mc_cost) << ',' << num(p.quantum_normalized)
         << '\n';
    }
  }
}

void write_separation_csv(std::ostream& os,
                          const std::vector<SeparationPoint>& points) {
  os << "s,eps,M,N,ratio\n";
  for (const auto& p : points) {
    os << num(p.s) << ',' << num(p.eps) << ',' << p.M << ',';
    if (p.boundary) {
      os << "boundary,boundary\n";
    } else {
      os << num(p.N) << ',' << num(p.ratio) << '\n';
    }
  }
}

void write_sobolev_csv(std::ostream& os,
                       const std::vector<SeriesReport>& reports) {
  os << "s,s_prime,partial_sum,limit_or_divergent\n";
  for (const auto& r : reports) {
    os << num(r.s) << ',' << num(r.s_prime) << ','
       << num(r.partial_sums.empty() ? 0.0 : r.partial_sums.back()) << ','
       << (r.limit ? num(*r.limit) : std::string("divergent")) << '\n';
  }
}

}  // namespace qaeint::analysis
