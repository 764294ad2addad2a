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

#include "qaeint/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "qaeint/errors.hpp"
#include "qaeint/simulator.hpp"

namespace qaeint::est {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double sq(double x) { return x * x; }

void check_amplitude(double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    std::ostringstream os;
    os << "amplitude " << a << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

void check_records(const std::vector<ShotRecord>& records) {
  if (records.empty()) throw ParameterError("MLAE needs at least one record");
  for (const auto& r : records) {
    if (r.k < 0 || r.N < 1 || !(r.m >= 0.0 && r.m <= static_cast<double>(r.N))) {
      std::ostringstream os;
      os << "invalid shot record (k=" << r.k << ", N=" << r.N << ", m=" << r.m
         << ")";
      throw ParameterError(os.str());
    }
  }
}

double clamp_p(double p, double floor) {
  return std::clamp(p, floor, 1.0 - floor);
}

double dloglik(double theta, const std::vector<ShotRecord>& records,
               double p_floor) {
  double d = 0.0;
  for (const auto& r : records) {
    const double j = 2.0 * r.k + 1.0;
    const double p = clamp_p(sq(std::sin(j * theta)), p_floor);
    const double dp = j * std::sin(2.0 * j * theta);
    const double N = static_cast<double>(r.N);
    d += r.m * dp / p - (N - r.m) * dp / (1.0 - p);
  }
  return d;
}

std::optional<double> fisher_from_records(const std::vector<ShotRecord>& recs,
                                          double a, double tol) {
  if (a <= 0.0 || a >= 1.0) return std::nullopt;
  double total = 0.0;
  for (const auto& r : recs) {
    const double p = model_prob(a, r.k);
    if (p <= tol || p >= 1.0 - tol) return std::nullopt;
    total += static_cast<double>(r.N) * sq(2.0 * r.k + 1.0) / (a * (1.0 - a));
  }
  return total;
}

std::vector<double> scan_loglik(const std::vector<ShotRecord>& records,
                                const MlaeOptions& opts) {
  const int S = opts.scan_points;
  std::vector<double> ll(S);
  const double step = kHalfPi / static_cast<double>(S - 1);
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      ll[i] = loglik(step * i, records, opts.p_floor);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int chunks = static_cast<int>(std::min<unsigned>(hw, 8));
  if (chunks <= 1 || S < 20000) {
    work(0, S);
    return ll;
  }
  std::vector<std::thread> pool;
  const int per = (S + chunks - 1) / chunks;
  for (int c = 0; c < chunks; ++c) {
    const int b = c * per;
    const int e = std::min(S, b + per);
    if (b < e) pool.emplace_back(work, b, e);
  }
  for (auto& t : pool) t.join();
  return ll;
}

LocalMaximum refine(const std::vector<ShotRecord>& records,
                    const MlaeOptions& opts, double lo, double hi,
                    double theta_scan, double ll_scan) {
  auto f = [&](double t) { return loglik(t, records, opts.p_floor); };
  double theta_star;
  if (dloglik(lo, records, opts.p_floor) > 0.0 &&
      dloglik(hi, records, opts.p_floor) < 0.0) {
    while (hi - lo > opts.refine_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (dloglik(mid, records, opts.p_floor) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    theta_star = 0.5 * (lo + hi);
  } else {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > opts.refine_tol) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = f(x2);
      }
      if (!(x1 > lo && x2 < hi)) break;
    }
    theta_star = 0.5 * (lo + hi);
  }
  const double ll_star = f(theta_star);
  if (ll_star > ll_scan) {
    return {theta_star, sq(std::sin(theta_star)), ll_star};
  }
  return {theta_scan, sq(std::sin(theta_scan)), ll_scan};
}

std::string schedule_text(const Schedule& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    if (i) os << ",";
    os << s.levels[i];
  }
  os << "}";
  return os.str();
}

}  // namespace

double model_prob(double a, int k) {
  check_amplitude(a);
  if (k < 0) throw ParameterError("level k must be >= 0");
  if (k == 0) return a;
  const double theta = std::asin(std::sqrt(a));
  return std::clamp(sq(std::sin((2.0 * k + 1.0) * theta)), 0.0, 1.0);
}

bool DegeneracyReport::contains(int k) const {
  return std::find(levels.begin(), levels.end(), k) != levels.end();
}

DegeneracyReport degenerate_levels(double a, int k_max, double tol) {
  check_amplitude(a);
  if (k_max < 0) throw ParameterError("k_max must be >= 0");
  if (!(tol >= 0.0)) throw ParameterError("tolerance must be >= 0");
  DegeneracyReport r;
  r.boundary_amplitude = a == 0.0 || a == 1.0;
  for (int k = 0; k <= k_max; ++k) {
    const double p = model_prob(a, k);
    if (r.boundary_amplitude || std::abs(p) <= tol ||
        std::abs(p - 1.0) <= tol) {
      r.levels.push_back(k);
    }
  }
  return r;
}

void Schedule::validate() const {
  if (levels.empty()) throw ParameterError("schedule has no levels");
  if (shots.size() != levels.size()) {
    throw ParameterError("schedule needs one shot count per level");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0) throw ParameterError("schedule levels must be >= 0");
    if (i > 0 && levels[i] <= levels[i - 1]) {
      throw ParameterError("schedule levels must be strictly increasing");
    }
    if (shots[i] < 1) throw ParameterError("shot counts must be >= 1");
  }
}

Schedule Schedule::uniform(std::vector<int> levels, std::int64_t shots) {
  Schedule s;
  s.shots.assign(levels.size(), shots);
  s.levels = std::move(levels);
  s.validate();
  return s;
}

bool is_admissible(const Schedule& s, double a, double tol) {
  s.validate();
  const auto deg = degenerate_levels(a, s.levels.back(), tol);
  return std::none_of(s.levels.begin(), s.levels.end(),
                      [&](int k) { return deg.contains(k); });
}

std::optional<double> fisher_info(double a, const Schedule& s, double tol) {
  s.validate();
  check_amplitude(a);
  std::vector<ShotRecord> recs;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    recs.push_back({s.levels[i], s.shots[i], 0.0});
  }
  return fisher_from_records(recs, a, tol);
}

std::optional<double> cramer_rao_bound(double a, const Schedule& s,
                                       double tol) {
  auto info = fisher_info(a, s, tol);
  if (!info) return std::nullopt;
  return 1.0 / *info;
}

const char* mode_name(ShotMode mode) {
  return mode == ShotMode::Exact ? "exact" : "stochastic";
}

ShotMode mode_from_name(const std::string& name) {
  if (name == "exact") return ShotMode::Exact;
  if (name == "stochastic") return ShotMode::Stochastic;
  throw ParameterError("unknown shot mode '" + name + "'");
}

std::vector<double> simulate_levels(const angles::MultilinearExpansion& e,
                                    const std::vector<int>& levels,
                                    const enc::EncodingOptions& opts) {
  const int anc = e.n_qubits;
  std::vector<std::future<double>> jobs;
  jobs.reserve(levels.size());
  for (int k : levels) {
    jobs.push_back(std::async(std::launch::async, [&e, &opts, k, anc] {
      const auto c = enc::build_grover_power(e, k, opts);
      const auto v = sim::apply(c, sim::initial_state(c.n_qubits));
      return sim::ancilla_prob1(v, anc);
    }));
  }
  std::vector<double> probs;
  probs.reserve(levels.size());
  for (auto& j : jobs) probs.push_back(j.get());
  return probs;
}

std::vector<ShotRecord> records_from_probs(const Schedule& s,
                                           const std::vector<double>& probs,
                                           ShotMode mode, std::uint64_t seed) {
  s.validate();
  if (probs.size() != s.levels.size()) {
    throw ParameterError("need one probability per schedule level");
  }
  std::vector<ShotRecord> out;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const int k = s.levels[i];
    const std::int64_t N = s.shots[i];
    double m;
    if (mode == ShotMode::Exact) {
      m = static_cast<double>(N) * probs[i];
    } else {
      m = static_cast<double>(sim::sample_binomial(
          probs[i], N, sim::derive_seed(seed, static_cast<std::uint64_t>(k), 0)));
    }
    out.push_back({k, N, m});
  }
  return out;
}

std::vector<ShotRecord> collect_shots(const angles::MultilinearExpansion& e,
                                      const Schedule& s, ShotMode mode,
                                      std::uint64_t seed,
                                      const enc::EncodingOptions& opts) {
  s.validate();
  return records_from_probs(s, simulate_levels(e, s.levels, opts), mode, seed);
}

std::size_t EstimationResult::secondary_maxima() const {
  return local_maxima.empty() ? 0 : local_maxima.size() - 1;
}

double loglik(double theta, const std::vector<ShotRecord>& records,
              double p_floor) {
  double ll = 0.0;
  for (const auto& r : records) {
    const double p =
        clamp_p(sq(std::sin((2.0 * r.k + 1.0) * theta)), p_floor);
    const double N = static_cast<double>(r.N);
    if (r.m > 0.0) ll += r.m * std::log(p);
    if (N - r.m > 0.0) ll += (N - r.m) * std::log1p(-p);
  }
  return ll;
}

EstimationResult mlae(const std::vector<ShotRecord>& records,
                      const MlaeOptions& opts) {
  check_records(records);
  if (opts.scan_points < 3) throw ParameterError("scan needs >= 3 points");
  if (!(opts.refine_tol > 0.0)) throw ParameterError("refine_tol must be > 0");
  if (!(opts.p_floor > 0.0 && opts.p_floor < 0.5)) {
    throw ParameterError("p_floor must lie in (0, 1/2)");
  }
  const int S = opts.scan_points;
  const double step = kHalfPi / static_cast<double>(S - 1);
  const auto ll = scan_loglik(records, opts);

  double best_scan = ll[0];
  for (int i = 1; i < S; ++i) best_scan = std::max(best_scan, ll[i]);

  std::vector<LocalMaximum> maxima;
  for (int i = 0; i < S; ++i) {
    const bool up = i == 0 || ll[i] > ll[i - 1];
    const bool down = i == S - 1 || ll[i] >= ll[i + 1];
    if (!(up && down)) continue;
    // Refinement can only raise a peak by a sliver; the extra unit keeps
    // borderline peaks in play until they are refined.
    if (ll[i] < best_scan - opts.bimodal_window - 1.0) continue;
    const double lo = step * std::max(i - 1, 0);
    const double hi = std::min(step * std::min(i + 1, S - 1), kHalfPi);
    maxima.push_back(refine(records, opts, lo, hi, step * i, ll[i]));
  }

  std::size_t g = 0;
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    if (maxima[i].loglik > maxima[g].loglik) g = i;
  }
  const LocalMaximum global = maxima[g];
  std::vector<LocalMaximum> kept;
  for (const auto& m : maxima) {
    if (m.loglik >= global.loglik - opts.bimodal_window) kept.push_back(m);
  }

  EstimationResult r;
  r.theta_hat = global.theta;
  r.a_hat = global.a;
  r.loglik_at_max = global.loglik;
  r.I_hat = r.a_hat;
  r.records = records;
  r.local_maxima = std::move(kept);
  r.fisher = fisher_from_records(records, r.a_hat, kDefaultDegeneracyTol);
  if (r.fisher) r.cr_bound = 1.0 / *r.fisher;
  return r;
}

EstimationResult estimate_amplitude(const angles::GridFunction& f,
                                    const Schedule& s, ShotMode mode,
                                    std::uint64_t seed,
                                    const EstimateOptions& opts) {
  s.validate();
  const auto expansion =
      angles::mobius_transform(angles::build_angle_table(f));
  const auto records = collect_shots(expansion, s, mode, seed, opts.encoding);
  EstimationResult r = mlae(records, opts.mlae);
  r.mode = mode;
  if (mode == ShotMode::Stochastic) r.seed = seed;
  r.n_qubits = f.n_qubits();
  r.encoded_degree = angles::degree(expansion, opts.encoding.zero_tol);

  const double a = integ::riemann_mean(f);
  if (!is_admissible(s, a, opts.degeneracy_tol)) {
    const auto deg = degenerate_levels(a, s.levels.back(), opts.degeneracy_tol);
    std::ostringstream os;
    os << "schedule " << schedule_text(s) << " is not admissible for a = " << a
       << ": degenerate level(s)";
    for (int k : s.levels) {
      if (deg.contains(k)) os << " " << k;
    }
    r.warnings.push_back(os.str());
  }
  return r;
}

EstimationResult estimate_integral(const integ::Callable& f, integ::Rule rule,
                                   int n, const Schedule& s, ShotMode mode,
                                   std::uint64_t seed,
                                   const EstimateOptions& opts) {
  using integ::Rule;
  if (rule != Rule::Simpson) {
    EstimationResult r =
        estimate_amplitude(integ::sample(f, rule, n), s, mode, seed, opts);
    r.rule = integ::rule_name(rule);
    return r;
  }
  const Rule parts[3] = {Rule::Left, Rule::Midpoint, Rule::Right};
  EstimationResult runs[3];
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t run_seed =
        sim::derive_seed(seed, static_cast<std::uint64_t>(i), 0x5150);
    runs[i] = estimate_amplitude(integ::sample(f, parts[i], n), s, mode,
                                 run_seed, opts);
  }
  EstimationResult r = runs[1];
  r.rule = integ::rule_name(Rule::Simpson);
  r.seed = mode == ShotMode::Stochastic ? std::optional(seed) : std::nullopt;
  r.I_hat = (runs[0].a_hat + 4.0 * runs[1].a_hat + runs[2].a_hat) / 6.0;
  r.encoded_degree = 0;
  r.warnings.clear();
  for (int i = 0; i < 3; ++i) {
    r.components.push_back({integ::rule_name(parts[i]), runs[i].a_hat,
                            runs[i].seed.value_or(0)});
    r.encoded_degree = std::max(r.encoded_degree, runs[i].encoded_degree);
    for (const auto& w : runs[i].warnings) {
      r.warnings.push_back(std::string(integ::rule_name(parts[i])) + ": " + w);
    }
  }
  return r;
}

EstimationResult estimate_integral(const integ::TestFunction& f,
                                   integ::Rule rule, int n, const Schedule& s,
                                   ShotMode mode, std::uint64_t seed,
                                   const EstimateOptions& opts) {
  return estimate_integral(f.g, rule, n, s, mode, seed, opts);
}

}  // namespace qaeint::est
