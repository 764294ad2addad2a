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

#include "qaeint/cli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qaeint/analysis.hpp"
#include "qaeint/angles.hpp"
#include "qaeint/encoder.hpp"
#include "qaeint/errors.hpp"
#include "qaeint/estimation.hpp"
#include "qaeint/integrate.hpp"
#include "qaeint/json_io.hpp"
#include "qaeint/simulator.hpp"

namespace qaeint::cli {

namespace {

using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string fn = "g1";
  std::string values_file;
  int n = 2;
  std::string rule = "left";
  double s = 0.25;
};

struct Output {
  std::string path;
  std::string format;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    parts.push_back(item.substr(b, e - b + 1));
  }
  return parts;
}

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  for (const auto& p : split(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size()) {
      throw UsageError(std::string(flag) + ": '" + p + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& text,
                                     const char* flag) {
  std::vector<std::int64_t> out;
  for (const auto& p : split(text)) {
    if (p == "generic") {
      out.push_back(-1);
      continue;
    }
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size()) {
      throw UsageError(std::string(flag) + ": '" + p + "' is not an integer");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QAE_SEED"); env && *env) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(env).size()) {
      throw UsageError("QAE_SEED must be a non-negative integer");
    }
    return v;
  }
  return 0;
}

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.path + "'");
  f << text;
}

void add_source(CLI::App* app, Source& src, bool with_rule = true) {
  app->add_option("--fn", src.fn, "Built-in integrand")
      ->check(CLI::IsMember({"g0", "g1", "g2", "gs"}));
  app->add_option("--values-file", src.values_file,
                  "JSON array of 2^n sampled values in [0,1]");
  app->add_option("--n", src.n, "Index qubits")->check(CLI::Range(1, 24));
  app->add_option("--s", src.s, "Regularity of gs, in (0, 1/2)");
  if (with_rule) {
    app->add_option("--rule", src.rule, "Quadrature rule")
        ->check(CLI::IsMember({"left", "mid", "midpoint", "right", "simpson"}));
  }
}

void add_output(CLI::App* app, Output& o, const std::string& def_format) {
  o.format = def_format;
  app->add_option("--out", o.path, "Output file (default stdout)");
  app->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

integ::Callable source_callable(const Source& src) {
  if (src.fn == "gs") return analysis::build_gs(src.s, src.n).callable();
  return integ::builtin(src.fn).g;
}

angles::GridFunction source_grid(const Source& src) {
  const auto rule = integ::rule_from_name(src.rule);
  if (rule == integ::Rule::Simpson) {
    throw UsageError("simpson combines three grids; pick left, mid or right");
  }
  if (!src.values_file.empty()) {
    auto values = io::values_from_json(read_json_file(src.values_file));
    const int n = std::countr_zero(values.size());
    return angles::GridFunction({n, integ::sample_offset(rule)},
                                std::move(values));
  }
  return integ::sample(source_callable(src), rule, src.n);
}

enc::HardwareProfile resolve_profile(const std::string& name) {
  if (name == "triangulum60") return enc::HardwareProfile::triangulum60();
  if (name == "unlimited") return enc::HardwareProfile::unlimited();
  const Json j = read_json_file(name);
  try {
    enc::HardwareProfile hw;
    hw.name = j.value("name", name);
    hw.line_depth_limit = j.at("line_depth_limit").get<std::int64_t>();
    hw.layer_cost =
        j.at("layer_cost").get<std::map<std::string, std::int64_t>>();
    hw.validate();
    return hw;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed hardware profile: ") + e.what());
  }
}

std::string fixed10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

}  // namespace

std::vector<Table1Cell> reproduce_table1(double tol) {
  // Expected simulator estimates, exact-shot mode, n = 2. g0 uses K = {0,2}
  // because k = 1 is degenerate at a = 1/4.
  struct Golden {
    const char* fn;
    const char* rule;
    double expected;
  };
  static const Golden kGolden[] = {
      {"g0", "left", 0.2499999974},    {"g0", "mid", 0.2499999974},
      {"g0", "right", 0.2499999974},   {"g0", "simpson", 0.2499999974},
      {"g1", "left", 0.3749999974},    {"g1", "mid", 0.4999999987},
      {"g1", "right", 0.6249999976},   {"g1", "simpson", 0.4999999983},
      {"g2", "left", 0.4999999987},    {"g2", "mid", 0.4999999987},
      {"g2", "right", 0.4999999987},   {"g2", "simpson", 0.4999999987},
  };
  std::vector<Table1Cell> cells;
  for (const auto& g : kGolden) {
    Table1Cell c;
    c.fn = g.fn;
    c.rule = g.rule;
    c.schedule = c.fn == "g0" ? std::vector<int>{0, 2} : std::vector<int>{0, 1};
    c.expected = g.expected;
    const auto sched = est::Schedule::uniform(c.schedule, 2048);
    const auto r = est::estimate_integral(integ::builtin(c.fn),
                                          integ::rule_from_name(c.rule), 2,
                                          sched, est::ShotMode::Exact, 0);
    c.estimate = r.I_hat;
    c.abs_diff = std::abs(c.estimate - c.expected);
    c.pass = c.abs_diff <= tol;
    cells.push_back(c);
  }
  return cells;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Quantum amplitude estimation integration toolkit", "qaeint"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  // check-degree
  Source cd_src;
  int cd_d = 1;
  double cd_zero_tol = angles::kDefaultZeroTol;
  Output cd_out;
  auto* cd = app.add_subcommand("check-degree",
                                "Multilinear degree membership of an angle map");
  add_source(cd, cd_src);
  cd->add_option("--d", cd_d, "Requested degree")->check(CLI::NonNegativeNumber);
  cd->add_option("--zero-tol", cd_zero_tol, "Coefficient zero threshold")
      ->check(CLI::PositiveNumber);
  add_output(cd, cd_out, "json");

  // build-circuit
  Source bc_src;
  int bc_k = 0;
  bool bc_spin_echo = false;
  bool bc_keep_zeros = false;
  double bc_zero_tol = angles::kDefaultZeroTol;
  std::string bc_profile = "triangulum60";
  Output bc_out;
  auto* bc = app.add_subcommand(
      "build-circuit", "Encoding circuit, Grover power and line-depth report");
  add_source(bc, bc_src);
  bc->add_option("--k", bc_k, "Grover power")->check(CLI::NonNegativeNumber);
  bc->add_flag("--spin-echo", bc_spin_echo,
               "Count k+1 encoding applications per level");
  bc->add_flag("--keep-zeros", bc_keep_zeros,
               "Emit gates for zero coefficients up to the degree");
  bc->add_option("--zero-tol", bc_zero_tol)->check(CLI::PositiveNumber);
  bc->add_option("--hw-profile", bc_profile,
                 "triangulum60, unlimited or a JSON profile path");
  add_output(bc, bc_out, "json");

  // estimate
  Source es_src;
  std::string es_K = "0,1";
  std::string es_shots = "2048";
  std::string es_mode = "exact";
  std::optional<std::uint64_t> es_seed;
  bool es_keep_zeros = false;
  double es_zero_tol = angles::kDefaultZeroTol;
  Output es_out;
  auto* es = app.add_subcommand("estimate", "Encode, amplify and run MLAE");
  add_source(es, es_src);
  es->add_option("--K", es_K, "Comma-separated Grover levels");
  es->add_option("--shots", es_shots,
                 "Shots per level, one value or one per level");
  es->add_option("--mode", es_mode)
      ->check(CLI::IsMember({"exact", "stochastic"}));
  es->add_option("--seed", es_seed, "Master seed (else QAE_SEED, else 0)");
  es->add_flag("--keep-zeros", es_keep_zeros);
  es->add_option("--zero-tol", es_zero_tol)->check(CLI::PositiveNumber);
  add_output(es, es_out, "json");

  // tradeoff
  std::string to_rule = "left";
  std::string to_d = "1";
  double to_deriv = 1.0;
  double to_cest = 1.0;
  std::string to_eps = "1e-2,1e-3,1e-4,1e-5,1e-6";
  Output to_out;
  auto* to = app.add_subcommand("tradeoff", "Qubit/gate trade-off curve");
  to->add_option("--rule", to_rule)
      ->check(CLI::IsMember({"left", "mid", "midpoint", "right", "simpson"}));
  to->add_option("--d", to_d, "Comma-separated degrees ('generic' for d = n*)");
  to->add_option("--deriv-sup", to_deriv, "Sup norm of the rule's derivative")
      ->check(CLI::NonNegativeNumber);
  to->add_option("--c-est", to_cest, "MLAE constant")->check(CLI::PositiveNumber);
  to->add_option("--eps-grid", to_eps, "Comma-separated accuracies");
  add_output(to, to_out, "csv");

  // separation
  std::string sp_s = "0.1,0.2,0.3,0.4,0.45";
  std::string sp_eps = "1e-2,1e-3,1e-4,1e-5,1e-6";
  double sp_cest = 1.0;
  double sp_cs = 1.0;
  Output sp_out;
  auto* sp = app.add_subcommand("separation",
                                "Quantum/classical cost ratio over regularity");
  sp->add_option("--s-grid", sp_s, "Regularities in (0, 1/2]");
  sp->add_option("--eps-grid", sp_eps, "Comma-separated accuracies");
  sp->add_option("--c-est", sp_cest)->check(CLI::PositiveNumber);
  sp->add_option("--c-s", sp_cs, "Normalised classical constant")
      ->check(CLI::PositiveNumber);
  add_output(sp, sp_out, "csv");

  // sobolev
  std::string sb_s = "0.1,0.2,0.3,0.4";
  std::string sb_sp = "0,0.1,0.2,0.3,0.4,0.5";
  int sb_m = 60;
  Output sb_out;
  auto* sb = app.add_subcommand("sobolev", "Fourier-series Sobolev diagnostics");
  sb->add_option("--s-grid", sb_s);
  sb->add_option("--s-prime-grid", sb_sp);
  sb->add_option("--m-max", sb_m)->check(CLI::NonNegativeNumber);
  add_output(sb, sb_out, "csv");

  // simulate
  std::string sm_circuit;
  std::int64_t sm_shots = 2048;
  std::optional<std::uint64_t> sm_seed;
  std::optional<int> sm_ancilla;
  Output sm_out;
  auto* sm = app.add_subcommand("simulate", "Run a circuit JSON file");
  sm->add_option("circuit", sm_circuit, "Circuit JSON file")->required();
  sm->add_option("--shots", sm_shots)->check(CLI::PositiveNumber);
  sm->add_option("--seed", sm_seed);
  sm->add_option("--ancilla", sm_ancilla, "Measured qubit (default highest)");
  add_output(sm, sm_out, "json");

  // reproduce
  std::string rp_what;
  Output rp_out;
  auto* rp = app.add_subcommand("reproduce", "Reproduce a reference table");
  rp->add_option("table", rp_what, "Which table")
      ->required()
      ->check(CLI::IsMember({"table1"}));
  add_output(rp, rp_out, "json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cd->parsed()) {
      const auto grid = source_grid(cd_src);
      if (cd_d > grid.n_qubits()) {
        throw UsageError("--d must not exceed n");
      }
      const auto report =
          angles::check_membership(grid, cd_d, cd_zero_tol);
      Json j = io::to_json(report);
      j["fn"] = cd_src.values_file.empty() ? cd_src.fn : cd_src.values_file;
      j["rule"] = integ::rule_name(integ::rule_from_name(cd_src.rule));
      emit(cd_out, io::dump(j), out);
      return report.member ? kExitOk : kExitNegative;
    }

    if (bc->parsed()) {
      const auto grid = source_grid(bc_src);
      const auto e = angles::mobius_transform(angles::build_angle_table(grid));
      enc::EncodingOptions eo;
      eo.zero_tol = bc_zero_tol;
      eo.keep_zeros = bc_keep_zeros;
      const auto plan = enc::plan_encoding(e, eo);
      const auto hw = resolve_profile(bc_profile);
      const enc::GroverConfig cfg{bc_k, bc_spin_echo};
      const auto cost = enc::encoding_cost(e, cfg, hw, eo);
      const auto feas = enc::feasibility(e, cfg, hw, eo);
      Json j;
      j["fn"] = bc_src.values_file.empty() ? bc_src.fn : bc_src.values_file;
      j["rule"] = integ::rule_name(integ::rule_from_name(bc_src.rule));
      j["k"] = bc_k;
      j["encoding"] = io::to_json(plan.gate_list);
      j["plan"] = {{"degree_cap", plan.degree_cap},
                   {"gate_count", plan.gate_count},
                   {"depth_layers", plan.depth_layers}};
      j["circuit"] = io::to_json(enc::build_grover_power(e, bc_k, eo));
      j["cost"] = io::to_json(cost);
      j["feasibility"] = io::to_json(feas);
      emit(bc_out, io::dump(j), out);
      return feas.levels.back().feasible ? kExitOk : kExitNegative;
    }

    if (es->parsed()) {
      const auto levels = parse_ints(es_K, "--K");
      const auto shots = parse_ints(es_shots, "--shots");
      est::Schedule sched;
      for (auto k : levels) sched.levels.push_back(static_cast<int>(k));
      if (shots.size() == 1) {
        sched.shots.assign(levels.size(), shots[0]);
      } else if (shots.size() == levels.size()) {
        sched.shots = shots;
      } else {
        throw UsageError("--shots needs one value or one per level");
      }
      sched.validate();
      const auto mode = est::mode_from_name(es_mode);
      const auto seed = resolve_seed(es_seed);
      est::EstimateOptions opts;
      opts.encoding.zero_tol = es_zero_tol;
      opts.encoding.keep_zeros = es_keep_zeros;
      const auto rule = integ::rule_from_name(es_src.rule);
      est::EstimationResult r;
      std::optional<double> exact;
      if (!es_src.values_file.empty()) {
        r = est::estimate_amplitude(source_grid(es_src), sched, mode, seed,
                                    opts);
        r.rule = integ::rule_name(rule);
      } else {
        if (es_src.fn != "gs") exact = integ::builtin(es_src.fn).exact_integral;
        r = est::estimate_integral(source_callable(es_src), rule, es_src.n,
                                   sched, mode, seed, opts);
      }
      Json j = io::to_json(r);
      if (mode == est::ShotMode::Stochastic) j["seed"] = seed;
      j["fn"] = es_src.values_file.empty() ? es_src.fn : es_src.values_file;
      if (exact) {
        j["I_exact"] = *exact;
        j["abs_error"] = std::abs(r.I_hat - *exact);
      }
      emit(es_out, io::dump(j), out);
      return kExitOk;
    }

    if (to->parsed()) {
      const auto rule = integ::rule_from_name(to_rule);
      const auto ds = parse_ints(to_d, "--d");
      const auto eps = parse_doubles(to_eps, "--eps-grid");
      analysis::CostModel model;
      model.C_est = to_cest;
      std::vector<std::pair<int, std::vector<analysis::TradeoffPoint>>> curves;
      for (auto d : ds) {
        curves.emplace_back(static_cast<int>(d),
                            analysis::tradeoff_curve(rule, static_cast<int>(d),
                                                     to_deriv, model, eps));
      }
      std::ostringstream os;
      if (to_out.format == "csv") {
        analysis::write_tradeoff_csv(os, curves);
      } else {
        Json arr = Json::array();
        for (const auto& [d, pts] : curves) {
          for (const auto& p : pts) {
            arr.push_back({{"d", d < 0 ? Json("generic") : Json(d)},
                           {"eps", p.eps},
                           {"n_star", p.n_star},
                           {"M", p.M},
                           {"gates_per_call", p.gates_per_call},
                           {"total_gates", p.total_gates},
                           {"classical_cost", p.classical_mc_cost},
                           {"quantum_normalized", p.quantum_normalized}});
          }
        }
        os << io::dump(arr);
      }
      emit(to_out, os.str(), out);
      return kExitOk;
    }

    if (sp->parsed()) {
      analysis::CostModel model;
      model.C_est = sp_cest;
      const auto pts = analysis::separation_curve(
          parse_doubles(sp_s, "--s-grid"), parse_doubles(sp_eps, "--eps-grid"),
          model, sp_cs);
      std::ostringstream os;
      if (sp_out.format == "csv") {
        analysis::write_separation_csv(os, pts);
      } else {
        Json arr = Json::array();
        for (const auto& p : pts) {
          arr.push_back({{"s", p.s},
                         {"eps", p.eps},
                         {"M", p.M},
                         {"N", p.boundary ? Json("boundary") : Json(p.N)},
                         {"ratio", p.boundary ? Json("boundary") : Json(p.ratio)}});
        }
        os << io::dump(arr);
      }
      emit(sp_out, os.str(), out);
      return kExitOk;
    }

    if (sb->parsed()) {
      std::vector<analysis::SeriesReport> reports;
      for (double s : parse_doubles(sb_s, "--s-grid")) {
        for (double sp2 : parse_doubles(sb_sp, "--s-prime-grid")) {
          reports.push_back(analysis::sobolev_series(s, sp2, sb_m));
        }
      }
      std::ostringstream os;
      if (sb_out.format == "csv") {
        analysis::write_sobolev_csv(os, reports);
      } else {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(io::to_json(r));
        os << io::dump(arr);
      }
      emit(sb_out, os.str(), out);
      return kExitOk;
    }

    if (sm->parsed()) {
      const auto c = io::circuit_from_json(read_json_file(sm_circuit));
      const auto v = sim::apply(c, sim::initial_state(c.n_qubits));
      const int anc = sm_ancilla.value_or(c.n_qubits - 1);
      const auto seed = resolve_seed(sm_seed);
      Json j;
      j["n_qubits"] = c.n_qubits;
      j["gates"] = c.gates.size();
      j["ancilla"] = anc;
      j["prob1"] = sim::ancilla_prob1(v, anc);
      j["shots"] = sm_shots;
      j["seed"] = seed;
      j["hits"] = sim::sample_ancilla(v, anc, sm_shots, seed);
      emit(sm_out, io::dump(j), out);
      return kExitOk;
    }

    if (rp->parsed()) {
      const auto cells = reproduce_table1();
      bool all = true;
      std::ostringstream os;
      if (rp_out.format == "json") {
        Json arr = Json::array();
        for (const auto& c : cells) {
          arr.push_back({{"fn", c.fn},
                         {"rule", c.rule},
                         {"schedule", c.schedule},
                         {"expected", c.expected},
                         {"estimate", c.estimate},
                         {"abs_diff", c.abs_diff},
                         {"pass", c.pass}});
          all = all && c.pass;
        }
        os << io::dump({{"table", "table1"}, {"tolerance", 1e-6},
                        {"cells", arr}, {"all_pass", all}});
      } else {
        os << "fn,rule,schedule,expected,estimate,abs_diff,pass\n";
        for (const auto& c : cells) {
          std::string k;
          for (std::size_t i = 0; i < c.schedule.size(); ++i) {
            k += (i ? " " : "") + std::to_string(c.schedule[i]);
          }
          os << c.fn << ',' << c.rule << ',' << k << ',' << fixed10(c.expected)
             << ',' << fixed10(c.estimate) << ',' << sci(c.abs_diff) << ','
             << (c.pass ? "PASS" : "FAIL") << '\n';
          all = all && c.pass;
        }
      }
      emit(rp_out, os.str(), out);
      return all ? kExitOk : kExitNegative;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalConsistencyError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InsufficientDataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace qaeint::cli
