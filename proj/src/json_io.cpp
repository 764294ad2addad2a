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

#include "qaeint/json_io.hpp"

#include <bit>

#include "qaeint/errors.hpp"

namespace qaeint::io {

namespace {

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json subsets(const std::vector<angles::SubsetCoefficient>& list) {
  Json arr = Json::array();
  for (const auto& s : list) {
    arr.push_back({{"subset_mask", s.subset_mask}, {"coeff", s.coeff}});
  }
  return arr;
}

}  // namespace

Json to_json(const angles::AngleTable& t) {
  return {{"n", t.n_qubits}, {"values", t.theta}};
}

Json to_json(const angles::MultilinearExpansion& e) {
  return {{"n", e.n_qubits}, {"values", e.coeff}};
}

Json to_json(const angles::MembershipReport& r) {
  Json j;
  j["n"] = r.n_qubits;
  j["requested_degree"] = r.requested_degree;
  j["degree"] = r.degree;
  j["zero_tol"] = r.zero_tol;
  j["member"] = r.member;
  j["expansion"] = to_json(r.expansion);
  j["violations"] = subsets(r.violations);
  j["affine_residuals"] =
      r.affine_residuals ? subsets(*r.affine_residuals) : Json(nullptr);
  return j;
}

Json to_json(const sim::Gate& g) {
  Json j;
  j["kind"] = sim::kind_name(g.kind);
  Json controls = Json::array();
  for (int q = 0; q < 32; ++q) {
    if (g.controls >> q & 1u) controls.push_back(q);
  }
  j["controls"] = controls;
  j["target"] = g.target;
  j["angle"] = g.angle;
  return j;
}

Json to_json(const sim::Circuit& c) {
  Json j;
  j["n_qubits"] = c.n_qubits;
  if (!c.label.empty()) j["label"] = c.label;
  Json gates = Json::array();
  for (const auto& g : c.gates) gates.push_back(to_json(g));
  j["gates"] = gates;
  return j;
}

Json to_json(const enc::CostBreakdown& c) {
  Json j;
  j["n"] = c.n_qubits;
  j["degree"] = c.degree;
  j["spin_echo"] = c.spin_echo;
  j["profile"] = c.profile;
  j["gates_per_encoding"] = c.gates_per_encoding;
  j["expanded_layers_per_encoding"] = c.expanded_layers_per_encoding;
  j["oracle_lines"] = c.oracle_lines;
  Json levels = Json::array();
  for (const auto& l : c.levels) {
    levels.push_back({{"k", l.k},
                      {"encoding_applications", l.encoding_applications},
                      {"mcry_gates", l.mcry_gates},
                      {"expanded_layers", l.expanded_layers},
                      {"total_lines", l.total_lines}});
  }
  j["levels"] = levels;
  return j;
}

Json to_json(const enc::FeasibilityReport& f) {
  Json j;
  j["profile"] = f.profile;
  j["line_depth_limit"] = f.line_depth_limit;
  Json levels = Json::array();
  for (const auto& l : f.levels) {
    levels.push_back({{"k", l.k},
                      {"total_lines", l.total_lines},
                      {"feasible", l.feasible}});
  }
  j["levels"] = levels;
  j["all_feasible"] = f.all_feasible();
  return j;
}

Json to_json(const est::EstimationResult& r) {
  Json j;
  j["a_hat"] = r.a_hat;
  j["theta_hat"] = r.theta_hat;
  j["I_hat"] = r.I_hat;
  j["loglik_at_max"] = r.loglik_at_max;
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"k", rec.k}, {"N", rec.N}, {"m", rec.m}});
  }
  j["records"] = records;
  Json maxima = Json::array();
  for (const auto& m : r.local_maxima) {
    maxima.push_back({{"theta", m.theta}, {"loglik", m.loglik}});
  }
  j["local_maxima"] = maxima;
  j["fisher"] = optional_number(r.fisher);
  j["cr_bound"] = optional_number(r.cr_bound);
  j["mode"] = est::mode_name(r.mode);
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  if (!r.rule.empty()) j["rule"] = r.rule;
  j["n"] = r.n_qubits;
  j["encoded_degree"] = r.encoded_degree;
  if (!r.components.empty()) {
    Json comps = Json::array();
    for (const auto& c : r.components) {
      comps.push_back({{"rule", c.rule}, {"a_hat", c.a_hat}});
    }
    j["components"] = comps;
  }
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const analysis::SeriesReport& r) {
  Json j;
  j["s"] = r.s;
  j["s_prime"] = r.s_prime;
  j["ratio"] = r.ratio;
  j["prefactor"] = r.prefactor;
  j["partial_sums"] = r.partial_sums;
  j["convergent"] = r.convergent;
  j["limit"] = optional_number(r.limit);
  return j;
}

sim::Circuit circuit_from_json(const Json& j) {
  try {
    sim::Circuit c;
    c.n_qubits = j.at("n_qubits").get<int>();
    if (j.contains("label")) c.label = j.at("label").get<std::string>();
    for (const auto& gj : j.at("gates")) {
      sim::Gate g;
      g.kind = sim::kind_from_name(gj.at("kind").get<std::string>());
      if (gj.contains("controls")) {
        for (int q : gj.at("controls").get<std::vector<int>>()) {
          if (q < 0 || q >= 32) throw ParameterError("control index out of range");
          g.controls |= std::uint32_t{1} << q;
        }
      }
      g.target = gj.value("target", 0);
      g.angle = gj.value("angle", 0.0);
      c.gates.push_back(g);
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed circuit JSON: ") + e.what());
  }
}

std::vector<double> values_from_json(const Json& j) {
  try {
    std::vector<double> values;
    if (j.is_array()) {
      values = j.get<std::vector<double>>();
    } else {
      values = j.at("values").get<std::vector<double>>();
      if (j.contains("n")) {
        const int n = j.at("n").get<int>();
        if (n < 1 || n > 30 || values.size() != (std::size_t{1} << n)) {
          throw ParameterError("\"n\" does not match the number of values");
        }
      }
    }
    if (values.size() < 2 || !std::has_single_bit(values.size())) {
      throw ParameterError("values file must hold 2^n numbers with n >= 1");
    }
    return values;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed values JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qaeint::io
