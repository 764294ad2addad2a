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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qaeint/analysis.hpp"
#include "qaeint/angles.hpp"
#include "qaeint/encoder.hpp"
#include "qaeint/estimation.hpp"
#include "qaeint/simulator.hpp"

namespace qaeint::io {

using Json = nlohmann::ordered_json;

Json to_json(const angles::AngleTable& t);
Json to_json(const angles::MultilinearExpansion& e);
Json to_json(const angles::MembershipReport& r);
Json to_json(const sim::Gate& g);
Json to_json(const sim::Circuit& c);
Json to_json(const enc::CostBreakdown& c);
Json to_json(const enc::FeasibilityReport& f);
Json to_json(const est::EstimationResult& r);
Json to_json(const analysis::SeriesReport& r);

/// Parses the interchange format; every gate kind is accepted, with
/// "controls" as a list of qubit indices. Throws ParameterError.
sim::Circuit circuit_from_json(const Json& j);

/// A bare array of 2^n floats or an object {"n", "values"}.
std::vector<double> values_from_json(const Json& j);

/// Two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace qaeint::io
