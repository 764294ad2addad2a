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
 * Command-line front end. run() is the whole program minus process setup,
 * so it can be driven from tests.
 *
 * Exit codes: 0 success or member, 1 non-member / infeasible / mismatch,
 * 2 usage error, 3 internal consistency error.
 */

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qaeint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

struct Table1Cell {
  std::string fn;
  std::string rule;
  std::vector<int> schedule;
  double expected = 0.0;
  double estimate = 0.0;
  double abs_diff = 0.0;
  bool pass = false;
};

/// All twelve exact-shot cells: g0, g1, g2 under left, mid, right and
/// simpson at n = 2 with 2048 shots per level.
std::vector<Table1Cell> reproduce_table1(double tol = 1e-6);

}  // namespace qaeint::cli
