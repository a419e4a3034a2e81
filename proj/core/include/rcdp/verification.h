// Copyright 2026 The rcdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The acceptance checks, grouped into suites. Each check is deterministic:
// Monte Carlo checks use fixed derived seeds.

#ifndef RCDP_VERIFICATION_H_
#define RCDP_VERIFICATION_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace rcdp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double time_limit_seconds = 0;
};

inline constexpr int kNumCriteria = 11;

// Runs acceptance criterion `id` in [1, kNumCriteria].
absl::StatusOr<CriterionResult> RunCriterion(int id);

// "formulas", "oracle", "montecarlo" or "all".
absl::StatusOr<std::vector<int>> SuiteCriteria(const std::string& suite);

// One line: "[PASS] 3 dummy-fixed: <detail> (1.23 s)".
std::string FormatResult(const CriterionResult& r);

std::string ResultsJson(const std::string& suite,
                        const std::vector<CriterionResult>& results);

}  // namespace rcdp

#endif  // RCDP_VERIFICATION_H_
