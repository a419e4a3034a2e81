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

#ifndef RCDP_RISK_H_
#define RCDP_RISK_H_

#include <span>

#include <Eigen/Core>

#include "absl/status/statusor.h"
#include "rcdp/erm.h"
#include "rcdp/protocols.h"

namespace rcdp {

enum class Estimator { kLastIterate, kAverageIterate };

// The model a trace reports under `estimator`. kAverageIterate needs recorded
// iterates.
absl::StatusOr<Eigen::VectorXd> EstimateModel(const ProtocolTrace& trace,
                                              Estimator estimator);

// Risk of `theta` minus risk of task.optimum, both measured on eval_samples.
absl::StatusOr<double> ExcessRisk(const ErmTask& task,
                                  std::span<const Example> eval_samples,
                                  const Eigen::VectorXd& theta);

absl::StatusOr<double> ExcessRisk(const ProtocolTrace& trace,
                                  const ErmTask& task, Estimator estimator,
                                  std::span<const Example> eval_samples);

}  // namespace rcdp

#endif  // RCDP_RISK_H_
