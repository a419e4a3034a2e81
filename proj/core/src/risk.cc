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

#include "rcdp/risk.h"

#include "absl/status/status.h"

namespace rcdp {

absl::StatusOr<Eigen::VectorXd> EstimateModel(const ProtocolTrace& trace,
                                              Estimator estimator) {
  switch (estimator) {
    case Estimator::kLastIterate:
      if (trace.final_model.size() == 0) {
        return absl::FailedPreconditionError("trace carries no model");
      }
      return trace.final_model;
    case Estimator::kAverageIterate: {
      if (trace.iterates.empty()) {
        return absl::FailedPreconditionError(
            "average iterate needs recorded iterates");
      }
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(trace.iterates[0].size());
      for (const Eigen::VectorXd& theta : trace.iterates) sum += theta;
      return sum / static_cast<double>(trace.iterates.size());
    }
  }
  return absl::InternalError("unknown estimator");
}

absl::StatusOr<double> ExcessRisk(const ErmTask& task,
                                  std::span<const Example> eval_samples,
                                  const Eigen::VectorXd& theta) {
  if (!task.optimum.has_value()) {
    return absl::FailedPreconditionError(
        "task optimum must be computed before measuring excess risk");
  }
  if (eval_samples.empty()) {
    return absl::InvalidArgumentError("no evaluation samples");
  }
  if (theta.size() != task.dimension) {
    return absl::InvalidArgumentError("model dimension mismatch");
  }
  return EmpiricalRisk(task, eval_samples, theta) -
         EmpiricalRisk(task, eval_samples, *task.optimum);
}

absl::StatusOr<double> ExcessRisk(const ProtocolTrace& trace,
                                  const ErmTask& task, Estimator estimator,
                                  std::span<const Example> eval_samples) {
  absl::StatusOr<Eigen::VectorXd> theta = EstimateModel(trace, estimator);
  if (!theta.ok()) return theta.status();
  return ExcessRisk(task, eval_samples, *theta);
}

}  // namespace rcdp
