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

// Convex ERM tasks over an L2 ball, the step-size schedules that go with the
// random check-in protocols, and a deterministic optimum oracle.

#ifndef RCDP_ERM_H_
#define RCDP_ERM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "absl/status/statusor.h"
#include "rcdp/randomizers.h"

namespace rcdp {

enum class LossKind { kLogistic, kSquared };

struct Example {
  Eigen::VectorXd x;
  double y = 0;
};

using Dataset = std::vector<Example>;

// A convex loss over the ball {theta : ||theta|| <= radius}. Features are
// unit-norm. Logistic labels are +-1 drawn from a planted model; squared-loss
// labels are planted responses plus Gaussian noise.
struct ErmTask {
  LossKind loss = LossKind::kLogistic;
  int dimension = 10;
  double radius = 1;
  double lipschitz = 1;
  std::optional<double> smoothness;
  Eigen::VectorXd planted;
  double label_noise = 0;  // squared loss only
  std::optional<Eigen::VectorXd> optimum;
};

// The default logistic task: p = dimension, unit-norm Gaussian-direction
// features, planted parameter of norm planted_norm along a seeded direction.
ErmTask MakeLogisticTask(int dimension, double radius, double planted_norm,
                         uint64_t seed);

ErmTask MakeSquaredTask(int dimension, double radius, double planted_norm,
                        double label_noise, uint64_t seed);

Dataset SampleDataset(const ErmTask& task, int64_t count, Rng& rng);

double Loss(const ErmTask& task, const Example& example,
            const Eigen::VectorXd& theta);

Eigen::VectorXd LossGradient(const ErmTask& task, const Example& example,
                             const Eigen::VectorXd& theta);

// Euclidean projection onto the model ball.
Eigen::VectorXd Project(const ErmTask& task, const Eigen::VectorXd& theta);

// Mean loss over `sample`.
double EmpiricalRisk(const ErmTask& task, std::span<const Example> sample,
                     const Eigen::VectorXd& theta);

Eigen::VectorXd EmpiricalGradient(const ErmTask& task,
                                  std::span<const Example> sample,
                                  const Eigen::VectorXd& theta);

// Projected full-batch gradient descent on `sample` (standing in for the
// population) until the gradient mapping ||theta - P(theta - g / beta)|| * beta
// drops below `tolerance`. Deterministic; fails after `max_iterations`.
absl::StatusOr<Eigen::VectorXd> ComputeOptimum(const ErmTask& task,
                                               std::span<const Example> sample,
                                               double tolerance,
                                               int max_iterations = 200000);

// R (1 - 2 e^{-n p0 / m}) / sqrt((p sigma^2 + L^2) i); requires
// n p0 / m > ln 2 so that the rate is positive.
absl::StatusOr<double> LrFixed(int64_t i, const ErmTask& task, double sigma,
                               int64_t n, double p0, int64_t m);

// R sqrt(n) / sqrt((m p sigma^2 + n L^2) i).
absl::StatusOr<double> LrAvg(int64_t i, const ErmTask& task, double sigma,
                             int64_t n, int64_t m);

// R sqrt(n) / (beta R sqrt(n) + m sqrt(L^2 + p sigma^2)); constant in i.
absl::StatusOr<double> LrSmooth(const ErmTask& task, double sigma, int64_t n,
                                int64_t m);

// 1 / (1 - 2 e^{-n p0 / m}): rescaling that makes fixed-window updates
// approximately unbiased despite dummy slots.
absl::StatusOr<double> DebiasFactor(int64_t n, double p0, int64_t m);

}  // namespace rcdp

#endif  // RCDP_ERM_H_
