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

#include "rcdp/erm.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace rcdp {
namespace {

Eigen::VectorXd RandomUnitVector(int dimension, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(dimension);
  do {
    for (int k = 0; k < dimension; ++k) v[k] = normal(rng);
  } while (v.norm() == 0);
  return v / v.norm();
}

// log(1 + e^{-z}) without overflow.
double LogisticLoss(double margin) {
  return std::max(-margin, 0.0) + std::log1p(std::exp(-std::abs(margin)));
}

// 1 / (1 + e^z)
double Sigmoid(double z) {
  if (z >= 0) {
    const double e = std::exp(-z);
    return e / (1 + e);
  }
  return 1 / (1 + std::exp(z));
}

// d loss / d score; the gradient is this times the feature vector.
double LossSlope(const ErmTask& task, const Example& example, double score) {
  switch (task.loss) {
    case LossKind::kLogistic:
      return -example.y * Sigmoid(example.y * score);
    case LossKind::kSquared:
      return score - example.y;
  }
  return 0;
}

absl::Status CheckSchedule(const ErmTask& task, double sigma, int64_t n,
                           int64_t m) {
  if (!(sigma >= 0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sigma must be nonnegative, got %.17g", sigma));
  }
  if (n < 1 || m < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("n and m must be positive, got n = %d, m = %d", n, m));
  }
  if (!(task.radius > 0) || !(task.lipschitz > 0)) {
    return absl::InvalidArgumentError("task radius and lipschitz must be > 0");
  }
  return absl::OkStatus();
}

}  // namespace

ErmTask MakeLogisticTask(int dimension, double radius, double planted_norm,
                         uint64_t seed) {
  Rng rng(seed);
  ErmTask task;
  task.loss = LossKind::kLogistic;
  task.dimension = dimension;
  task.radius = radius;
  // |d/dz log(1 + e^{-z})| <= 1 and ||x|| = 1.
  task.lipschitz = 1;
  task.smoothness = 0.25;
  task.planted = planted_norm * RandomUnitVector(dimension, rng);
  return task;
}

ErmTask MakeSquaredTask(int dimension, double radius, double planted_norm,
                        double label_noise, uint64_t seed) {
  Rng rng(seed);
  ErmTask task;
  task.loss = LossKind::kSquared;
  task.dimension = dimension;
  task.radius = radius;
  task.planted = planted_norm * RandomUnitVector(dimension, rng);
  task.label_noise = label_noise;
  // Nominal: residuals beyond three noise deviations are clipped away by the
  // randomizer anyway.
  task.lipschitz = radius + planted_norm + 3 * label_noise;
  task.smoothness = 1;
  return task;
}

Dataset SampleDataset(const ErmTask& task, int64_t count, Rng& rng) {
  Dataset out;
  out.reserve(static_cast<size_t>(count));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int64_t k = 0; k < count; ++k) {
    Example ex{.x = RandomUnitVector(task.dimension, rng)};
    const double score = task.planted.dot(ex.x);
    switch (task.loss) {
      case LossKind::kLogistic:
        ex.y = unit(rng) < Sigmoid(-score) ? 1.0 : -1.0;
        break;
      case LossKind::kSquared:
        ex.y = score + task.label_noise * noise(rng);
        break;
    }
    out.push_back(std::move(ex));
  }
  return out;
}

double Loss(const ErmTask& task, const Example& example,
            const Eigen::VectorXd& theta) {
  const double score = theta.dot(example.x);
  switch (task.loss) {
    case LossKind::kLogistic:
      return LogisticLoss(example.y * score);
    case LossKind::kSquared:
      return 0.5 * (score - example.y) * (score - example.y);
  }
  return 0;
}

Eigen::VectorXd LossGradient(const ErmTask& task, const Example& example,
                             const Eigen::VectorXd& theta) {
  return LossSlope(task, example, theta.dot(example.x)) * example.x;
}

Eigen::VectorXd Project(const ErmTask& task, const Eigen::VectorXd& theta) {
  const double norm = theta.norm();
  if (norm <= task.radius) return theta;
  return theta * (task.radius / norm);
}

double EmpiricalRisk(const ErmTask& task, std::span<const Example> sample,
                     const Eigen::VectorXd& theta) {
  if (sample.empty()) return 0;
  double total = 0;
  for (const Example& ex : sample) total += Loss(task, ex, theta);
  return total / static_cast<double>(sample.size());
}

Eigen::VectorXd EmpiricalGradient(const ErmTask& task,
                                  std::span<const Example> sample,
                                  const Eigen::VectorXd& theta) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(task.dimension);
  if (sample.empty()) return total;
  for (const Example& ex : sample) {
    total.noalias() += LossSlope(task, ex, theta.dot(ex.x)) * ex.x;
  }
  return total / static_cast<double>(sample.size());
}

absl::StatusOr<Eigen::VectorXd> ComputeOptimum(const ErmTask& task,
                                               std::span<const Example> sample,
                                               double tolerance,
                                               int max_iterations) {
  if (sample.empty()) {
    return absl::InvalidArgumentError("optimum needs a nonempty sample");
  }
  if (!(tolerance > 0)) {
    return absl::InvalidArgumentError("tolerance must be positive");
  }
  // Logistic and squared losses on unit-norm features are smooth with these
  // constants; the squared-loss Hessian is E[x x^T] with trace 1.
  const double beta = task.smoothness.value_or(1.0);
  const double step = 1 / beta;
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(task.dimension);
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd grad = EmpiricalGradient(task, sample, theta);
    const Eigen::VectorXd next = Project(task, theta - step * grad);
    const double mapping = (theta - next).norm() / step;
    theta = next;
    if (mapping <= tolerance) return theta;
  }
  return absl::DeadlineExceededError(absl::StrFormat(
      "projected gradient descent did not reach tolerance %.3g within %d "
      "iterations",
      tolerance, max_iterations));
}

absl::StatusOr<double> LrFixed(int64_t i, const ErmTask& task, double sigma,
                               int64_t n, double p0, int64_t m) {
  if (absl::Status s = CheckSchedule(task, sigma, n, m); !s.ok()) return s;
  if (i < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("step index must be >= 1, got %d", i));
  }
  const double load = static_cast<double>(n) * p0 / static_cast<double>(m);
  const double factor = 1 - 2 * std::exp(-load);
  if (!(factor > 0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "learning rate is nonpositive: n p0 / m = %.17g must exceed ln 2",
        load));
  }
  const double p = task.dimension;
  return task.radius * factor /
         std::sqrt((p * sigma * sigma + task.lipschitz * task.lipschitz) *
                   static_cast<double>(i));
}

absl::StatusOr<double> LrAvg(int64_t i, const ErmTask& task, double sigma,
                             int64_t n, int64_t m) {
  if (absl::Status s = CheckSchedule(task, sigma, n, m); !s.ok()) return s;
  if (i < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("step index must be >= 1, got %d", i));
  }
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double p = task.dimension;
  return task.radius * std::sqrt(nn) /
         std::sqrt((mm * p * sigma * sigma +
                    nn * task.lipschitz * task.lipschitz) *
                   static_cast<double>(i));
}

absl::StatusOr<double> LrSmooth(const ErmTask& task, double sigma, int64_t n,
                                int64_t m) {
  if (absl::Status s = CheckSchedule(task, sigma, n, m); !s.ok()) return s;
  if (!task.smoothness.has_value()) {
    return absl::InvalidArgumentError(
        "smooth step size requires the task's smoothness constant");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  const double p = task.dimension;
  return task.radius * root_n /
         (*task.smoothness * task.radius * root_n +
          static_cast<double>(m) *
              std::sqrt(task.lipschitz * task.lipschitz + p * sigma * sigma));
}

absl::StatusOr<double> DebiasFactor(int64_t n, double p0, int64_t m) {
  if (n < 1 || m < 1) {
    return absl::InvalidArgumentError("n and m must be positive");
  }
  const double load = static_cast<double>(n) * p0 / static_cast<double>(m);
  const double factor = 1 - 2 * std::exp(-load);
  if (!(factor > 0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "debiasing needs n p0 / m > ln 2, got %.17g", load));
  }
  return 1 / factor;
}

}  // namespace rcdp
