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

#include <Eigen/Dense>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace rcdp {
namespace {

// Central differences of the loss at theta.
Eigen::VectorXd NumericGradient(const ErmTask& task, const Example& ex,
                                const Eigen::VectorXd& theta) {
  constexpr double kStep = 1e-6;
  Eigen::VectorXd out(theta.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    Eigen::VectorXd up = theta, down = theta;
    up[k] += kStep;
    down[k] -= kStep;
    out[k] = (Loss(task, ex, up) - Loss(task, ex, down)) / (2 * kStep);
  }
  return out;
}

TEST(ErmTest, GradientsMatchFiniteDifferences) {
  Rng rng(3);
  for (const ErmTask& task : {MakeLogisticTask(5, 2, 3, 1),
                              MakeSquaredTask(5, 2, 1, 0.3, 1)}) {
    const Dataset data = SampleDataset(task, 20, rng);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (const Example& ex : data) {
      Eigen::VectorXd theta(5);
      for (int k = 0; k < 5; ++k) theta[k] = normal(rng);
      const Eigen::VectorXd exact = LossGradient(task, ex, theta);
      EXPECT_LT((exact - NumericGradient(task, ex, theta)).norm(), 1e-7);
    }
  }
}

TEST(ErmTest, EmpiricalGradientIsMeanOfGradients) {
  Rng rng(4);
  const ErmTask task = MakeLogisticTask(4, 1, 2, 9);
  const Dataset data = SampleDataset(task, 50, rng);
  const Eigen::VectorXd theta = Eigen::VectorXd::Constant(4, 0.1);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
  for (const Example& ex : data) mean += LossGradient(task, ex, theta);
  mean /= 50;
  EXPECT_LT((EmpiricalGradient(task, data, theta) - mean).norm(), 1e-14);
}

TEST(ErmTest, FeaturesAreUnitAndLossesLipschitz) {
  Rng rng(5);
  const ErmTask task = MakeLogisticTask(8, 1, 4, 2);
  const Dataset data = SampleDataset(task, 200, rng);
  const Eigen::VectorXd theta = Eigen::VectorXd::Constant(8, 0.3);
  for (const Example& ex : data) {
    EXPECT_NEAR(ex.x.norm(), 1, 1e-12);
    EXPECT_TRUE(ex.y == 1 || ex.y == -1);
    EXPECT_LE(LossGradient(task, ex, theta).norm(), task.lipschitz + 1e-12);
  }
}

TEST(ErmTest, LogisticLossIsStableForLargeMargins) {
  const ErmTask task = MakeLogisticTask(1, 1e6, 1, 0);
  const Example ex{.x = Eigen::VectorXd::Ones(1), .y = 1};
  EXPECT_NEAR(Loss(task, ex, Eigen::VectorXd::Constant(1, -1000)), 1000, 1e-9);
  EXPECT_NEAR(Loss(task, ex, Eigen::VectorXd::Constant(1, 1000)), 0, 1e-300);
  EXPECT_DOUBLE_EQ(Loss(task, ex, Eigen::VectorXd::Zero(1)), std::log(2.0));
}

TEST(ErmTest, ProjectOntoBall) {
  ErmTask task;
  task.radius = 2;
  Eigen::VectorXd v(2);
  v << 3, 4;
  EXPECT_DOUBLE_EQ(Project(task, v).norm(), 2);
  EXPECT_EQ(Project(task, v / 10), v / 10);
}

TEST(ErmTest, OptimumMatchesClosedFormLeastSquares) {
  Rng rng(6);
  // A radius this large leaves the least-squares solution interior.
  const ErmTask task = MakeSquaredTask(6, 1e3, 2, 0.5, 3);
  const Dataset data = SampleDataset(task, 400, rng);
  Eigen::MatrixXd x(400, 6);
  Eigen::VectorXd y(400);
  for (int r = 0; r < 400; ++r) {
    x.row(r) = data[r].x.transpose();
    y[r] = data[r].y;
  }
  const Eigen::VectorXd exact =
      (x.transpose() * x).ldlt().solve(x.transpose() * y);
  auto opt = ComputeOptimum(task, data, 1e-11);
  ASSERT_TRUE(opt.ok()) << opt.status();
  EXPECT_LT((*opt - exact).norm(), 1e-8);
}

TEST(ErmTest, ConstrainedOptimumSitsOnBoundary) {
  Rng rng(7);
  const ErmTask task = MakeLogisticTask(4, 0.5, 4, 8);
  const Dataset data = SampleDataset(task, 500, rng);
  auto opt = ComputeOptimum(task, data, 1e-10);
  ASSERT_TRUE(opt.ok()) << opt.status();
  EXPECT_NEAR(opt->norm(), 0.5, 1e-9);
  // First-order optimality on the ball: -grad is parallel to theta.
  const Eigen::VectorXd g = EmpiricalGradient(task, data, *opt);
  EXPECT_NEAR(-g.dot(*opt) / (g.norm() * opt->norm()), 1, 1e-6);
  EXPECT_LE(EmpiricalRisk(task, data, *opt),
            EmpiricalRisk(task, data, Eigen::VectorXd::Zero(4)));
}

TEST(ErmTest, OptimumReportsNonConvergence) {
  Rng rng(8);
  const ErmTask task = MakeLogisticTask(4, 10, 4, 8);
  const Dataset data = SampleDataset(task, 100, rng);
  EXPECT_EQ(ComputeOptimum(task, data, 1e-12, 3).status().code(),
            absl::StatusCode::kDeadlineExceeded);
  EXPECT_FALSE(ComputeOptimum(task, {}, 1e-6).ok());
}

TEST(ErmTest, LearningRates) {
  const ErmTask task = MakeLogisticTask(10, 1, 4, 1);
  EXPECT_DOUBLE_EQ(LrFixed(4, task, 0.5, 1000, 0.2, 100).value(),
                   (1 - 2 * std::exp(-2.0)) / std::sqrt((10 * 0.25 + 1) * 4));
  EXPECT_FALSE(LrFixed(1, task, 0.5, 100, 0.5, 100).ok());  // n p0 / m < ln 2
  EXPECT_FALSE(LrFixed(0, task, 0.5, 1000, 1, 100).ok());
  EXPECT_DOUBLE_EQ(LrAvg(9, task, 0.1, 10000, 100).value(),
                   100 / std::sqrt((100 * 10 * 0.01 + 10000) * 9.0));
  EXPECT_DOUBLE_EQ(LrSmooth(task, 0.1, 10000, 100).value(),
                   100 / (0.25 * 100 + 100 * std::sqrt(1 + 10 * 0.01)));
  EXPECT_DOUBLE_EQ(DebiasFactor(1000, 0.2, 100).value(),
                   1 / (1 - 2 * std::exp(-2.0)));
  EXPECT_FALSE(DebiasFactor(10, 0.1, 100).ok());
}

TEST(ErmTest, DeterministicTasks) {
  const ErmTask a = MakeLogisticTask(6, 1, 4, 12);
  const ErmTask b = MakeLogisticTask(6, 1, 4, 12);
  EXPECT_EQ(a.planted, b.planted);
  EXPECT_NEAR(a.planted.norm(), 4, 1e-12);
}

}  // namespace
}  // namespace rcdp
