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

#include <cmath>

#include "gtest/gtest.h"
#include "rcdp/erm.h"
#include "rcdp/protocols.h"

namespace rcdp {
namespace {

TEST(EstimateModelTest, LastAndAverage) {
  ProtocolTrace trace;
  trace.iterates = {Eigen::VectorXd::Constant(2, 1.0),
                    Eigen::VectorXd::Constant(2, 3.0)};
  trace.final_model = trace.iterates.back();
  EXPECT_EQ(EstimateModel(trace, Estimator::kLastIterate).value(),
            Eigen::VectorXd::Constant(2, 3.0));
  EXPECT_EQ(EstimateModel(trace, Estimator::kAverageIterate).value(),
            Eigen::VectorXd::Constant(2, 2.0));
  trace.iterates.clear();
  EXPECT_FALSE(EstimateModel(trace, Estimator::kAverageIterate).ok());
}

TEST(ExcessRiskTest, ZeroAtOptimumAndPositiveElsewhere) {
  ErmTask task = MakeLogisticTask(3, 1, 3, 4);
  Rng rng(1);
  const Dataset eval = SampleDataset(task, 2000, rng);
  EXPECT_FALSE(ExcessRisk(task, eval, Eigen::VectorXd::Zero(3)).ok());
  task.optimum = ComputeOptimum(task, eval, 1e-10).value();
  EXPECT_NEAR(ExcessRisk(task, eval, *task.optimum).value(), 0, 1e-15);
  EXPECT_GT(ExcessRisk(task, eval, Eigen::VectorXd::Zero(3)).value(), 0);
}

TEST(ExcessRiskTest, NoiselessTrainingApproachesTheOptimum) {
  ErmTask task = MakeLogisticTask(3, 1, 3, 4);
  Rng rng(2);
  const Dataset eval = SampleDataset(task, 5000, rng);
  task.optimum = ComputeOptimum(task, eval, 1e-10).value();
  const Dataset train = SampleDataset(task, 4000, rng);
  SimConfig c{.n_clients = 4000,
              .n_slots = 2000,
              .policy = PolicyKind::kAvg,
              .randomizer = {.clip_norm = 1, .noise_scale = 0, .dimension = 3},
              .learning_rate =
                  [&task](int64_t i) {
                    return LrAvg(i, task, 0, 4000, 2000).value();
                  },
              .seed = 3};
  auto trace = RunProtocol(c, &task, train);
  ASSERT_TRUE(trace.ok()) << trace.status();
  const double start = ExcessRisk(task, eval, Eigen::VectorXd::Zero(3)).value();
  const double end =
      ExcessRisk(*trace, task, Estimator::kAverageIterate, eval).value();
  EXPECT_LT(end, 0.1 * start);
}

}  // namespace
}  // namespace rcdp
