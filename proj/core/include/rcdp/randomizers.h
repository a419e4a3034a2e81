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

// Local randomizers: finite mechanisms for exhaustive verification and
// clipped Gaussian/Laplace gradient perturbation for the simulators.

#ifndef RCDP_RANDOMIZERS_H_
#define RCDP_RANDOMIZERS_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "absl/status/statusor.h"
#include "rcdp/accountant.h"

namespace rcdp {

using Rng = std::mt19937_64;

// Seed for trial `index` of a run seeded with `base` (SplitMix64 finalizer).
uint64_t DeriveSeed(uint64_t base, uint64_t index);

// A finite local randomizer given by its row-stochastic table
// Pr[output = o | input = x]. Inputs and outputs are dense indices.
class DiscreteMechanism {
 public:
  // Rows must be nonnegative and sum to 1 within 1e-12.
  static absl::StatusOr<DiscreteMechanism> Create(
      std::vector<std::vector<double>> table);

  int num_inputs() const { return static_cast<int>(table_.size()); }
  int num_outputs() const { return num_outputs_; }
  double Prob(int input, int output) const { return table_[input][output]; }
  std::span<const double> Row(int input) const { return table_[input]; }

  // max_{o, x, x'} log(P[x][o] / P[x'][o]); +inf if some output is possible
  // under one input but not another.
  double MeasuredEpsilon() const;

  int Sample(int input, Rng& rng) const;

 private:
  explicit DiscreteMechanism(std::vector<std::vector<double>> table)
      : table_(std::move(table)),
        num_outputs_(static_cast<int>(table_.front().size())) {}

  std::vector<std::vector<double>> table_;
  int num_outputs_;
};

// Binary randomized response keeping the input bit with probability
// e^eps0 / (1 + e^eps0). eps0 = 0 yields the uniform table.
absl::StatusOr<DiscreteMechanism> RandomizedResponse(double epsilon0);

enum class NoiseKind { kGaussian, kLaplace };

// Clips a gradient to clip_norm in L2 and adds i.i.d. per-coordinate noise:
// N(0, noise_scale^2) for kGaussian, Laplace(noise_scale) for kLaplace.
// noise_scale = 0 gives the noiseless clipped gradient.
struct GradientRandomizer {
  double clip_norm = 1;
  double noise_scale = 1;
  NoiseKind kind = NoiseKind::kGaussian;
  int dimension = 1;
};

absl::Status ValidateRandomizer(const GradientRandomizer& r);

// Rescales g to L2 norm at most clip_norm; leaves shorter vectors unchanged.
Eigen::VectorXd ClipToNorm(const Eigen::VectorXd& g, double clip_norm);

absl::StatusOr<Eigen::VectorXd> PrivatizeGradient(const GradientRandomizer& r,
                                                  const Eigen::VectorXd& g,
                                                  Rng& rng);

// Classical Gaussian-mechanism calibration with replace-one sensitivity
// 2 * clip_norm: eps0 = (2 L / sigma) sqrt(2 ln(1.25 / delta0)). The classical
// analysis only covers eps0 <= 1, larger values are rejected.
absl::StatusOr<LocalSpec> GaussianLocalSpec(const GradientRandomizer& r,
                                            double delta0);

// Per-coordinate Laplace scale 2 L sqrt(p) / eps0 giving a pure eps0-DP
// randomizer (L2 sensitivity 2L bounds L1 sensitivity by 2L sqrt(p)).
absl::StatusOr<double> LaplaceScaleFor(double clip_norm, int dimension,
                                       double epsilon0);

// Inverse of LaplaceScaleFor() for a kLaplace randomizer.
absl::StatusOr<LocalSpec> LaplaceLocalSpec(const GradientRandomizer& r);

}  // namespace rcdp

#endif  // RCDP_RANDOMIZERS_H_
