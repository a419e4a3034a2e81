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

// Closed-form central-DP accounting for random check-in protocols, shuffling,
// swapping, random replacement and binned DP-SGD.
//
// Every bound takes the parameters of an (epsilon0, delta0) local randomizer.
// When delta0 == 0 the pure formula is evaluated directly. When delta0 > 0 the
// caller must supply delta1; the randomizer is first checked against the
// admissibility threshold returned by CheuDeltaThreshold(), after which the
// pure formula is evaluated at 8 * epsilon0 and the failure probability is
// inflated by k * (exp(epsilon') + 1) * delta1 for the k local randomizer
// invocations of the protocol.
//
// All functions are pure and thread-safe.

#ifndef RCDP_ACCOUNTANT_H_
#define RCDP_ACCOUNTANT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace rcdp {

// A central (epsilon, delta) guarantee.
struct PrivacyPair {
  double epsilon = 0;
  double delta = 0;
  // Set by amplification bounds when epsilon is no smaller than the local
  // epsilon0 (or 8 * epsilon0 on the approximate-DP branch), i.e. the bound
  // gives no amplification.
  bool vacuous = false;
};

// Parameters of a local randomizer.
struct LocalSpec {
  double epsilon0 = 0;
  double delta0 = 0;
};

struct FixedWindowParams {
  int64_t n = 1;
  int64_t m = 1;
  double p0 = 1;
  double delta = 1e-6;
  std::optional<double> delta1;
};

struct AvgParams {
  int64_t n = 1;
  int64_t m = 1;
  double delta = 1e-6;
  double delta2 = 1e-6;
  std::optional<double> delta1;
};

struct CompositionSchedule {
  std::vector<double> eps_list;
};

struct BinSizes {
  std::vector<int64_t> ell;
  int64_t n = 0;
};

// Largest delta0 for which an (epsilon0, delta0) randomizer is within total
// variation delta1 of an 8 * epsilon0 pure randomizer:
//   (1 - e^-eps0) delta1 / (4 e^eps0 (2 + ln(2/delta1) / ln(1/(1 - e^-5eps0)))).
absl::StatusOr<double> CheuDeltaThreshold(double epsilon0, double delta1);

// Random check-ins into a fixed window of m slots with probability p0.
absl::StatusOr<PrivacyPair> FixedWindowBound(const LocalSpec& spec,
                                             const FixedWindowParams& params);

// 7 p0 eps0 sqrt(log(1/delta) / m); valid for eps0 <= 1, delta <= 1/100 and
// pure local randomizers only.
absl::StatusOr<PrivacyPair> FixedWindowSimplified(
    const LocalSpec& spec, const FixedWindowParams& params);

// Random check-ins with averaged updates (p_j = 1, window [m]). The returned
// delta includes delta2, the probability that the bin loads are atypically
// unbalanced.
absl::StatusOr<PrivacyPair> AvgBound(const LocalSpec& spec,
                                     const AvgParams& params);

// Random check-ins into sliding windows of length m over n slots.
absl::StatusOr<PrivacyPair> SlidingWindowBound(
    const LocalSpec& spec, int64_t n, int64_t m, double delta,
    std::optional<double> delta1 = std::nullopt);

// Amplification by shuffling n adaptive local randomizers.
absl::StatusOr<PrivacyPair> ShuffleBoundNew(
    const LocalSpec& spec, int64_t n, double delta,
    std::optional<double> delta1 = std::nullopt);

// The earlier shuffling bound that ShuffleBoundNew() improves on. Pure
// randomizers only.
absl::StatusOr<PrivacyPair> ShuffleBoundOld(const LocalSpec& spec, int64_t n,
                                            double delta);

// Amplification by swapping the first record with a uniform position.
absl::StatusOr<PrivacyPair> SwapBound(
    const LocalSpec& spec, int64_t n, double delta,
    std::optional<double> delta1 = std::nullopt);

// Amplification by one random replacement with placement weights bounded by
// w_max.
absl::StatusOr<PrivacyPair> ReplacementBound(
    const LocalSpec& spec, int64_t m, double w_max, double delta,
    std::optional<double> delta1 = std::nullopt);

// DP-SGD over consecutive bins of sizes ell after one random swap.
absl::StatusOr<PrivacyPair> BinSgdBound(
    const LocalSpec& spec, const BinSizes& bins, double delta,
    std::optional<double> delta1 = std::nullopt);

// Closed-form bound for k-fold composition of mechanisms with
// eps_i <= log(1 + a / (k - b (i - 1))).
absl::StatusOr<PrivacyPair> HetComposition(double a, double b, int64_t k,
                                           double delta);

// Heterogeneous advanced composition:
//   sum_i (e^eps_i - 1) eps_i / (e^eps_i + 1) + sqrt(2 log(1/delta) sum eps_i^2).
absl::StatusOr<PrivacyPair> KovComposition(const CompositionSchedule& schedule,
                                           double delta);

// Advanced composition of k copies of per_step:
//   eps sqrt(2 k log(1/delta_slack)) + k eps (e^eps - 1),
//   delta = k per_step.delta + delta_slack.
absl::StatusOr<PrivacyPair> AdvancedComposition(const PrivacyPair& per_step,
                                                int64_t k, double delta_slack);

// One epoch of fixed-window check-ins with p0 = m / n repeated floor(n / m)
// times and composed with AdvancedComposition(). Clients left over when m
// does not divide n do not participate. Each repetition is charged
// beta_fail as its delta.
absl::StatusOr<PrivacyPair> EpochComposition(const LocalSpec& spec, int64_t n,
                                             int64_t m, double beta_fail,
                                             double delta_slack);

// e^eps0 / (1 + q (e^eps0 - 1)).
absl::StatusOr<double> BiasedSamplingRatio(double epsilon0, double q);

// Upper bound on Pr[planted index = i | first i - 1 outputs] for random
// replacement over m slots: e^eps0 / (i - 1 + e^eps0 (m - i + 1)).
absl::StatusOr<double> PosteriorBoundFixed(double epsilon0, int64_t m,
                                           int64_t i);

// Same for one random swap over n records:
// e^{2 eps0} / (e^{2 eps0} + (i - 1) + (n - i) e^eps0).
absl::StatusOr<double> PosteriorBoundSwap(double epsilon0, int64_t n,
                                          int64_t i);

// m (1 - p0 / m)^n.
absl::StatusOr<double> ExpectedDummyFixed(int64_t n, int64_t m, double p0);

// (n - m + 1) (1 - 1/m)^m.
absl::StatusOr<double> ExpectedDummySliding(int64_t n, int64_t m);

// sqrt(n + n^2 / m) + sqrt(n log(1/delta)); holds for the L2 norm of the bin
// loads with probability at least 1 - delta.
absl::StatusOr<double> BinLoadL2Bound(int64_t n, int64_t m, double delta);

// The per-step epsilons eps_i = log(1 + a / (k - b (i - 1))), i = 1..k, that
// HetComposition() bounds.
std::vector<double> HetSchedule(double a, double b, int64_t k);

// The per-step epsilons of the random replacement argument:
// eps_i = log(1 + w_max e^eps0 (e^eps0 - 1) / (i - 1 + e^eps0 (m - i + 1))).
std::vector<double> ReplacementSchedule(double epsilon0, int64_t m,
                                        double w_max);

}  // namespace rcdp

#endif  // RCDP_ACCOUNTANT_H_
