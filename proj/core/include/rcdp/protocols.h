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

// Simulators for distributed DP-SGD with random check-ins, and the reference
// protocols (one random replacement, one swap, shuffling, bins) that the
// privacy analysis reduces to.
//
// Slots and clients are 1-based in the protocol descriptions; here they are
// 0-based everywhere: client j in [0, n), slot i in [0, m).

#ifndef RCDP_PROTOCOLS_H_
#define RCDP_PROTOCOLS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "absl/status/statusor.h"
#include "rcdp/accountant.h"
#include "rcdp/erm.h"
#include "rcdp/randomizers.h"

namespace rcdp {

// Client j checks in with probability `probability`, into a slot drawn
// uniformly from `window`.
struct CheckInPolicy {
  std::vector<int64_t> window;
  double probability = 1;
};

enum class PolicyKind { kFixed, kSliding, kAvg };

// Step size as a function of a 1-based step index: served slot / b for the
// fixed window, the served slot (skipped ones included) otherwise.
using LearningRate = std::function<double(int64_t)>;

struct SimConfig {
  int64_t n_clients = 1;
  // m: the window length. Fixed and averaged protocols run m slots; the
  // sliding protocol serves n - m + 1 slots.
  int64_t n_slots = 1;
  int64_t batch_size = 1;
  PolicyKind policy = PolicyKind::kFixed;
  double p0 = 1;  // kFixed only
  GradientRandomizer randomizer;
  LearningRate learning_rate;
  uint64_t seed = 0;
  // Scales client gradients by DebiasFactor(n, p0, m). kFixed only.
  bool debias = false;
  bool record_iterates = true;
};

struct ProtocolTrace {
  // Per served slot, in slot order.
  std::vector<std::vector<int64_t>> check_ins;  // S_i, sorted by client
  std::vector<std::optional<int64_t>> selected;  // J_i
  std::vector<bool> dummy;
  std::vector<bool> skipped;
  std::vector<int64_t> bin_loads;  // |S_i|
  // theta after each served slot (empty unless record_iterates and a task
  // was supplied).
  std::vector<Eigen::VectorXd> iterates;
  Eigen::VectorXd final_model;
  int64_t dummy_count = 0;
  int64_t skipped_count = 0;
};

absl::Status ValidateSimConfig(const SimConfig& config);

// The check-in policy of client j (0-based) under `config`.
CheckInPolicy PolicyFor(const SimConfig& config, int64_t client);

// Fixed window: each client checks in w.p. p0 into a uniform slot of [m].
// Per slot the server serves one uniformly chosen checked-in client or a
// dummy gradient (the randomizer applied to zero), and applies
// theta <- P(theta - eta / b * g) when the 1-based slot index is a multiple
// of b. With task == nullptr only the check-in schedule is simulated and
// `data` is ignored.
absl::StatusOr<ProtocolTrace> RunFixed(const SimConfig& config,
                                       const ErmTask* task,
                                       std::span<const Example> data);

// Averaged updates: every client checks into a uniform slot of [m]; empty
// slots leave theta unchanged, nonempty slots step along the mean noisy
// gradient of all their clients.
absl::StatusOr<ProtocolTrace> RunAvg(const SimConfig& config,
                                     const ErmTask* task,
                                     std::span<const Example> data);

// Sliding windows: client j checks into a uniform slot of [j, j + m). Slots
// before m - 1 are warm-up; the server serves slots m - 1 .. n - 1, giving
// n - m + 1 iterates. Requires m <= n.
absl::StatusOr<ProtocolTrace> RunSliding(const SimConfig& config,
                                         const ErmTask* task,
                                         std::span<const Example> data);

// Dispatches on config.policy.
absl::StatusOr<ProtocolTrace> RunProtocol(const SimConfig& config,
                                          const ErmTask* task,
                                          std::span<const Example> data);

// A local randomizer that may depend on its position and on all previous
// outputs: returns an output symbol for `datum` at 0-based `position`.
using AdaptiveRandomizer = std::function<int(
    int64_t position, int datum, std::span<const int> prefix, Rng& rng)>;

// Wraps a fixed DiscreteMechanism as a non-adaptive AdaptiveRandomizer.
AdaptiveRandomizer NonAdaptive(const DiscreteMechanism& mech);

// sigma_I of the one-swap protocol: the identity order with positions 0 and
// I exchanged, I uniform in [0, n).
std::vector<int64_t> SwapOrder(int64_t n, Rng& rng);

// A uniformly random permutation of [0, n).
std::vector<int64_t> ShuffleOrder(int64_t n, Rng& rng);

// One random replacement over a dataset of size m: slot 0 holds
// `replacement` and slot I (uniform) holds data[0] with probability
// weights[I]. Then the randomizer runs over the slots in order. Each weight
// must lie in [0, w_max] and w_max in [0, 1].
absl::StatusOr<std::vector<int>> RunReplacement(
    std::span<const int> data, std::span<const double> weights, double w_max,
    int replacement, const AdaptiveRandomizer& randomizer, Rng& rng);

// Swaps data[0] with a uniform data[I], then randomizes in order.
absl::StatusOr<std::vector<int>> RunSwap(std::span<const int> data,
                                         const AdaptiveRandomizer& randomizer,
                                         Rng& rng);

// Randomizes a uniformly shuffled copy of `data`.
absl::StatusOr<std::vector<int>> RunShuffle(
    std::span<const int> data, const AdaptiveRandomizer& randomizer, Rng& rng);

// DP-SGD over consecutive bins: bin i averages the noisy gradients of the
// next bins.ell[i] records; empty bins keep theta. Returns theta_2..m+1.
// Callers wanting the swapped variant permute `data` with SwapOrder().
absl::StatusOr<std::vector<Eigen::VectorXd>> RunBins(
    const ErmTask& task, std::span<const Example> data, const BinSizes& bins,
    const GradientRandomizer& randomizer, const LearningRate& learning_rate,
    Rng& rng);

}  // namespace rcdp

#endif  // RCDP_PROTOCOLS_H_
