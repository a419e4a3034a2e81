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

#include "rcdp/protocols.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace rcdp {
namespace {

absl::Status CheckData(const SimConfig& config, const ErmTask* task,
                       std::span<const Example> data) {
  if (task == nullptr) return absl::OkStatus();
  if (static_cast<int64_t>(data.size()) != config.n_clients) {
    return absl::InvalidArgumentError(
        absl::StrFormat("dataset has %d records but n_clients = %d",
                        data.size(), config.n_clients));
  }
  if (task->dimension != config.randomizer.dimension) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "task dimension %d does not match randomizer dimension %d",
        task->dimension, config.randomizer.dimension));
  }
  if (!config.learning_rate) {
    return absl::InvalidArgumentError("a learning-rate schedule is required");
  }
  for (const Example& ex : data) {
    if (ex.x.size() != task->dimension) {
      return absl::InvalidArgumentError("record dimension mismatch");
    }
  }
  return absl::OkStatus();
}

// Runs the server over the served slots. `sets` holds S_i for each served
// slot. With `averaged`, every checked-in client contributes and empty slots
// are skipped; otherwise one client is sampled and empty slots get a dummy.
absl::StatusOr<ProtocolTrace> Serve(const SimConfig& config,
                                    const ErmTask* task,
                                    std::span<const Example> data,
                                    std::vector<std::vector<int64_t>> sets,
                                    bool averaged, double client_scale,
                                    Rng& rng) {
  ProtocolTrace trace;
  const size_t slots = sets.size();
  trace.selected.assign(slots, std::nullopt);
  trace.dummy.assign(slots, false);
  trace.skipped.assign(slots, false);
  trace.bin_loads.resize(slots);

  const int p = config.randomizer.dimension;
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd accumulator = Eigen::VectorXd::Zero(p);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(p);
  const int64_t b = config.batch_size;

  for (size_t i = 0; i < slots; ++i) {
    const std::vector<int64_t>& s = sets[i];
    trace.bin_loads[i] = static_cast<int64_t>(s.size());
    const int64_t slot = static_cast<int64_t>(i) + 1;

    if (averaged) {
      if (s.empty()) {
        trace.skipped[i] = true;
        ++trace.skipped_count;
      } else if (task != nullptr) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(p);
        for (int64_t j : s) {
          absl::StatusOr<Eigen::VectorXd> g = PrivatizeGradient(
              config.randomizer, LossGradient(*task, data[j], theta), rng);
          if (!g.ok()) return g.status();
          sum += *g;
        }
        const double eta = config.learning_rate(slot);
        theta = Project(*task, theta - (eta / static_cast<double>(s.size())) *
                                           sum);
      }
    } else {
      Eigen::VectorXd g;
      if (s.empty()) {
        trace.dummy[i] = true;
        ++trace.dummy_count;
        if (task != nullptr) {
          absl::StatusOr<Eigen::VectorXd> noisy =
              PrivatizeGradient(config.randomizer, zero, rng);
          if (!noisy.ok()) return noisy.status();
          g = *std::move(noisy);
        }
      } else {
        std::uniform_int_distribution<size_t> pick(0, s.size() - 1);
        const int64_t j = s[pick(rng)];
        trace.selected[i] = j;
        if (task != nullptr) {
          absl::StatusOr<Eigen::VectorXd> noisy = PrivatizeGradient(
              config.randomizer, LossGradient(*task, data[j], theta), rng);
          if (!noisy.ok()) return noisy.status();
          g = client_scale * *noisy;
        }
      }
      if (task != nullptr) {
        accumulator += g;
        if (slot % b == 0) {
          const double eta = config.learning_rate(slot / b);
          theta = Project(*task,
                          theta - (eta / static_cast<double>(b)) * accumulator);
          accumulator.setZero();
        }
      }
    }
    if (task != nullptr && config.record_iterates) {
      trace.iterates.push_back(theta);
    }
  }
  trace.check_ins = std::move(sets);
  trace.final_model = std::move(theta);
  return trace;
}

}  // namespace

absl::Status ValidateSimConfig(const SimConfig& config) {
  if (config.n_clients < 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("n_clients must be >= 0, got %d", config.n_clients));
  }
  if (config.n_slots < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("n_slots must be >= 1, got %d", config.n_slots));
  }
  if (config.batch_size < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("batch_size must be >= 1, got %d", config.batch_size));
  }
  if (!(config.p0 >= 0 && config.p0 <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("p0 must lie in [0, 1], got %.17g", config.p0));
  }
  if (absl::Status s = ValidateRandomizer(config.randomizer); !s.ok()) {
    return s;
  }
  switch (config.policy) {
    case PolicyKind::kFixed:
      if (config.n_slots % config.batch_size != 0) {
        return absl::InvalidArgumentError(
            absl::StrFormat("batch_size %d must divide n_slots %d",
                            config.batch_size, config.n_slots));
      }
      break;
    case PolicyKind::kSliding:
      if (config.n_slots > config.n_clients) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "sliding windows need m <= n, got m = %d, n = %d", config.n_slots,
            config.n_clients));
      }
      [[fallthrough]];
    case PolicyKind::kAvg:
      if (config.batch_size != 1) {
        return absl::InvalidArgumentError(
            "batch_size must be 1 for sliding and averaged protocols");
      }
      break;
  }
  if (config.debias && config.policy != PolicyKind::kFixed) {
    return absl::InvalidArgumentError("debias applies to the fixed window only");
  }
  return absl::OkStatus();
}

CheckInPolicy PolicyFor(const SimConfig& config, int64_t client) {
  CheckInPolicy policy;
  const int64_t m = config.n_slots;
  const int64_t start = config.policy == PolicyKind::kSliding ? client : 0;
  policy.window.resize(static_cast<size_t>(m));
  std::iota(policy.window.begin(), policy.window.end(), start);
  policy.probability = config.policy == PolicyKind::kFixed ? config.p0 : 1.0;
  return policy;
}

absl::StatusOr<ProtocolTrace> RunFixed(const SimConfig& config,
                                       const ErmTask* task,
                                       std::span<const Example> data) {
  if (config.policy != PolicyKind::kFixed) {
    return absl::InvalidArgumentError("RunFixed needs a fixed-window config");
  }
  if (absl::Status s = ValidateSimConfig(config); !s.ok()) return s;
  if (absl::Status s = CheckData(config, task, data); !s.ok()) return s;
  double scale = 1;
  if (config.debias) {
    absl::StatusOr<double> factor =
        DebiasFactor(config.n_clients, config.p0, config.n_slots);
    if (!factor.ok()) return factor.status();
    scale = *factor;
  }
  Rng rng(config.seed);
  std::bernoulli_distribution coin(config.p0);
  std::uniform_int_distribution<int64_t> slot(0, config.n_slots - 1);
  std::vector<std::vector<int64_t>> sets(static_cast<size_t>(config.n_slots));
  for (int64_t j = 0; j < config.n_clients; ++j) {
    if (!coin(rng)) continue;
    sets[static_cast<size_t>(slot(rng))].push_back(j);
  }
  return Serve(config, task, data, std::move(sets), /*averaged=*/false, scale,
               rng);
}

absl::StatusOr<ProtocolTrace> RunAvg(const SimConfig& config,
                                     const ErmTask* task,
                                     std::span<const Example> data) {
  if (config.policy != PolicyKind::kAvg) {
    return absl::InvalidArgumentError("RunAvg needs an averaged config");
  }
  if (absl::Status s = ValidateSimConfig(config); !s.ok()) return s;
  if (absl::Status s = CheckData(config, task, data); !s.ok()) return s;
  Rng rng(config.seed);
  std::uniform_int_distribution<int64_t> slot(0, config.n_slots - 1);
  std::vector<std::vector<int64_t>> sets(static_cast<size_t>(config.n_slots));
  for (int64_t j = 0; j < config.n_clients; ++j) {
    sets[static_cast<size_t>(slot(rng))].push_back(j);
  }
  return Serve(config, task, data, std::move(sets), /*averaged=*/true, 1.0,
               rng);
}

absl::StatusOr<ProtocolTrace> RunSliding(const SimConfig& config,
                                         const ErmTask* task,
                                         std::span<const Example> data) {
  if (config.policy != PolicyKind::kSliding) {
    return absl::InvalidArgumentError("RunSliding needs a sliding config");
  }
  if (absl::Status s = ValidateSimConfig(config); !s.ok()) return s;
  if (absl::Status s = CheckData(config, task, data); !s.ok()) return s;
  const int64_t n = config.n_clients;
  const int64_t m = config.n_slots;
  Rng rng(config.seed);
  std::uniform_int_distribution<int64_t> offset(0, m - 1);
  // Served slots are m - 1 .. n - 1; check-ins outside that range are never
  // served.
  std::vector<std::vector<int64_t>> sets(static_cast<size_t>(n - m + 1));
  for (int64_t j = 0; j < n; ++j) {
    const int64_t slot = j + offset(rng);
    if (slot >= m - 1 && slot <= n - 1) {
      sets[static_cast<size_t>(slot - (m - 1))].push_back(j);
    }
  }
  return Serve(config, task, data, std::move(sets), /*averaged=*/false, 1.0,
               rng);
}

absl::StatusOr<ProtocolTrace> RunProtocol(const SimConfig& config,
                                          const ErmTask* task,
                                          std::span<const Example> data) {
  switch (config.policy) {
    case PolicyKind::kFixed:
      return RunFixed(config, task, data);
    case PolicyKind::kSliding:
      return RunSliding(config, task, data);
    case PolicyKind::kAvg:
      return RunAvg(config, task, data);
  }
  return absl::InternalError("unknown policy");
}

AdaptiveRandomizer NonAdaptive(const DiscreteMechanism& mech) {
  return [mech](int64_t, int datum, std::span<const int>, Rng& rng) {
    return mech.Sample(datum, rng);
  };
}

std::vector<int64_t> SwapOrder(int64_t n, Rng& rng) {
  std::vector<int64_t> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  if (n == 0) return order;
  std::uniform_int_distribution<int64_t> pick(0, n - 1);
  std::swap(order[0], order[static_cast<size_t>(pick(rng))]);
  return order;
}

std::vector<int64_t> ShuffleOrder(int64_t n, Rng& rng) {
  std::vector<int64_t> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

namespace {

std::vector<int> RandomizeInOrder(std::span<const int> sequence,
                                  const AdaptiveRandomizer& randomizer,
                                  Rng& rng) {
  std::vector<int> out;
  out.reserve(sequence.size());
  for (size_t i = 0; i < sequence.size(); ++i) {
    out.push_back(randomizer(static_cast<int64_t>(i), sequence[i], out, rng));
  }
  return out;
}

std::vector<int> Permuted(std::span<const int> data,
                          const std::vector<int64_t>& order) {
  std::vector<int> out(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    out[i] = data[static_cast<size_t>(order[i])];
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<int>> RunReplacement(
    std::span<const int> data, std::span<const double> weights, double w_max,
    int replacement, const AdaptiveRandomizer& randomizer, Rng& rng) {
  if (data.empty()) {
    return absl::InvalidArgumentError("replacement needs m >= 1 records");
  }
  if (weights.size() != data.size()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("expected %d weights, got %d", data.size(),
                        weights.size()));
  }
  if (!(w_max >= 0 && w_max <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("w_max must lie in [0, 1], got %.17g", w_max));
  }
  for (double w : weights) {
    if (!(w >= 0 && w <= w_max)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "weight %.17g lies outside [0, w_max = %.17g]", w, w_max));
    }
  }
  const size_t m = data.size();
  std::uniform_int_distribution<size_t> pick(0, m - 1);
  const size_t slot = pick(rng);
  std::vector<int> g(data.begin(), data.end());
  g[0] = replacement;
  std::bernoulli_distribution place(weights[slot]);
  if (place(rng)) g[slot] = data[0];
  return RandomizeInOrder(g, randomizer, rng);
}

absl::StatusOr<std::vector<int>> RunSwap(std::span<const int> data,
                                         const AdaptiveRandomizer& randomizer,
                                         Rng& rng) {
  if (data.empty()) return absl::InvalidArgumentError("empty dataset");
  const std::vector<int> swapped =
      Permuted(data, SwapOrder(static_cast<int64_t>(data.size()), rng));
  return RandomizeInOrder(swapped, randomizer, rng);
}

absl::StatusOr<std::vector<int>> RunShuffle(
    std::span<const int> data, const AdaptiveRandomizer& randomizer, Rng& rng) {
  if (data.empty()) return absl::InvalidArgumentError("empty dataset");
  const std::vector<int> shuffled =
      Permuted(data, ShuffleOrder(static_cast<int64_t>(data.size()), rng));
  return RandomizeInOrder(shuffled, randomizer, rng);
}

absl::StatusOr<std::vector<Eigen::VectorXd>> RunBins(
    const ErmTask& task, std::span<const Example> data, const BinSizes& bins,
    const GradientRandomizer& randomizer, const LearningRate& learning_rate,
    Rng& rng) {
  if (!learning_rate) {
    return absl::InvalidArgumentError("a learning-rate schedule is required");
  }
  int64_t total = 0;
  for (int64_t l : bins.ell) {
    if (l < 0) return absl::InvalidArgumentError("bin sizes must be >= 0");
    total += l;
  }
  if (total != static_cast<int64_t>(data.size()) || total != bins.n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "bin sizes sum to %d but the dataset has %d records (n = %d)", total,
        data.size(), bins.n));
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(task.dimension);
  std::vector<Eigen::VectorXd> out;
  out.reserve(bins.ell.size());
  size_t next = 0;
  for (size_t i = 0; i < bins.ell.size(); ++i) {
    const int64_t l = bins.ell[i];
    if (l > 0) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(task.dimension);
      for (int64_t k = 0; k < l; ++k, ++next) {
        absl::StatusOr<Eigen::VectorXd> g = PrivatizeGradient(
            randomizer, LossGradient(task, data[next], theta), rng);
        if (!g.ok()) return g.status();
        sum += *g;
      }
      const double eta = learning_rate(static_cast<int64_t>(i) + 1);
      theta = Project(task, theta - (eta / static_cast<double>(l)) * sum);
    }
    out.push_back(theta);
  }
  return out;
}

}  // namespace rcdp
