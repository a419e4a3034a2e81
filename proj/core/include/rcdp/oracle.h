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

// Exact output distributions of the protocols on tiny instances over a finite
// data domain, and the checks built on them.
//
// Every protocol releases one symbol per served slot. Single-client slots
// release the local randomizer's output. Averaging slots (kAvg, kBins)
// release (number of contributors, number of outputs equal to 1), which
// determines the averaged update; these protocols need a two-output
// mechanism. The release of a model trajectory is a deterministic function
// of these symbols, so privacy of the symbols implies privacy of the models.

#ifndef RCDP_ORACLE_H_
#define RCDP_ORACLE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rcdp/accountant.h"
#include "rcdp/randomizers.h"

namespace rcdp {

enum class ProtocolId {
  kFixed,
  kSliding,
  kAvg,
  kReplacement,
  kSwap,
  kShuffle,
  kBins,
};

std::string ProtocolName(ProtocolId id);
absl::StatusOr<ProtocolId> ParseProtocolId(const std::string& name);

// Protocol parameters for enumeration. The dataset size is n for every
// protocol except kReplacement, where it is m.
struct OracleParams {
  int m = 1;
  double p0 = 1;                 // kFixed
  std::vector<double> weights;   // kReplacement, size m
  double w_max = 1;              // kReplacement
  int replacement = 0;           // kReplacement: d_r
  std::vector<int64_t> bins;     // kBins: ell, summing to n
  int dummy_datum = 0;           // fed to the randomizer on empty slots
  int64_t atom_cap = 10'000'000;
};

// Output sequence -> probability. Missing sequences have probability 0.
struct OutputLaw {
  std::map<std::vector<int>, long double> atoms;

  long double TotalMass() const;
  long double Prob(const std::vector<int>& outcome) const;
};

// Exact law of the protocol's released symbols on `dataset`, summing over all
// check-in draws, selections, placements, permutations and randomizer coins.
// Fails when the enumeration would exceed params.atom_cap.
absl::StatusOr<OutputLaw> EnumerateLaw(ProtocolId protocol,
                                       std::span<const int> dataset,
                                       const DiscreteMechanism& mech,
                                       const OracleParams& params);

// sum_o max(P(o) - e^epsilon Q(o), 0).
long double HockeyStick(const OutputLaw& p, const OutputLaw& q,
                        double epsilon);

// max_o |P(o) - Q(o)|.
long double MaxAtomDifference(const OutputLaw& p, const OutputLaw& q);

enum class NeighborScope {
  kFirstIndex,  // datasets differing in record 0 (the "at index 1" claims)
  kAnyIndex,
};

struct BoundReport {
  ProtocolId protocol = ProtocolId::kFixed;
  double epsilon = 0;
  double delta_bound = 0;
  long double delta_emp = 0;
  std::vector<int> worst_dataset;
  std::vector<int> worst_neighbor;
  int64_t pairs_checked = 0;
  bool passed = false;

  double margin() const {
    return delta_bound - static_cast<double>(delta_emp);
  }
};

// Checks every pair of neighbouring datasets of size `size` over the
// mechanism's input domain, in both directions, at epsilon = bound.epsilon.
// Passes iff the worst hockey-stick divergence is <= bound.delta + 1e-9.
absl::StatusOr<BoundReport> VerifyBound(ProtocolId protocol, int size,
                                        const DiscreteMechanism& mech,
                                        const OracleParams& params,
                                        const PrivacyPair& bound,
                                        NeighborScope scope);

std::string BoundReportJson(const BoundReport& report);

struct PosteriorRecord {
  int i = 1;                 // 1-based position whose index posterior this is
  std::vector<int> prefix;   // the first i - 1 outputs
  long double q = 0;         // Pr[planted index = i | prefix]
};

// Bayes-exact Pr[I = i | first i - 1 outputs] for every i and every prefix of
// positive probability. kReplacement uses params.weights and
// params.replacement; kSwap swaps record 0 with a uniform record.
absl::StatusOr<std::vector<PosteriorRecord>> ExactPosterior(
    ProtocolId protocol, std::span<const int> dataset,
    const DiscreteMechanism& mech, const OracleParams& params);

struct RatioReport {
  double max_ratio = 0;
  double bound = 0;
  int worst_output = 0;
  int worst_alternative = -1;  // index of the point-mass alternative
  bool passed = false;
};

// For A(d_k) against A(BiasedSampling_q(D, k)), the largest probability
// ratio over singleton output sets and their complements, maximised over the
// uniform alternative on D \ {d_k} and every point-mass alternative. Passes
// iff it is <= e^eps0 / (1 + q (e^eps0 - 1)) + 1e-9 with eps0 the
// mechanism's measured epsilon.
absl::StatusOr<RatioReport> VerifyRatioLemma(const DiscreteMechanism& mech,
                                             std::span<const int> dataset,
                                             int k, double q);

// The fixed-window law rebuilt through one random replacement for client
// i_star: the other clients check in, slots keep a reservoir sample of their
// clients (the dummy datum when empty) with weight 1 / (|S_i| + 1), and
// client i_star is placed at a uniform slot I with probability p0 W[I].
absl::StatusOr<OutputLaw> FixedViaReplacementLaw(std::span<const int> dataset,
                                                 int i_star,
                                                 const DiscreteMechanism& mech,
                                                 const OracleParams& params);

// The shuffling law rebuilt as the average over bijections
// pi*: {2..n} -> [n] \ {i_star} of the one-swap law on
// (d_{i_star}, d_{pi*(2)}, ..., d_{pi*(n)}).
absl::StatusOr<OutputLaw> ShuffleViaSwapLaw(std::span<const int> dataset,
                                            int i_star,
                                            const DiscreteMechanism& mech,
                                            const OracleParams& params);

}  // namespace rcdp

#endif  // RCDP_ORACLE_H_
