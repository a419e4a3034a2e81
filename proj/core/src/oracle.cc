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

#include "rcdp/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "json.hpp"

namespace rcdp {
namespace {

using SlotDist = std::vector<long double>;

// One branch of the protocol's coins that fixes what every slot randomizes:
// the released sequence is then a product of independent slot laws.
struct Scenario {
  long double weight = 0;
  std::vector<SlotDist> slots;
};

constexpr long double kSlack = 1e-9L;

SlotDist RowDist(const DiscreteMechanism& mech, int datum) {
  SlotDist out(static_cast<size_t>(mech.num_outputs()));
  for (int o = 0; o < mech.num_outputs(); ++o) out[o] = mech.Prob(datum, o);
  return out;
}

// Output law of a slot that randomizes a uniformly chosen member of `data`.
SlotDist MixDist(const DiscreteMechanism& mech, std::span<const int> data) {
  SlotDist out(static_cast<size_t>(mech.num_outputs()), 0.0L);
  for (int d : data) {
    for (int o = 0; o < mech.num_outputs(); ++o) out[o] += mech.Prob(d, o);
  }
  for (long double& p : out) p /= static_cast<long double>(data.size());
  return out;
}

// Averaging slot over `data`: symbol count * (n + 1) + (number of ones).
SlotDist AvgDist(const DiscreteMechanism& mech, std::span<const int> data,
                 int n) {
  const size_t width = static_cast<size_t>(n + 1);
  SlotDist ones(1, 1.0L);
  for (int d : data) {
    SlotDist next(ones.size() + 1, 0.0L);
    for (size_t k = 0; k < ones.size(); ++k) {
      next[k] += ones[k] * mech.Prob(d, 0);
      next[k + 1] += ones[k] * mech.Prob(d, 1);
    }
    ones = std::move(next);
  }
  SlotDist out(width * width, 0.0L);
  for (size_t k = 0; k < ones.size(); ++k) out[data.size() * width + k] = ones[k];
  return out;
}

void Accumulate(const Scenario& s, OutputLaw& law) {
  if (s.weight == 0) return;
  std::vector<int> outcome(s.slots.size());
  std::function<void(size_t, long double)> walk = [&](size_t i,
                                                      long double mass) {
    if (i == s.slots.size()) {
      law.atoms[outcome] += mass;
      return;
    }
    for (size_t o = 0; o < s.slots[i].size(); ++o) {
      if (s.slots[i][o] == 0) continue;
      outcome[i] = static_cast<int>(o);
      walk(i + 1, mass * s.slots[i][o]);
    }
  };
  walk(0, s.weight);
}

absl::Status CheckDataset(std::span<const int> dataset,
                          const DiscreteMechanism& mech) {
  for (int d : dataset) {
    if (d < 0 || d >= mech.num_inputs()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "datum %d outside the mechanism's domain [0, %d)", d,
          mech.num_inputs()));
    }
  }
  return absl::OkStatus();
}

// Overflow-safe a^b for the atom estimate.
double PowCount(double a, int b) { return std::pow(a, b); }

double Factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

absl::Status CheckCap(double atoms, const OracleParams& params) {
  if (atoms > static_cast<double>(params.atom_cap)) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "enumeration needs about %.0f atoms, above the cap of %d", atoms,
        params.atom_cap));
  }
  return absl::OkStatus();
}

// Calls visit(assignment, weight) for every assignment of `clients` clients
// to `choices` options, weight = prod option_weight[choice].
void ForEachAssignment(
    int clients, std::span<const long double> option_weight,
    const std::function<void(const std::vector<int>&, long double)>& visit) {
  std::vector<int> choice(static_cast<size_t>(clients), 0);
  const int k = static_cast<int>(option_weight.size());
  while (true) {
    long double w = 1;
    for (int c : choice) w *= option_weight[c];
    if (w > 0) visit(choice, w);
    int pos = 0;
    while (pos < clients && ++choice[pos] == k) choice[pos++] = 0;
    if (pos == clients) break;
  }
}

std::vector<int> Apply(std::span<const int> data,
                       const std::vector<int>& order) {
  std::vector<int> out(order.size());
  for (size_t i = 0; i < order.size(); ++i) out[i] = data[order[i]];
  return out;
}

std::vector<int> SwapWith(int n, int target) {
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::swap(order[0], order[static_cast<size_t>(target)]);
  return order;
}

OutputLaw LawOfScenarios(const std::vector<Scenario>& scenarios) {
  OutputLaw law;
  for (const Scenario& s : scenarios) Accumulate(s, law);
  return law;
}

absl::StatusOr<std::vector<Scenario>> FixedScenarios(
    std::span<const int> data, const DiscreteMechanism& mech,
    const OracleParams& params) {
  const int n = static_cast<int>(data.size());
  const int m = params.m;
  if (!(params.p0 >= 0 && params.p0 <= 1)) {
    return absl::InvalidArgumentError("p0 must lie in [0, 1]");
  }
  if (absl::Status s = CheckCap(PowCount(m + 1, n) * PowCount(
                                    mech.num_outputs(), m),
                                params);
      !s.ok()) {
    return s;
  }
  // Options 0..m-1 are slots, option m is abstaining.
  std::vector<long double> option(static_cast<size_t>(m + 1),
                                  static_cast<long double>(params.p0) / m);
  option[m] = 1.0L - static_cast<long double>(params.p0);
  std::vector<Scenario> out;
  ForEachAssignment(n, option, [&](const std::vector<int>& choice,
                                   long double w) {
    std::vector<std::vector<int>> sets(static_cast<size_t>(m));
    for (int j = 0; j < n; ++j) {
      if (choice[j] < m) sets[choice[j]].push_back(data[j]);
    }
    Scenario s{.weight = w};
    for (const auto& set : sets) {
      s.slots.push_back(set.empty() ? RowDist(mech, params.dummy_datum)
                                    : MixDist(mech, set));
    }
    out.push_back(std::move(s));
  });
  return out;
}

absl::StatusOr<std::vector<Scenario>> SlidingScenarios(
    std::span<const int> data, const DiscreteMechanism& mech,
    const OracleParams& params) {
  const int n = static_cast<int>(data.size());
  const int m = params.m;
  if (m > n) return absl::InvalidArgumentError("sliding windows need m <= n");
  const int served = n - m + 1;
  if (absl::Status s = CheckCap(
          PowCount(m, n) * PowCount(mech.num_outputs(), served), params);
      !s.ok()) {
    return s;
  }
  std::vector<long double> option(static_cast<size_t>(m), 1.0L / m);
  std::vector<Scenario> out;
  ForEachAssignment(n, option, [&](const std::vector<int>& offset,
                                   long double w) {
    std::vector<std::vector<int>> sets(static_cast<size_t>(served));
    for (int j = 0; j < n; ++j) {
      const int slot = j + offset[j];
      if (slot >= m - 1 && slot <= n - 1) {
        sets[slot - (m - 1)].push_back(data[j]);
      }
    }
    Scenario s{.weight = w};
    for (const auto& set : sets) {
      s.slots.push_back(set.empty() ? RowDist(mech, params.dummy_datum)
                                    : MixDist(mech, set));
    }
    out.push_back(std::move(s));
  });
  return out;
}

absl::StatusOr<std::vector<Scenario>> AvgScenarios(
    std::span<const int> data, const DiscreteMechanism& mech,
    const OracleParams& params) {
  const int n = static_cast<int>(data.size());
  const int m = params.m;
  if (absl::Status s =
          CheckCap(PowCount(m, n) * PowCount(n + 1, m), params);
      !s.ok()) {
    return s;
  }
  std::vector<long double> option(static_cast<size_t>(m), 1.0L / m);
  std::vector<Scenario> out;
  ForEachAssignment(n, option, [&](const std::vector<int>& choice,
                                   long double w) {
    std::vector<std::vector<int>> sets(static_cast<size_t>(m));
    for (int j = 0; j < n; ++j) sets[choice[j]].push_back(data[j]);
    Scenario s{.weight = w};
    for (const auto& set : sets) s.slots.push_back(AvgDist(mech, set, n));
    out.push_back(std::move(s));
  });
  return out;
}

absl::StatusOr<std::vector<Scenario>> ReplacementScenarios(
    std::span<const int> data, const DiscreteMechanism& mech,
    const OracleParams& params) {
  const int m = static_cast<int>(data.size());
  if (static_cast<int>(params.weights.size()) != m) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "replacement needs %d weights, got %d", m, params.weights.size()));
  }
  if (!(params.w_max >= 0 && params.w_max <= 1)) {
    return absl::InvalidArgumentError("w_max must lie in [0, 1]");
  }
  for (double w : params.weights) {
    if (!(w >= 0 && w <= params.w_max)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("weight %.17g outside [0, w_max]", w));
    }
  }
  if (params.replacement < 0 || params.replacement >= mech.num_inputs()) {
    return absl::InvalidArgumentError("replacement datum outside the domain");
  }
  if (absl::Status s =
          CheckCap(2.0 * m * PowCount(mech.num_outputs(), m), params);
      !s.ok()) {
    return s;
  }
  std::vector<int> g(data.begin(), data.end());
  g[0] = params.replacement;
  std::vector<Scenario> out;
  for (int slot = 0; slot < m; ++slot) {
    const long double w = params.weights[slot];
    for (int placed = 0; placed < 2; ++placed) {
      Scenario s{.weight = (placed ? w : 1.0L - w) / m};
      std::vector<int> seq = g;
      if (placed) seq[slot] = data[0];
      for (int d : seq) s.slots.push_back(RowDist(mech, d));
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Scenario> SequenceScenarios(std::span<const int> data,
                                        const DiscreteMechanism& mech,
                                        const std::vector<int>& order,
                                        long double weight) {
  Scenario s{.weight = weight};
  for (int d : Apply(data, order)) s.slots.push_back(RowDist(mech, d));
  return {std::move(s)};
}

absl::StatusOr<std::vector<Scenario>> SwapScenarios(
    std::span<const int> data, const DiscreteMechanism& mech,
    const OracleParams& params) {
  const int n = static_cast<int>(data.size());
  if (absl::Status s =
          CheckCap(n * PowCount(mech.num_outputs(), n), params);
      !s.ok()) {
    return s;
  }
  std::vector<Scenario> out;
  for (int target = 0; target < n; ++target) {
    for (Scenario& s : SequenceScenarios(data, mech, SwapWith(n, target),
                                         1.0L / n)) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

absl::StatusOr<std::vector<Scenario>> ShuffleScenarios(
    std::span<const int> data, const DiscreteMechanism& mech,
    const OracleParams& params) {
  const int n = static_cast<int>(data.size());
  if (absl::Status s =
          CheckCap(Factorial(n) * PowCount(mech.num_outputs(), n), params);
      !s.ok()) {
    return s;
  }
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const long double w = 1.0L / static_cast<long double>(Factorial(n));
  std::vector<Scenario> out;
  do {
    for (Scenario& s : SequenceScenarios(data, mech, order, w)) {
      out.push_back(std::move(s));
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

absl::StatusOr<std::vector<Scenario>> BinScenarios(
    std::span<const int> data, const DiscreteMechanism& mech,
    const OracleParams& params) {
  const int n = static_cast<int>(data.size());
  int64_t total = 0;
  for (int64_t l : params.bins) {
    if (l < 0) return absl::InvalidArgumentError("bin sizes must be >= 0");
    total += l;
  }
  if (total != n) {
    return absl::InvalidArgumentError(
        absl::StrFormat("bin sizes sum to %d, expected n = %d", total, n));
  }
  if (absl::Status s = CheckCap(
          n * PowCount(n + 1, static_cast<int>(params.bins.size())), params);
      !s.ok()) {
    return s;
  }
  std::vector<Scenario> out;
  for (int target = 0; target < n; ++target) {
    const std::vector<int> seq = Apply(data, SwapWith(n, target));
    Scenario s{.weight = 1.0L / n};
    size_t next = 0;
    for (int64_t l : params.bins) {
      s.slots.push_back(AvgDist(
          mech, std::span<const int>(seq).subspan(next, static_cast<size_t>(l)),
          n));
      next += static_cast<size_t>(l);
    }
    out.push_back(std::move(s));
  }
  return out;
}

absl::StatusOr<std::vector<Scenario>> Scenarios(ProtocolId protocol,
                                                std::span<const int> dataset,
                                                const DiscreteMechanism& mech,
                                                const OracleParams& params) {
  if (dataset.empty()) return absl::InvalidArgumentError("empty dataset");
  if (absl::Status s = CheckDataset(dataset, mech); !s.ok()) return s;
  if (params.dummy_datum < 0 || params.dummy_datum >= mech.num_inputs()) {
    return absl::InvalidArgumentError("dummy datum outside the domain");
  }
  const bool averaging =
      protocol == ProtocolId::kAvg || protocol == ProtocolId::kBins;
  if (averaging && mech.num_outputs() != 2) {
    return absl::InvalidArgumentError(
        "averaging protocols are enumerated for two-output mechanisms only");
  }
  const bool slotted = protocol == ProtocolId::kFixed ||
                       protocol == ProtocolId::kSliding ||
                       protocol == ProtocolId::kAvg;
  if (slotted && params.m < 1) {
    return absl::InvalidArgumentError("m must be >= 1");
  }
  switch (protocol) {
    case ProtocolId::kFixed:
      return FixedScenarios(dataset, mech, params);
    case ProtocolId::kSliding:
      return SlidingScenarios(dataset, mech, params);
    case ProtocolId::kAvg:
      return AvgScenarios(dataset, mech, params);
    case ProtocolId::kReplacement:
      return ReplacementScenarios(dataset, mech, params);
    case ProtocolId::kSwap:
      return SwapScenarios(dataset, mech, params);
    case ProtocolId::kShuffle:
      return ShuffleScenarios(dataset, mech, params);
    case ProtocolId::kBins:
      return BinScenarios(dataset, mech, params);
  }
  return absl::InternalError("unknown protocol");
}

// Probability that a sequence of slots, each randomizing the given datum,
// releases `prefix`.
long double PrefixProb(const DiscreteMechanism& mech,
                       std::span<const int> data,
                       std::span<const int> prefix) {
  long double p = 1;
  for (size_t t = 0; t < prefix.size(); ++t) {
    p *= mech.Prob(data[t], prefix[t]);
  }
  return p;
}

// Calls visit(prefix) for every output sequence of length `len`.
void ForEachPrefix(int len, int alphabet,
                   const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<long double> uniform(static_cast<size_t>(alphabet), 1.0L);
  ForEachAssignment(len, uniform,
                    [&](const std::vector<int>& p, long double) { visit(p); });
}

}  // namespace

std::string ProtocolName(ProtocolId id) {
  switch (id) {
    case ProtocolId::kFixed:
      return "fixed";
    case ProtocolId::kSliding:
      return "sliding";
    case ProtocolId::kAvg:
      return "avg";
    case ProtocolId::kReplacement:
      return "replacement";
    case ProtocolId::kSwap:
      return "swap";
    case ProtocolId::kShuffle:
      return "shuffle";
    case ProtocolId::kBins:
      return "bins";
  }
  return "unknown";
}

absl::StatusOr<ProtocolId> ParseProtocolId(const std::string& name) {
  for (ProtocolId id :
       {ProtocolId::kFixed, ProtocolId::kSliding, ProtocolId::kAvg,
        ProtocolId::kReplacement, ProtocolId::kSwap, ProtocolId::kShuffle,
        ProtocolId::kBins}) {
    if (ProtocolName(id) == name) return id;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown protocol '%s'", name));
}

long double OutputLaw::TotalMass() const {
  long double total = 0;
  for (const auto& [outcome, p] : atoms) total += p;
  return total;
}

long double OutputLaw::Prob(const std::vector<int>& outcome) const {
  auto it = atoms.find(outcome);
  return it == atoms.end() ? 0.0L : it->second;
}

absl::StatusOr<OutputLaw> EnumerateLaw(ProtocolId protocol,
                                       std::span<const int> dataset,
                                       const DiscreteMechanism& mech,
                                       const OracleParams& params) {
  absl::StatusOr<std::vector<Scenario>> scenarios =
      Scenarios(protocol, dataset, mech, params);
  if (!scenarios.ok()) return scenarios.status();
  return LawOfScenarios(*scenarios);
}

long double HockeyStick(const OutputLaw& p, const OutputLaw& q,
                        double epsilon) {
  const long double scale = std::exp(static_cast<long double>(epsilon));
  long double total = 0;
  for (const auto& [outcome, mass] : p.atoms) {
    total += std::max(mass - scale * q.Prob(outcome), 0.0L);
  }
  return total;
}

long double MaxAtomDifference(const OutputLaw& p, const OutputLaw& q) {
  long double worst = 0;
  for (const auto& [outcome, mass] : p.atoms) {
    worst = std::max(worst, std::abs(mass - q.Prob(outcome)));
  }
  for (const auto& [outcome, mass] : q.atoms) {
    worst = std::max(worst, std::abs(mass - p.Prob(outcome)));
  }
  return worst;
}

absl::StatusOr<BoundReport> VerifyBound(ProtocolId protocol, int size,
                                        const DiscreteMechanism& mech,
                                        const OracleParams& params,
                                        const PrivacyPair& bound,
                                        NeighborScope scope) {
  if (size < 1) return absl::InvalidArgumentError("size must be >= 1");
  const int domain = mech.num_inputs();
  const double count = PowCount(domain, size);
  if (count > 1e6) {
    return absl::ResourceExhaustedError("too many datasets to enumerate");
  }
  // Laws of every dataset, indexed by the base-`domain` code of the dataset.
  std::vector<std::vector<int>> datasets;
  std::vector<OutputLaw> laws;
  std::vector<long double> uniform(static_cast<size_t>(domain), 1.0L);
  absl::Status failure;
  ForEachAssignment(size, uniform, [&](const std::vector<int>& d,
                                       long double) {
    if (!failure.ok()) return;
    absl::StatusOr<OutputLaw> law = EnumerateLaw(protocol, d, mech, params);
    if (!law.ok()) {
      failure = law.status();
      return;
    }
    datasets.push_back(d);
    laws.push_back(*std::move(law));
  });
  if (!failure.ok()) return failure;

  auto code = [&](const std::vector<int>& d) {
    size_t c = 0;
    for (int k = size - 1; k >= 0; --k) c = c * domain + d[k];
    return c;
  };
  BoundReport report{.protocol = protocol,
                     .epsilon = bound.epsilon,
                     .delta_bound = bound.delta};
  report.delta_emp = -1;
  const int positions = scope == NeighborScope::kFirstIndex ? 1 : size;
  for (size_t a = 0; a < datasets.size(); ++a) {
    for (int pos = 0; pos < positions; ++pos) {
      for (int v = 0; v < domain; ++v) {
        if (v == datasets[a][pos]) continue;
        std::vector<int> neighbor = datasets[a];
        neighbor[pos] = v;
        const size_t b = code(neighbor);
        for (int dir = 0; dir < 2; ++dir) {
          const OutputLaw& p = dir == 0 ? laws[a] : laws[b];
          const OutputLaw& q = dir == 0 ? laws[b] : laws[a];
          const long double hs = HockeyStick(p, q, bound.epsilon);
          ++report.pairs_checked;
          if (hs > report.delta_emp) {
            report.delta_emp = hs;
            report.worst_dataset = dir == 0 ? datasets[a] : neighbor;
            report.worst_neighbor = dir == 0 ? neighbor : datasets[a];
          }
        }
      }
    }
  }
  report.delta_emp = std::max(report.delta_emp, 0.0L);
  report.passed =
      report.delta_emp <= static_cast<long double>(bound.delta) + kSlack;
  return report;
}

std::string BoundReportJson(const BoundReport& report) {
  nlohmann::ordered_json j;
  j["protocol"] = ProtocolName(report.protocol);
  j["epsilon"] = report.epsilon;
  j["delta_bound"] = report.delta_bound;
  j["delta_emp"] = static_cast<double>(report.delta_emp);
  j["margin"] = report.margin();
  j["worst_dataset"] = report.worst_dataset;
  j["worst_neighbor"] = report.worst_neighbor;
  j["pairs_checked"] = report.pairs_checked;
  j["passed"] = report.passed;
  return j.dump();
}

absl::StatusOr<std::vector<PosteriorRecord>> ExactPosterior(
    ProtocolId protocol, std::span<const int> dataset,
    const DiscreteMechanism& mech, const OracleParams& params) {
  if (protocol != ProtocolId::kReplacement && protocol != ProtocolId::kSwap) {
    return absl::InvalidArgumentError(
        "posteriors are defined for replacement and swap only");
  }
  // Validates weights, domain and the size cap.
  absl::StatusOr<std::vector<Scenario>> check =
      Scenarios(protocol, dataset, mech, params);
  if (!check.ok()) return check.status();

  const int size = static_cast<int>(dataset.size());
  // For each planted index j: the data each slot randomizes, with the
  // probability of that branch given I = j.
  struct Branch {
    int index;
    long double prob;
    std::vector<int> seq;
  };
  std::vector<Branch> branches;
  for (int j = 0; j < size; ++j) {
    if (protocol == ProtocolId::kSwap) {
      branches.push_back({j, 1.0L, Apply(dataset, SwapWith(size, j))});
    } else {
      std::vector<int> g(dataset.begin(), dataset.end());
      g[0] = params.replacement;
      const long double w = params.weights[j];
      std::vector<int> placed = g;
      placed[j] = dataset[0];
      branches.push_back({j, w, placed});
      branches.push_back({j, 1.0L - w, g});
    }
  }

  std::vector<PosteriorRecord> out;
  for (int i = 1; i <= size; ++i) {
    ForEachPrefix(i - 1, mech.num_outputs(), [&](const std::vector<int>& z) {
      long double total = 0;
      long double planted = 0;
      for (const Branch& br : branches) {
        const long double p =
            br.prob * PrefixProb(mech, br.seq, z) / size;
        total += p;
        if (br.index == i - 1) planted += p;
      }
      if (total <= 0) return;
      out.push_back({.i = i, .prefix = z, .q = planted / total});
    });
  }
  return out;
}

absl::StatusOr<RatioReport> VerifyRatioLemma(const DiscreteMechanism& mech,
                                             std::span<const int> dataset,
                                             int k, double q) {
  if (absl::Status s = CheckDataset(dataset, mech); !s.ok()) return s;
  const int size = static_cast<int>(dataset.size());
  if (k < 0 || k >= size) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k = %d outside [0, %d)", k, size));
  }
  if (!(q >= 0 && q <= 1)) {
    return absl::InvalidArgumentError("q must lie in [0, 1]");
  }
  if (size == 1 && q < 1) {
    return absl::InvalidArgumentError(
        "q < 1 needs an alternative record besides d_k");
  }
  const double eps0 = mech.MeasuredEpsilon();
  if (!std::isfinite(eps0)) {
    return absl::InvalidArgumentError("mechanism is not pure-DP");
  }
  absl::StatusOr<double> bound = BiasedSamplingRatio(eps0, q);
  if (!bound.ok()) return bound.status();

  const int outputs = mech.num_outputs();
  // Candidate alternatives: uniform over D \ {d_k} (index -1) and each point
  // mass. The ratio is monotone in the alternative's mass on each output, so
  // point masses are the extreme cases.
  std::vector<std::pair<int, SlotDist>> alternatives;
  std::vector<int> others;
  for (int j = 0; j < size; ++j) {
    if (j != k) others.push_back(dataset[j]);
  }
  if (!others.empty()) {
    alternatives.push_back({-1, MixDist(mech, others)});
    for (int j = 0; j < size; ++j) {
      if (j != k) alternatives.push_back({j, RowDist(mech, dataset[j])});
    }
  } else {
    alternatives.push_back({-1, RowDist(mech, dataset[k])});
  }

  RatioReport report{.bound = *bound};
  const SlotDist target = RowDist(mech, dataset[k]);
  for (const auto& [index, alt] : alternatives) {
    for (int o = 0; o < outputs; ++o) {
      for (bool complement : {false, true}) {
        long double num = 0;
        long double other = 0;
        for (int x = 0; x < outputs; ++x) {
          if ((x == o) != complement) {
            num += target[x];
            other += alt[x];
          }
        }
        const long double den = q * num + (1 - q) * other;
        if (num == 0) continue;
        const double ratio = static_cast<double>(num / den);
        if (ratio > report.max_ratio) {
          report.max_ratio = ratio;
          report.worst_output = complement ? -(o + 1) : o;
          report.worst_alternative = index;
        }
      }
    }
  }
  report.passed = report.max_ratio <= report.bound + 1e-9;
  return report;
}

absl::StatusOr<OutputLaw> FixedViaReplacementLaw(std::span<const int> dataset,
                                                 int i_star,
                                                 const DiscreteMechanism& mech,
                                                 const OracleParams& params) {
  const int n = static_cast<int>(dataset.size());
  const int m = params.m;
  if (i_star < 0 || i_star >= n) {
    return absl::InvalidArgumentError("i_star outside the dataset");
  }
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  if (absl::Status s = CheckDataset(dataset, mech); !s.ok()) return s;
  if (absl::Status s = CheckCap(PowCount(m + 1, n) * PowCount(
                                    mech.num_outputs(), m),
                                params);
      !s.ok()) {
    return s;
  }
  std::vector<int> others;
  for (int j = 0; j < n; ++j) {
    if (j != i_star) others.push_back(dataset[j]);
  }
  std::vector<long double> option(static_cast<size_t>(m + 1),
                                  static_cast<long double>(params.p0) / m);
  option[m] = 1.0L - static_cast<long double>(params.p0);
  const long double p0 = params.p0;
  OutputLaw law;
  ForEachAssignment(n - 1, option, [&](const std::vector<int>& choice,
                                       long double w) {
    std::vector<std::vector<int>> sets(static_cast<size_t>(m));
    for (size_t j = 0; j < others.size(); ++j) {
      if (choice[j] < m) sets[choice[j]].push_back(others[j]);
    }
    // F[i] is a reservoir sample of S_i; W[i] = 1 / (|S_i| + 1).
    std::vector<SlotDist> f;
    for (const auto& set : sets) {
      f.push_back(set.empty() ? RowDist(mech, params.dummy_datum)
                              : MixDist(mech, set));
    }
    for (int slot = 0; slot < m; ++slot) {
      const long double weight =
          p0 / static_cast<long double>(sets[slot].size() + 1);
      Scenario placed{.weight = w * weight / m, .slots = f};
      placed.slots[slot] = RowDist(mech, dataset[i_star]);
      Accumulate(placed, law);
      Accumulate(Scenario{.weight = w * (1 - weight) / m, .slots = f}, law);
    }
  });
  return law;
}

absl::StatusOr<OutputLaw> ShuffleViaSwapLaw(std::span<const int> dataset,
                                            int i_star,
                                            const DiscreteMechanism& mech,
                                            const OracleParams& params) {
  const int n = static_cast<int>(dataset.size());
  if (i_star < 0 || i_star >= n) {
    return absl::InvalidArgumentError("i_star outside the dataset");
  }
  if (absl::Status s = CheckDataset(dataset, mech); !s.ok()) return s;
  std::vector<int> rest;
  for (int j = 0; j < n; ++j) {
    if (j != i_star) rest.push_back(j);
  }
  if (absl::Status s = CheckCap(Factorial(n) * PowCount(mech.num_outputs(), n),
                                params);
      !s.ok()) {
    return s;
  }
  const long double w = 1.0L / static_cast<long double>(Factorial(n - 1));
  OutputLaw law;
  do {
    std::vector<int> arranged{dataset[i_star]};
    for (int j : rest) arranged.push_back(dataset[j]);
    absl::StatusOr<std::vector<Scenario>> swap =
        SwapScenarios(arranged, mech, params);
    if (!swap.ok()) return swap.status();
    for (Scenario& s : *swap) {
      s.weight *= w;
      Accumulate(s, law);
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return law;
}

}  // namespace rcdp
