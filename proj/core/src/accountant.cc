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

#include "rcdp/accountant.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace rcdp {
namespace {

// Multiplier applied to epsilon0 on the approximate-DP branch.
constexpr double kApproxEpsilonFactor = 8.0;

absl::Status CheckOpenUnit(const char* name, double value) {
  if (!(value > 0 && value < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must lie in (0, 1), got %.17g", name, value));
  }
  return absl::OkStatus();
}

absl::Status CheckPositiveCount(const char* name, int64_t value) {
  if (value < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must be a positive integer, got %d", name, value));
  }
  return absl::OkStatus();
}

absl::Status CheckLocalSpec(const LocalSpec& spec) {
  if (!std::isfinite(spec.epsilon0) || spec.epsilon0 < 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon0 must be finite and nonnegative, got %.17g", spec.epsilon0));
  }
  if (!(spec.delta0 >= 0 && spec.delta0 < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta0 must lie in [0, 1), got %.17g", spec.delta0));
  }
  return absl::OkStatus();
}

// The local epsilon a bound is evaluated at, and how delta is inflated.
struct Branch {
  double epsilon0 = 0;
  bool approximate = false;
  double delta1 = 0;
};

absl::StatusOr<Branch> ResolveBranch(const LocalSpec& spec,
                                     std::optional<double> delta1) {
  if (absl::Status s = CheckLocalSpec(spec); !s.ok()) return s;
  if (spec.delta0 == 0) {
    if (delta1.has_value()) {
      return absl::InvalidArgumentError(
          "delta1 is only accepted together with delta0 > 0");
    }
    return Branch{.epsilon0 = spec.epsilon0};
  }
  if (!delta1.has_value()) {
    return absl::InvalidArgumentError("delta0 > 0 requires delta1");
  }
  absl::StatusOr<double> threshold = CheuDeltaThreshold(spec.epsilon0, *delta1);
  if (!threshold.ok()) return threshold.status();
  if (spec.delta0 > *threshold) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "delta0 = %.17g exceeds the admissible threshold %.17g for "
        "epsilon0 = %.17g, delta1 = %.17g",
        spec.delta0, *threshold, spec.epsilon0, *delta1));
  }
  return Branch{.epsilon0 = kApproxEpsilonFactor * spec.epsilon0,
                .approximate = true,
                .delta1 = *delta1};
}

// `invocations` is the number of local randomizer calls charged delta1 each.
PrivacyPair Finish(const Branch& branch, double epsilon, double delta,
                   double invocations) {
  PrivacyPair out{.epsilon = epsilon, .delta = delta};
  if (branch.approximate) {
    out.delta = delta + invocations * (std::exp(epsilon) + 1) * branch.delta1;
  }
  out.vacuous = epsilon >= branch.epsilon0;
  if (!(out.delta <= 1)) {
    out.delta = 1;
    out.vacuous = true;
  }
  return out;
}

double LogInverse(double delta) { return -std::log(delta); }

// w^2 e^x (e^x - 1)^2 / (2 m) + w (e^x - 1) sqrt(2 e^x log(1/delta) / m).
double ReplacementEpsilon(double eps0, double m, double w_max, double delta) {
  const double growth = std::exp(eps0);
  const double gap = std::expm1(eps0);
  return w_max * w_max * growth * gap * gap / (2 * m) +
         w_max * gap * std::sqrt(2 * growth * LogInverse(delta) / m);
}

// e^{3x} (e^x - 1)^2 / (2 n) + e^{3x/2} (e^x - 1) sqrt(2 log(1/delta) / n).
double SwapEpsilon(double eps0, double n, double delta) {
  const double gap = std::expm1(eps0);
  return std::exp(3 * eps0) * gap * gap / (2 * n) +
         std::exp(1.5 * eps0) * gap * std::sqrt(2 * LogInverse(delta) / n);
}

}  // namespace

absl::StatusOr<double> CheuDeltaThreshold(double epsilon0, double delta1) {
  if (!std::isfinite(epsilon0) || epsilon0 < 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon0 must be finite and nonnegative, got %.17g", epsilon0));
  }
  if (absl::Status s = CheckOpenUnit("delta1", delta1); !s.ok()) return s;
  if (epsilon0 == 0) return 0.0;
  const double keep = -std::expm1(-epsilon0);                 // 1 - e^-eps0
  const double rounds_denominator = -std::log1p(-std::exp(-5 * epsilon0));
  const double rounds = std::log(2 / delta1) / rounds_denominator;
  return keep * delta1 / (4 * std::exp(epsilon0) * (2 + rounds));
}

absl::StatusOr<PrivacyPair> ReplacementBound(const LocalSpec& spec, int64_t m,
                                             double w_max, double delta,
                                             std::optional<double> delta1) {
  if (absl::Status s = CheckPositiveCount("m", m); !s.ok()) return s;
  if (!(w_max >= 0 && w_max <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("w_max must lie in [0, 1], got %.17g", w_max));
  }
  if (absl::Status s = CheckOpenUnit("delta", delta); !s.ok()) return s;
  absl::StatusOr<Branch> branch = ResolveBranch(spec, delta1);
  if (!branch.ok()) return branch.status();
  const double eps =
      ReplacementEpsilon(branch->epsilon0, static_cast<double>(m), w_max, delta);
  return Finish(*branch, eps, delta, static_cast<double>(m));
}

absl::StatusOr<PrivacyPair> FixedWindowBound(const LocalSpec& spec,
                                             const FixedWindowParams& params) {
  if (absl::Status s = CheckPositiveCount("n", params.n); !s.ok()) return s;
  if (absl::Status s = CheckPositiveCount("m", params.m); !s.ok()) return s;
  if (!(params.p0 >= 0 && params.p0 <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("p0 must lie in [0, 1], got %.17g", params.p0));
  }
  // The check-in of one client is a random replacement with weight at most p0.
  return ReplacementBound(spec, params.m, params.p0, params.delta,
                          params.delta1);
}

absl::StatusOr<PrivacyPair> FixedWindowSimplified(
    const LocalSpec& spec, const FixedWindowParams& params) {
  if (absl::Status s = CheckLocalSpec(spec); !s.ok()) return s;
  if (spec.delta0 != 0) {
    return absl::InvalidArgumentError(
        "the simplified fixed-window bound requires delta0 = 0");
  }
  if (spec.epsilon0 > 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "the simplified fixed-window bound requires epsilon0 <= 1, got %.17g",
        spec.epsilon0));
  }
  if (absl::Status s = CheckOpenUnit("delta", params.delta); !s.ok()) return s;
  if (params.delta > 0.01) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "the simplified fixed-window bound requires delta <= 0.01, got %.17g",
        params.delta));
  }
  if (absl::Status s = CheckPositiveCount("n", params.n); !s.ok()) return s;
  if (absl::Status s = CheckPositiveCount("m", params.m); !s.ok()) return s;
  if (!(params.p0 >= 0 && params.p0 <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("p0 must lie in [0, 1], got %.17g", params.p0));
  }
  const double eps = 7 * params.p0 * spec.epsilon0 *
                     std::sqrt(LogInverse(params.delta) /
                               static_cast<double>(params.m));
  return PrivacyPair{.epsilon = eps,
                     .delta = params.delta,
                     .vacuous = eps >= spec.epsilon0};
}

absl::StatusOr<PrivacyPair> AvgBound(const LocalSpec& spec,
                                     const AvgParams& params) {
  if (absl::Status s = CheckPositiveCount("n", params.n); !s.ok()) return s;
  if (absl::Status s = CheckPositiveCount("m", params.m); !s.ok()) return s;
  if (absl::Status s = CheckOpenUnit("delta", params.delta); !s.ok()) return s;
  if (absl::Status s = CheckOpenUnit("delta2", params.delta2); !s.ok()) {
    return s;
  }
  absl::StatusOr<Branch> branch = ResolveBranch(spec, params.delta1);
  if (!branch.ok()) return branch.status();

  const double n = static_cast<double>(params.n);
  const double m = static_cast<double>(params.m);
  const double load = std::sqrt(1 / n + 1 / m) +
                      std::sqrt(LogInverse(params.delta2) / n);
  const double x = branch->epsilon0;
  const double gap = std::expm1(x);
  const double eps =
      std::exp(4 * x) * gap * gap * load * load / 2 +
      std::exp(2 * x) * gap * load * std::sqrt(2 * LogInverse(params.delta));
  return Finish(*branch, eps, params.delta + params.delta2, m);
}

absl::StatusOr<PrivacyPair> SlidingWindowBound(const LocalSpec& spec,
                                               int64_t n, int64_t m,
                                               double delta,
                                               std::optional<double> delta1) {
  if (absl::Status s = CheckPositiveCount("n", n); !s.ok()) return s;
  if (absl::Status s = CheckPositiveCount("m", m); !s.ok()) return s;
  if (m > n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sliding window length m = %d exceeds the horizon n = %d", m, n));
  }
  // Every client is placed into its window with probability one.
  return ReplacementBound(spec, m, 1.0, delta, delta1);
}

absl::StatusOr<PrivacyPair> SwapBound(const LocalSpec& spec, int64_t n,
                                      double delta,
                                      std::optional<double> delta1) {
  if (absl::Status s = CheckPositiveCount("n", n); !s.ok()) return s;
  if (absl::Status s = CheckOpenUnit("delta", delta); !s.ok()) return s;
  absl::StatusOr<Branch> branch = ResolveBranch(spec, delta1);
  if (!branch.ok()) return branch.status();
  const double eps = SwapEpsilon(branch->epsilon0, static_cast<double>(n), delta);
  return Finish(*branch, eps, delta, static_cast<double>(n));
}

absl::StatusOr<PrivacyPair> ShuffleBoundNew(const LocalSpec& spec, int64_t n,
                                            double delta,
                                            std::optional<double> delta1) {
  // Shuffling reduces to a mixture of swaps.
  return SwapBound(spec, n, delta, delta1);
}

absl::StatusOr<PrivacyPair> ShuffleBoundOld(const LocalSpec& spec, int64_t n,
                                            double delta) {
  if (absl::Status s = CheckLocalSpec(spec); !s.ok()) return s;
  if (spec.delta0 != 0) {
    return absl::InvalidArgumentError(
        "the earlier shuffling bound is only stated for delta0 = 0");
  }
  if (absl::Status s = CheckPositiveCount("n", n); !s.ok()) return s;
  if (absl::Status s = CheckOpenUnit("delta", delta); !s.ok()) return s;
  const double x = spec.epsilon0;
  const double nn = static_cast<double>(n);
  const double scale = 2 * std::exp(2 * x) * std::expm1(x);
  const double eps = scale * std::expm1(scale / nn) +
                     scale * std::sqrt(2 * LogInverse(delta) / nn);
  return PrivacyPair{.epsilon = eps, .delta = delta, .vacuous = eps >= x};
}

absl::StatusOr<PrivacyPair> BinSgdBound(const LocalSpec& spec,
                                        const BinSizes& bins, double delta,
                                        std::optional<double> delta1) {
  if (absl::Status s = CheckPositiveCount("n", bins.n); !s.ok()) return s;
  if (bins.ell.empty()) {
    return absl::InvalidArgumentError("bin sizes must be nonempty");
  }
  int64_t total = 0;
  double squares = 0;
  for (int64_t size : bins.ell) {
    if (size < 0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("bin sizes must be nonnegative, got %d", size));
    }
    total += size;
    squares += static_cast<double>(size) * static_cast<double>(size);
  }
  if (total != bins.n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "bin sizes sum to %d but n = %d", total, bins.n));
  }
  if (absl::Status s = CheckOpenUnit("delta", delta); !s.ok()) return s;
  absl::StatusOr<Branch> branch = ResolveBranch(spec, delta1);
  if (!branch.ok()) return branch.status();

  const double n = static_cast<double>(bins.n);
  const double norm = std::sqrt(squares);
  const double x = branch->epsilon0;
  const double gap = std::expm1(x);
  const double eps =
      squares * std::exp(4 * x) * gap * gap / (2 * n * n) +
      norm * std::exp(2 * x) * gap * std::sqrt(2 * LogInverse(delta)) / n;
  return Finish(*branch, eps, delta, static_cast<double>(bins.ell.size()));
}

absl::StatusOr<PrivacyPair> HetComposition(double a, double b, int64_t k,
                                           double delta) {
  if (!(a > 0) || !std::isfinite(a)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("a must be positive and finite, got %.17g", a));
  }
  if (absl::Status s = CheckOpenUnit("b", b); !s.ok()) return s;
  if (absl::Status s = CheckPositiveCount("k", k); !s.ok()) return s;
  if (absl::Status s = CheckOpenUnit("delta", delta); !s.ok()) return s;
  const double scaled = static_cast<double>(k) * (1 - b);
  const double eps = a * a / (2 * scaled) +
                     std::sqrt(2 * a * a * LogInverse(delta) / scaled);
  return PrivacyPair{.epsilon = eps, .delta = delta};
}

absl::StatusOr<PrivacyPair> KovComposition(const CompositionSchedule& schedule,
                                           double delta) {
  if (schedule.eps_list.empty()) {
    return absl::InvalidArgumentError("composition schedule is empty");
  }
  if (absl::Status s = CheckOpenUnit("delta", delta); !s.ok()) return s;
  double drift = 0;
  double squares = 0;
  for (double eps : schedule.eps_list) {
    if (!(eps >= 0) || !std::isfinite(eps)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "schedule entries must be finite and nonnegative, got %.17g", eps));
    }
    // (e^x - 1) / (e^x + 1) == tanh(x / 2)
    drift += std::tanh(eps / 2) * eps;
    squares += eps * eps;
  }
  return PrivacyPair{
      .epsilon = drift + std::sqrt(2 * LogInverse(delta) * squares),
      .delta = delta};
}

absl::StatusOr<PrivacyPair> AdvancedComposition(const PrivacyPair& per_step,
                                                int64_t k,
                                                double delta_slack) {
  if (!(per_step.epsilon >= 0) || !std::isfinite(per_step.epsilon)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "per-step epsilon must be finite and nonnegative, got %.17g",
        per_step.epsilon));
  }
  if (!(per_step.delta >= 0 && per_step.delta <= 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "per-step delta must lie in [0, 1], got %.17g", per_step.delta));
  }
  if (absl::Status s = CheckPositiveCount("k", k); !s.ok()) return s;
  if (absl::Status s = CheckOpenUnit("delta_slack", delta_slack); !s.ok()) {
    return s;
  }
  const double eps1 = per_step.epsilon;
  const double kk = static_cast<double>(k);
  const double eps = eps1 * std::sqrt(2 * kk * LogInverse(delta_slack)) +
                     kk * eps1 * std::expm1(eps1);
  return PrivacyPair{.epsilon = eps,
                     .delta = std::min(1.0, kk * per_step.delta + delta_slack)};
}

absl::StatusOr<PrivacyPair> EpochComposition(const LocalSpec& spec, int64_t n,
                                             int64_t m, double beta_fail,
                                             double delta_slack) {
  if (absl::Status s = CheckLocalSpec(spec); !s.ok()) return s;
  if (spec.delta0 != 0) {
    return absl::InvalidArgumentError(
        "epoch composition requires a pure local randomizer (delta0 = 0)");
  }
  if (absl::Status s = CheckPositiveCount("n", n); !s.ok()) return s;
  if (absl::Status s = CheckPositiveCount("m", m); !s.ok()) return s;
  if (m > n) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epoch composition requires m <= n, got m = %d, n = %d",
                        m, n));
  }
  if (absl::Status s = CheckOpenUnit("beta_fail", beta_fail); !s.ok()) return s;
  if (absl::Status s = CheckOpenUnit("delta_slack", delta_slack); !s.ok()) {
    return s;
  }
  const double nn = static_cast<double>(n);
  const double root_m = std::sqrt(static_cast<double>(m));
  const double eps0_limit = 2.0 / 3.0 * std::log(nn / (8 * root_m));
  if (spec.epsilon0 > eps0_limit) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "condition epsilon0 <= (2/3) log(n / (8 sqrt(m))) = %.17g violated "
        "(epsilon0 = %.17g)",
        eps0_limit, spec.epsilon0));
  }
  const double gap = std::expm1(spec.epsilon0);
  const double min_n =
      gap * gap * std::exp(spec.epsilon0) * root_m * LogInverse(beta_fail);
  if (nn < min_n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "condition n >= (e^eps0 - 1)^2 e^eps0 sqrt(m) log(1/beta) = %.17g "
        "violated (n = %d)",
        min_n, n));
  }
  const int64_t repetitions = n / m;
  FixedWindowParams run{.n = n,
                        .m = m,
                        .p0 = static_cast<double>(m) / nn,
                        .delta = beta_fail};
  absl::StatusOr<PrivacyPair> per_run = FixedWindowBound(spec, run);
  if (!per_run.ok()) return per_run.status();
  absl::StatusOr<PrivacyPair> total =
      AdvancedComposition(*per_run, repetitions, delta_slack);
  if (!total.ok()) return total.status();
  total->vacuous = total->epsilon >= spec.epsilon0;
  return total;
}

absl::StatusOr<double> BiasedSamplingRatio(double epsilon0, double q) {
  if (!std::isfinite(epsilon0) || epsilon0 < 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon0 must be finite and nonnegative, got %.17g", epsilon0));
  }
  if (!(q >= 0 && q <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("q must lie in [0, 1], got %.17g", q));
  }
  // e^x / (1 + q (e^x - 1)) written so that q = 1 gives exactly 1.
  return 1 / (std::exp(-epsilon0) * (1 - q) + q);
}

absl::StatusOr<double> PosteriorBoundFixed(double epsilon0, int64_t m,
                                           int64_t i) {
  if (absl::Status s = CheckPositiveCount("m", m); !s.ok()) return s;
  if (i < 1 || i > m) {
    return absl::InvalidArgumentError(
        absl::StrFormat("slot index i = %d outside [1, %d]", i, m));
  }
  const double growth = std::exp(epsilon0);
  return growth / (static_cast<double>(i - 1) +
                   growth * static_cast<double>(m - i + 1));
}

absl::StatusOr<double> PosteriorBoundSwap(double epsilon0, int64_t n,
                                          int64_t i) {
  if (absl::Status s = CheckPositiveCount("n", n); !s.ok()) return s;
  if (i < 1 || i > n) {
    return absl::InvalidArgumentError(
        absl::StrFormat("position i = %d outside [1, %d]", i, n));
  }
  const double growth = std::exp(epsilon0);
  const double growth2 = std::exp(2 * epsilon0);
  return growth2 / (growth2 + static_cast<double>(i - 1) +
                    static_cast<double>(n - i) * growth);
}

absl::StatusOr<double> ExpectedDummyFixed(int64_t n, int64_t m, double p0) {
  if (n < 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("n must be nonnegative, got %d", n));
  }
  if (absl::Status s = CheckPositiveCount("m", m); !s.ok()) return s;
  if (!(p0 >= 0 && p0 <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("p0 must lie in [0, 1], got %.17g", p0));
  }
  const double mm = static_cast<double>(m);
  return mm * std::exp(static_cast<double>(n) * std::log1p(-p0 / mm));
}

absl::StatusOr<double> ExpectedDummySliding(int64_t n, int64_t m) {
  if (absl::Status s = CheckPositiveCount("m", m); !s.ok()) return s;
  if (m > n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sliding window length m = %d exceeds the horizon n = %d", m, n));
  }
  const double mm = static_cast<double>(m);
  return static_cast<double>(n - m + 1) * std::exp(mm * std::log1p(-1 / mm));
}

absl::StatusOr<double> BinLoadL2Bound(int64_t n, int64_t m, double delta) {
  if (absl::Status s = CheckPositiveCount("n", n); !s.ok()) return s;
  if (absl::Status s = CheckPositiveCount("m", m); !s.ok()) return s;
  if (!(delta > 0 && delta <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1], got %.17g", delta));
  }
  const double nn = static_cast<double>(n);
  return std::sqrt(nn + nn * nn / static_cast<double>(m)) +
         std::sqrt(nn * LogInverse(delta));
}

std::vector<double> HetSchedule(double a, double b, int64_t k) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(std::max<int64_t>(k, 0)));
  const double kk = static_cast<double>(k);
  for (int64_t i = 1; i <= k; ++i) {
    out.push_back(std::log1p(a / (kk - b * static_cast<double>(i - 1))));
  }
  return out;
}

std::vector<double> ReplacementSchedule(double epsilon0, int64_t m,
                                        double w_max) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(std::max<int64_t>(m, 0)));
  const double growth = std::exp(epsilon0);
  const double gap = std::expm1(epsilon0);
  for (int64_t i = 1; i <= m; ++i) {
    const double denom = static_cast<double>(i - 1) +
                         growth * static_cast<double>(m - i + 1);
    out.push_back(std::log1p(w_max * growth * gap / denom));
  }
  return out;
}

}  // namespace rcdp
