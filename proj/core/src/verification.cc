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

#include "rcdp/verification.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "rcdp/accountant.h"
#include "rcdp/erm.h"
#include "rcdp/oracle.h"
#include "rcdp/protocols.h"
#include "rcdp/randomizers.h"
#include "rcdp/risk.h"

namespace rcdp {
namespace {

// Base seed for every Monte Carlo criterion; trial t uses DeriveSeed(base, t).
constexpr uint64_t kBaseSeed = 1;

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Check = std::function<absl::StatusOr<Outcome>()>;

std::vector<double> LogGrid(double lo, double hi, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k /
                                              (count - 1)));
  }
  return out;
}

absl::StatusOr<Outcome> SimplifiedEnvelope() {
  int points = 0;
  for (int k = 1; k <= 10; ++k) {
    const double eps0 = 0.1 * k;
    for (double delta : {1e-6, 1e-4, 1e-2}) {
      for (int64_t m : {10, 100, 1000, 10000}) {
        for (double p0 : {0.01, 0.1, 1.0}) {
          const LocalSpec spec{.epsilon0 = eps0};
          const FixedWindowParams params{
              .n = m, .m = m, .p0 = p0, .delta = delta};
          absl::StatusOr<PrivacyPair> exact = FixedWindowBound(spec, params);
          if (!exact.ok()) return exact.status();
          absl::StatusOr<PrivacyPair> simple =
              FixedWindowSimplified(spec, params);
          if (!simple.ok()) return simple.status();
          ++points;
          if (!(exact->epsilon < simple->epsilon)) {
            return Outcome{false,
                           absl::StrFormat(
                               "exact %.17g >= simplified %.17g at eps0=%g "
                               "delta=%g m=%d p0=%g",
                               exact->epsilon, simple->epsilon, eps0, delta, m,
                               p0)};
          }
        }
      }
    }
  }
  return Outcome{true, absl::StrFormat("exact < simplified at all %d points",
                                       points)};
}

// The eps0 in [lo, hi] where eps(eps0) = eps0, by bisection; hi if the bound
// stays nonvacuous on the whole range.
absl::StatusOr<double> VacuousThreshold(
    const std::function<absl::StatusOr<double>(double)>& eps, double lo,
    double hi) {
  absl::StatusOr<double> at_hi = eps(hi);
  if (!at_hi.ok()) return at_hi.status();
  if (*at_hi < hi) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    absl::StatusOr<double> v = eps(mid);
    if (!v.ok()) return v.status();
    (*v >= mid ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

absl::StatusOr<Outcome> ShuffleComparison() {
  constexpr double kDelta = 1e-6;
  const std::vector<double> grid = LogGrid(0.05, 3.0, 60);
  auto eps_new = [&](double eps0, int64_t n) -> absl::StatusOr<double> {
    absl::StatusOr<PrivacyPair> r =
        ShuffleBoundNew(LocalSpec{.epsilon0 = eps0}, n, kDelta);
    if (!r.ok()) return r.status();
    return r->epsilon;
  };
  auto eps_old = [&](double eps0, int64_t n) -> absl::StatusOr<double> {
    absl::StatusOr<PrivacyPair> r =
        ShuffleBoundOld(LocalSpec{.epsilon0 = eps0}, n, kDelta);
    if (!r.ok()) return r.status();
    return r->epsilon;
  };

  // (a) dominance wherever the new bound is nonvacuous.
  for (int64_t n : {1000, 10000, 100000}) {
    for (double eps0 : grid) {
      absl::StatusOr<double> a = eps_new(eps0, n);
      absl::StatusOr<double> b = eps_old(eps0, n);
      if (!a.ok()) return a.status();
      if (!b.ok()) return b.status();
      if (*a < eps0 && !(*a < *b)) {
        return Outcome{false, absl::StrFormat(
                                  "(a) eps_new %.17g >= eps_old %.17g at "
                                  "eps0=%g n=%d",
                                  *a, *b, eps0, n)};
      }
    }
  }

  // (b) new at n = 1e3 against old at n = 1e4.
  double worst = 0;
  double worst_eps0 = 0;
  for (double eps0 : grid) {
    absl::StatusOr<double> a = eps_new(eps0, 1000);
    absl::StatusOr<double> b = eps_old(eps0, 10000);
    if (!a.ok()) return a.status();
    if (!b.ok()) return b.status();
    if (*a >= eps0 || *b >= eps0) continue;
    const double rel = std::abs(*a - *b) / *b;
    if (rel > worst) {
      worst = rel;
      worst_eps0 = eps0;
    }
  }
  absl::StatusOr<double> t_new = VacuousThreshold(
      [&](double e) { return eps_new(e, 1000); }, 0.05, 3.0);
  absl::StatusOr<double> t_old = VacuousThreshold(
      [&](double e) { return eps_old(e, 10000); }, 0.05, 3.0);
  if (!t_new.ok()) return t_new.status();
  if (!t_old.ok()) return t_old.status();
  const double gap = std::abs(*t_new - *t_old);
  const bool ok = worst <= 0.5 && gap < 0.3;
  return Outcome{
      ok, absl::StrFormat("(a) dominance holds; (b) max rel gap %.4f at "
                          "eps0=%.4f (limit 0.5), vacuous thresholds "
                          "%.4f vs %.4f (gap %.4f, limit 0.3)",
                          worst, worst_eps0, *t_new, *t_old, gap)};
}

double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

absl::StatusOr<std::vector<double>> DummyCounts(const SimConfig& base,
                                                int trials) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    SimConfig config = base;
    config.seed = DeriveSeed(kBaseSeed, static_cast<uint64_t>(t));
    absl::StatusOr<ProtocolTrace> trace = RunProtocol(config, nullptr, {});
    if (!trace.ok()) return trace.status();
    out.push_back(static_cast<double>(trace->dummy_count));
  }
  return out;
}

absl::StatusOr<Outcome> DummyFixed() {
  constexpr int64_t kN = 10000;
  constexpr int64_t kM = 100;
  bool ok = true;
  std::string detail;
  for (int c : {1, 2, 3}) {
    const double p0 = static_cast<double>(c * kM) / kN;
    SimConfig config{.n_clients = kN, .n_slots = kM, .p0 = p0};
    absl::StatusOr<std::vector<double>> counts = DummyCounts(config, 1000);
    if (!counts.ok()) return counts.status();
    absl::StatusOr<double> expected = ExpectedDummyFixed(kN, kM, p0);
    if (!expected.ok()) return expected.status();
    const double mean = Mean(*counts);
    const double rel = std::abs(mean - *expected) / *expected;
    const double cap = kM * std::exp(-c) * 1.05;
    const bool pass = rel <= 0.02 && mean <= cap;
    ok = ok && pass;
    absl::StrAppendFormat(&detail,
                          "%sc=%d mean %.4f expected %.4f (rel %.4f, limit "
                          "0.02; cap %.4f)",
                          detail.empty() ? "" : "; ", c, mean, *expected, rel,
                          cap);
  }
  return Outcome{ok, detail};
}

absl::StatusOr<Outcome> DummySliding() {
  constexpr int64_t kN = 2000;
  constexpr int64_t kM = 50;
  SimConfig config{.n_clients = kN,
                   .n_slots = kM,
                   .policy = PolicyKind::kSliding};
  absl::StatusOr<std::vector<double>> counts = DummyCounts(config, 1000);
  if (!counts.ok()) return counts.status();
  absl::StatusOr<double> expected = ExpectedDummySliding(kN, kM);
  if (!expected.ok()) return expected.status();
  const double mean = Mean(*counts);
  const double rel = std::abs(mean - *expected) / *expected;
  return Outcome{rel <= 0.02,
                 absl::StrFormat("mean %.4f expected %.4f (rel %.4f, limit "
                                 "0.02; (n-m+1)/e = %.4f)",
                                 mean, *expected, rel,
                                 (kN - kM + 1) / std::exp(1.0))};
}

absl::StatusOr<Outcome> OracleBounds() {
  constexpr double kDelta = 1e-2;
  int checked = 0;
  long double worst_margin = 1;
  for (double eps0 : {0.5, 1.0}) {
    absl::StatusOr<DiscreteMechanism> rr = RandomizedResponse(eps0);
    if (!rr.ok()) return rr.status();
    const LocalSpec spec{.epsilon0 = eps0};
    for (auto [n, m] : {std::pair{2, 2}, {3, 2}, {3, 3}}) {
      for (double p0 : {0.5, 1.0}) {
        absl::StatusOr<PrivacyPair> bound = FixedWindowBound(
            spec, {.n = n, .m = m, .p0 = p0, .delta = kDelta});
        if (!bound.ok()) return bound.status();
        absl::StatusOr<BoundReport> report =
            VerifyBound(ProtocolId::kFixed, n, *rr, {.m = m, .p0 = p0}, *bound,
                        NeighborScope::kAnyIndex);
        if (!report.ok()) return report.status();
        ++checked;
        worst_margin = std::min<long double>(worst_margin, report->margin());
        if (!report->passed) {
          return Outcome{false, "fixed: " + BoundReportJson(*report)};
        }
      }
    }
    for (int n : {2, 3}) {
      absl::StatusOr<PrivacyPair> bound = ShuffleBoundNew(spec, n, kDelta);
      if (!bound.ok()) return bound.status();
      for (auto [id, scope] :
           {std::pair{ProtocolId::kSwap, NeighborScope::kFirstIndex},
            {ProtocolId::kShuffle, NeighborScope::kAnyIndex}}) {
        absl::StatusOr<BoundReport> report =
            VerifyBound(id, n, *rr, {}, *bound, scope);
        if (!report.ok()) return report.status();
        ++checked;
        worst_margin = std::min<long double>(worst_margin, report->margin());
        if (!report->passed) {
          return Outcome{false, BoundReportJson(*report)};
        }
      }
    }
  }
  return Outcome{true,
                 absl::StrFormat("%d instances, all neighbour pairs within "
                                 "delta; smallest margin %.6g",
                                 checked, static_cast<double>(worst_margin))};
}

absl::StatusOr<Outcome> Posteriors() {
  int64_t records = 0;
  double worst_gap = -1;  // max of q - bound
  for (double eps0 : {0.5, 1.0}) {
    absl::StatusOr<DiscreteMechanism> rr = RandomizedResponse(eps0);
    if (!rr.ok()) return rr.status();
    // Replacement over m slots with every weight vector on {0, w/2, w}^m.
    for (int m : {2, 3}) {
      for (double p0 : {0.5, 1.0}) {
        const std::vector<long double> levels{0, 0.5L * p0, p0};
        const int combos = static_cast<int>(std::pow(3, m));
        for (int wc = 0; wc < combos; ++wc) {
          OracleParams params{.m = m, .w_max = p0};
          for (int k = 0, c = wc; k < m; ++k, c /= 3) {
            params.weights.push_back(static_cast<double>(levels[c % 3]));
          }
          for (int code = 0; code < (1 << m); ++code) {
            std::vector<int> data;
            for (int k = 0; k < m; ++k) data.push_back((code >> k) & 1);
            for (int r : {0, 1}) {
              params.replacement = r;
              absl::StatusOr<std::vector<PosteriorRecord>> post =
                  ExactPosterior(ProtocolId::kReplacement, data, *rr, params);
              if (!post.ok()) return post.status();
              for (const PosteriorRecord& rec : *post) {
                absl::StatusOr<double> bound =
                    PosteriorBoundFixed(eps0, m, rec.i);
                if (!bound.ok()) return bound.status();
                ++records;
                const double gap = static_cast<double>(rec.q) - *bound;
                worst_gap = std::max(worst_gap, gap);
                if (gap > 1e-9) {
                  return Outcome{
                      false, absl::StrFormat(
                                 "replacement m=%d eps0=%g i=%d: q=%.17g > "
                                 "bound %.17g",
                                 m, eps0, rec.i, static_cast<double>(rec.q),
                                 *bound)};
                }
              }
            }
          }
        }
      }
    }
    for (int n : {2, 3}) {
      for (int code = 0; code < (1 << n); ++code) {
        std::vector<int> data;
        for (int k = 0; k < n; ++k) data.push_back((code >> k) & 1);
        absl::StatusOr<std::vector<PosteriorRecord>> post =
            ExactPosterior(ProtocolId::kSwap, data, *rr, {});
        if (!post.ok()) return post.status();
        for (const PosteriorRecord& rec : *post) {
          absl::StatusOr<double> bound = PosteriorBoundSwap(eps0, n, rec.i);
          if (!bound.ok()) return bound.status();
          ++records;
          const double gap = static_cast<double>(rec.q) - *bound;
          worst_gap = std::max(worst_gap, gap);
          if (gap > 1e-9) {
            return Outcome{false,
                           absl::StrFormat("swap n=%d eps0=%g i=%d: q=%.17g > "
                                           "bound %.17g",
                                           n, eps0, rec.i,
                                           static_cast<double>(rec.q), *bound)};
          }
        }
      }
    }
  }
  return Outcome{true, absl::StrFormat("%d posterior values, max q - bound = "
                                       "%.3g",
                                       records, worst_gap)};
}

absl::StatusOr<Outcome> CompositionOrdering() {
  Rng rng(DeriveSeed(kBaseSeed, 7));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int64_t> ks(10, 1000);
  double tightest = std::numeric_limits<double>::infinity();
  for (int point = 0; point < 200; ++point) {
    // (0, 2] and (0, 0.9]: 1 - u with u in [0, 1) lies in (0, 1].
    const double a = 2 * (1 - unit(rng));
    const double b = 0.9 * (1 - unit(rng));
    const int64_t k = ks(rng);
    absl::StatusOr<PrivacyPair> het = HetComposition(a, b, k, 1e-6);
    if (!het.ok()) return het.status();
    absl::StatusOr<PrivacyPair> kov =
        KovComposition({HetSchedule(a, b, k)}, 1e-6);
    if (!kov.ok()) return kov.status();
    tightest = std::min(tightest, het->epsilon - kov->epsilon);
    if (!(het->epsilon >= kov->epsilon)) {
      return Outcome{false,
                     absl::StrFormat("het %.17g < kov %.17g at a=%g b=%g k=%d",
                                     het->epsilon, kov->epsilon, a, b, k)};
    }
  }
  return Outcome{true, absl::StrFormat("200 points, min(het - kov) = %.6g",
                                       tightest)};
}

absl::StatusOr<Outcome> BinLoads() {
  constexpr int64_t kN = 10000;
  constexpr int64_t kM = 100;
  constexpr int kTrials = 2000;
  absl::StatusOr<double> bound = BinLoadL2Bound(kN, kM, 0.05);
  if (!bound.ok()) return bound.status();
  SimConfig config{
      .n_clients = kN, .n_slots = kM, .policy = PolicyKind::kAvg};
  int within = 0;
  double largest = 0;
  for (int t = 0; t < kTrials; ++t) {
    config.seed = DeriveSeed(kBaseSeed, static_cast<uint64_t>(t));
    absl::StatusOr<ProtocolTrace> trace = RunAvg(config, nullptr, {});
    if (!trace.ok()) return trace.status();
    double sq = 0;
    for (int64_t l : trace->bin_loads) sq += static_cast<double>(l * l);
    const double norm = std::sqrt(sq);
    largest = std::max(largest, norm);
    if (norm <= *bound) ++within;
  }
  const double frac = static_cast<double>(within) / kTrials;
  return Outcome{frac >= 0.94,
                 absl::StrFormat("%.4f of seeds within bound %.4f (limit "
                                 "0.94); largest ||L|| = %.4f",
                                 frac, *bound, largest)};
}

absl::StatusOr<Outcome> EpochScaling() {
  const LocalSpec spec{.epsilon0 = 0.5};
  std::vector<double> xs;
  std::vector<double> ys;
  for (int64_t n : {100000, 1000000, 10000000}) {
    absl::StatusOr<PrivacyPair> r = EpochComposition(spec, n, 1000, 1e-7, 1e-7);
    if (!r.ok()) return r.status();
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(r->epsilon));
  }
  const double mx = Mean(xs);
  const double my = Mean(ys);
  double sxy = 0;
  double sxx = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  const double slope = sxy / sxx;
  return Outcome{slope >= -0.6 && slope <= -0.4,
                 absl::StrFormat("log-log slope %.6f (limit [-0.6, -0.4])",
                                 slope)};
}

// Logistic task of the utility check: p = 10, R = 1, planted norm 4.
struct UtilitySetup {
  ErmTask task;
  Dataset eval;
};

absl::StatusOr<UtilitySetup> MakeUtilitySetup() {
  UtilitySetup setup{.task = MakeLogisticTask(10, 1.0, 4.0, 2024)};
  Rng rng(DeriveSeed(kBaseSeed, 1'000'000));
  setup.eval = SampleDataset(setup.task, 100000, rng);
  absl::StatusOr<Eigen::VectorXd> opt =
      ComputeOptimum(setup.task, setup.eval, 1e-9);
  if (!opt.ok()) return opt.status();
  setup.task.optimum = *opt;
  return setup;
}

absl::StatusOr<double> MeanAvgExcessRisk(const UtilitySetup& setup,
                                         int64_t n, int64_t m, double sigma,
                                         int seeds) {
  double total = 0;
  for (int s = 0; s < seeds; ++s) {
    const uint64_t seed = DeriveSeed(kBaseSeed, static_cast<uint64_t>(s));
    Rng data_rng(DeriveSeed(seed, 1));
    const Dataset train = SampleDataset(setup.task, n, data_rng);
    SimConfig config{
        .n_clients = n,
        .n_slots = m,
        .policy = PolicyKind::kAvg,
        .randomizer = {.clip_norm = setup.task.lipschitz,
                       .noise_scale = sigma,
                       .dimension = setup.task.dimension},
        .learning_rate =
            [&setup, sigma, n, m](int64_t i) {
              return LrAvg(i, setup.task, sigma, n, m).value_or(0.0);
            },
        .seed = seed};
    absl::StatusOr<ProtocolTrace> trace = RunAvg(config, &setup.task, train);
    if (!trace.ok()) return trace.status();
    absl::StatusOr<double> risk = ExcessRisk(
        *trace, setup.task, Estimator::kAverageIterate, setup.eval);
    if (!risk.ok()) return risk.status();
    total += *risk;
  }
  return total / seeds;
}

absl::StatusOr<Outcome> UtilityTrend() {
  constexpr int64_t kN = 10000;
  constexpr int kSeeds = 20;
  absl::StatusOr<UtilitySetup> setup = MakeUtilitySetup();
  if (!setup.ok()) return setup.status();
  absl::StatusOr<double> low = MeanAvgExcessRisk(*setup, kN, 100, 0.01, kSeeds);
  absl::StatusOr<double> high = MeanAvgExcessRisk(*setup, kN, 100, 1.0, kSeeds);
  absl::StatusOr<double> many =
      MeanAvgExcessRisk(*setup, kN, 1000, 0.1, kSeeds);
  absl::StatusOr<double> few = MeanAvgExcessRisk(*setup, kN, 100, 0.1, kSeeds);
  for (const auto* r : {&low, &high, &many, &few}) {
    if (!r->ok()) return r->status();
  }
  return Outcome{
      *low < *high && *many < *few,
      absl::StrFormat("m=100: risk(sigma=0.01) %.6g vs risk(sigma=1) %.6g; "
                      "sigma=0.1: risk(m=1000) %.6g vs risk(m=100) %.6g",
                      *low, *high, *many, *few)};
}

absl::StatusOr<Outcome> ReductionIdentities() {
  int points = 0;
  const std::vector<double> eps0s = LogGrid(0.01, 3.0, 10);
  const std::vector<std::pair<int64_t, int64_t>> sizes{
      {10, 1},     {10, 10},     {100, 7},      {100, 100},   {1000, 10},
      {1000, 999}, {10000, 100}, {12345, 6789}, {1000000, 1000}, {10000000, 100000}};
  const std::vector<double> p0s{0.01, 0.05, 0.1, 0.2, 0.3,
                                0.5,  0.7,  0.9, 0.99, 1.0};
  for (size_t a = 0; a < eps0s.size(); ++a) {
    for (size_t b = 0; b < sizes.size(); ++b) {
      const LocalSpec spec{.epsilon0 = eps0s[a]};
      const auto [n, m] = sizes[b];
      const double p0 = p0s[(a + b) % p0s.size()];
      const double delta = std::pow(10.0, -2.0 - static_cast<double>(b % 7));
      absl::StatusOr<PrivacyPair> fixed = FixedWindowBound(
          spec, {.n = n, .m = m, .p0 = p0, .delta = delta});
      absl::StatusOr<PrivacyPair> rep_p0 = ReplacementBound(spec, m, p0, delta);
      absl::StatusOr<PrivacyPair> sliding =
          SlidingWindowBound(spec, n, m, delta);
      absl::StatusOr<PrivacyPair> rep_1 = ReplacementBound(spec, m, 1.0, delta);
      absl::StatusOr<PrivacyPair> shuffle = ShuffleBoundNew(spec, n, delta);
      absl::StatusOr<PrivacyPair> swap = SwapBound(spec, n, delta);
      for (const auto* r : {&fixed, &rep_p0, &sliding, &rep_1, &shuffle, &swap}) {
        if (!r->ok()) return r->status();
      }
      ++points;
      auto same = [](const PrivacyPair& x, const PrivacyPair& y) {
        return x.epsilon == y.epsilon && x.delta == y.delta &&
               x.vacuous == y.vacuous;
      };
      if (!same(*fixed, *rep_p0) || !same(*sliding, *rep_1) ||
          !same(*shuffle, *swap)) {
        return Outcome{false,
                       absl::StrFormat("mismatch at eps0=%.17g n=%d m=%d "
                                       "p0=%g: fixed %.17g rep %.17g sliding "
                                       "%.17g rep1 %.17g shuffle %.17g swap "
                                       "%.17g",
                                       eps0s[a], n, m, p0, fixed->epsilon,
                                       rep_p0->epsilon, sliding->epsilon,
                                       rep_1->epsilon, shuffle->epsilon,
                                       swap->epsilon)};
      }
    }
  }
  return Outcome{true, absl::StrFormat("%d points bitwise equal", points)};
}

struct CriterionDef {
  const char* name;
  double limit_seconds;
  Check check;
};

const std::vector<CriterionDef>& Definitions() {
  static const auto* defs = new std::vector<CriterionDef>{
      {"simplified-envelope", 1, SimplifiedEnvelope},
      {"shuffle-comparison", 1, ShuffleComparison},
      {"dummy-fixed", 30, DummyFixed},
      {"dummy-sliding", 30, DummySliding},
      {"oracle-dp", 120, OracleBounds},
      {"posterior-bounds", 120, Posteriors},
      {"composition-ordering", 1, CompositionOrdering},
      {"bin-load", 60, BinLoads},
      {"epoch-scaling", 1, EpochScaling},
      {"utility-trend", 300, UtilityTrend},
      {"reduction-identities", 1, ReductionIdentities},
  };
  return *defs;
}

}  // namespace

absl::StatusOr<CriterionResult> RunCriterion(int id) {
  if (id < 1 || id > kNumCriteria) {
    return absl::InvalidArgumentError(
        absl::StrFormat("criterion %d outside [1, %d]", id, kNumCriteria));
  }
  const CriterionDef& def = Definitions()[static_cast<size_t>(id - 1)];
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<Outcome> outcome = def.check();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  CriterionResult result{.id = id,
                         .name = def.name,
                         .seconds = seconds,
                         .time_limit_seconds = def.limit_seconds};
  if (!outcome.ok()) {
    result.passed = false;
    result.detail = "error: " + outcome.status().ToString();
    return result;
  }
  result.detail = outcome->detail;
  result.passed = outcome->passed && seconds < def.limit_seconds;
  if (outcome->passed && !result.passed) {
    absl::StrAppendFormat(&result.detail, "; exceeded time limit %.0f s",
                          def.limit_seconds);
  }
  return result;
}

absl::StatusOr<std::vector<int>> SuiteCriteria(const std::string& suite) {
  if (suite == "formulas") return std::vector<int>{1, 2, 7, 9, 11};
  if (suite == "oracle") return std::vector<int>{5, 6};
  if (suite == "montecarlo") return std::vector<int>{3, 4, 8, 10};
  if (suite == "all") {
    std::vector<int> all(kNumCriteria);
    std::iota(all.begin(), all.end(), 1);
    return all;
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "unknown suite '%s' (expected formulas, oracle, montecarlo or all)",
      suite));
}

std::string FormatResult(const CriterionResult& r) {
  return absl::StrFormat("[%s] %d %s: %s (%.3f s)", r.passed ? "PASS" : "FAIL",
                         r.id, r.name, r.detail, r.seconds);
}

std::string ResultsJson(const std::string& suite,
                        const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  bool all = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const CriterionResult& r : results) {
    all = all && r.passed;
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"detail", r.detail},
                    {"seconds", r.seconds},
                    {"time_limit_seconds", r.time_limit_seconds}});
  }
  j["passed"] = all;
  j["criteria"] = std::move(rows);
  return j.dump(2);
}

}  // namespace rcdp
