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
#include <map>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "rcdp/accountant.h"
#include "rcdp/protocols.h"

namespace rcdp {
namespace {

using ::testing::HasSubstr;

DiscreteMechanism Rr(double eps0) { return RandomizedResponse(eps0).value(); }

OutputLaw Law(ProtocolId id, const std::vector<int>& data,
              const DiscreteMechanism& mech, const OracleParams& params) {
  absl::StatusOr<OutputLaw> law = EnumerateLaw(id, data, mech, params);
  EXPECT_TRUE(law.ok()) << law.status();
  return law.value_or(OutputLaw{});
}

TEST(ProtocolIdTest, RoundTrip) {
  for (ProtocolId id :
       {ProtocolId::kFixed, ProtocolId::kSliding, ProtocolId::kAvg,
        ProtocolId::kReplacement, ProtocolId::kSwap, ProtocolId::kShuffle,
        ProtocolId::kBins}) {
    EXPECT_EQ(ParseProtocolId(ProtocolName(id)).value(), id);
  }
  EXPECT_FALSE(ParseProtocolId("bogus").ok());
}

TEST(EnumerateLawTest, UnitMass) {
  const DiscreteMechanism rr = Rr(0.7);
  const std::vector<int> data = {1, 0, 1};
  OracleParams p{.m = 2, .p0 = 0.5};
  for (ProtocolId id : {ProtocolId::kFixed, ProtocolId::kSliding,
                        ProtocolId::kAvg, ProtocolId::kSwap,
                        ProtocolId::kShuffle}) {
    EXPECT_NEAR(static_cast<double>(Law(id, data, rr, p).TotalMass()), 1,
                1e-15)
        << ProtocolName(id);
  }
  OracleParams rep{.weights = {0.3, 0.1, 0.3}, .w_max = 0.3, .replacement = 0};
  EXPECT_NEAR(static_cast<double>(
                  Law(ProtocolId::kReplacement, data, rr, rep).TotalMass()),
              1, 1e-15);
  OracleParams bins{.bins = {1, 0, 2}};
  EXPECT_NEAR(
      static_cast<double>(Law(ProtocolId::kBins, data, rr, bins).TotalMass()),
      1, 1e-15);
}

TEST(EnumerateLawTest, NoCheckInsOnlyDummies) {
  const DiscreteMechanism rr = Rr(1.0);
  OracleParams p{.m = 2, .p0 = 0, .dummy_datum = 1};
  const OutputLaw law = Law(ProtocolId::kFixed, {0, 0, 0}, rr, p);
  const long double keep = rr.Prob(1, 1);
  EXPECT_NEAR(static_cast<double>(law.Prob({1, 1})),
              static_cast<double>(keep * keep), 1e-15);
}

// One swap over a single record is the randomizer itself: the hockey-stick
// divergence of randomized response is tight at eps0 and explicit below it.
TEST(HockeyStickTest, RandomizedResponseIsTight) {
  const double eps0 = 1.2;
  const DiscreteMechanism rr = Rr(eps0);
  const OracleParams p;
  const OutputLaw a = Law(ProtocolId::kSwap, {0}, rr, p);
  const OutputLaw b = Law(ProtocolId::kSwap, {1}, rr, p);
  EXPECT_NEAR(static_cast<double>(HockeyStick(a, b, eps0)), 0, 1e-15);
  const double keep = rr.Prob(0, 0);
  for (double eps : {0.0, 0.3, 1.0}) {
    EXPECT_NEAR(static_cast<double>(HockeyStick(a, b, eps)),
                keep - std::exp(eps) * (1 - keep), 1e-15);
  }
  EXPECT_NEAR(static_cast<double>(MaxAtomDifference(a, b)), 2 * keep - 1,
              1e-15);
}

TEST(EnumerateLawTest, ShuffleIgnoresRecordOrder) {
  const DiscreteMechanism rr = Rr(0.5);
  const OutputLaw a = Law(ProtocolId::kShuffle, {0, 1, 1}, rr, {});
  const OutputLaw b = Law(ProtocolId::kShuffle, {1, 1, 0}, rr, {});
  EXPECT_LT(static_cast<double>(MaxAtomDifference(a, b)), 1e-16);
}

TEST(EnumerateLawTest, MatchesSampledSwapProtocol) {
  const DiscreteMechanism rr = Rr(0.8);
  const std::vector<int> data = {1, 0, 0};
  const OutputLaw law = Law(ProtocolId::kSwap, data, rr, {});
  Rng rng(21);
  std::map<std::vector<int>, int> counts;
  constexpr int kDraws = 200000;
  for (int t = 0; t < kDraws; ++t) {
    ++counts[RunSwap(data, NonAdaptive(rr), rng).value()];
  }
  for (const auto& [outcome, p] : law.atoms) {
    const double q = static_cast<double>(p);
    const double se = std::sqrt(q * (1 - q) / kDraws);
    EXPECT_NEAR(static_cast<double>(counts[outcome]) / kDraws, q, 5 * se);
  }
}

TEST(EnumerateLawTest, MatchesSampledReplacementProtocol) {
  const DiscreteMechanism rr = Rr(0.8);
  const std::vector<int> data = {1, 0, 1};
  const std::vector<double> weights = {0.4, 0.2, 0.4};
  const OracleParams p{.weights = weights, .w_max = 0.4, .replacement = 0};
  const OutputLaw law = Law(ProtocolId::kReplacement, data, rr, p);
  Rng rng(22);
  std::map<std::vector<int>, int> counts;
  constexpr int kDraws = 200000;
  for (int t = 0; t < kDraws; ++t) {
    ++counts[RunReplacement(data, weights, 0.4, 0, NonAdaptive(rr), rng)
                 .value()];
  }
  for (const auto& [outcome, pr] : law.atoms) {
    const double q = static_cast<double>(pr);
    EXPECT_NEAR(static_cast<double>(counts[outcome]) / kDraws, q,
                5 * std::sqrt(q * (1 - q) / kDraws));
  }
}

TEST(ReductionLawTest, FixedWindowIsARandomReplacement) {
  const DiscreteMechanism rr = Rr(0.9);
  for (int m : {1, 2, 3}) {
    for (double p0 : {0.3, 1.0}) {
      for (const std::vector<int>& data :
           std::vector<std::vector<int>>{{0, 1}, {1, 1, 0}, {0, 0, 1}}) {
        const OracleParams p{.m = m, .p0 = p0};
        const OutputLaw direct = Law(ProtocolId::kFixed, data, rr, p);
        for (int i_star = 0; i_star < static_cast<int>(data.size()); ++i_star) {
          auto via = FixedViaReplacementLaw(data, i_star, rr, p);
          ASSERT_TRUE(via.ok()) << via.status();
          EXPECT_LT(static_cast<double>(MaxAtomDifference(direct, *via)), 1e-15)
              << "m " << m << " p0 " << p0 << " i* " << i_star;
        }
      }
    }
  }
}

TEST(ReductionLawTest, ShuffleIsAMixtureOfSwaps) {
  const DiscreteMechanism rr = Rr(0.6);
  for (const std::vector<int>& data :
       std::vector<std::vector<int>>{{0, 1}, {1, 0, 0}, {0, 1, 1, 0}}) {
    const OutputLaw direct = Law(ProtocolId::kShuffle, data, rr, {});
    for (int i_star = 0; i_star < static_cast<int>(data.size()); ++i_star) {
      auto via = ShuffleViaSwapLaw(data, i_star, rr, {});
      ASSERT_TRUE(via.ok()) << via.status();
      EXPECT_LT(static_cast<double>(MaxAtomDifference(direct, *via)), 1e-15);
    }
  }
}

TEST(VerifyBoundTest, SwapBoundHoldsExhaustively) {
  const DiscreteMechanism rr = Rr(1.0);
  for (int n : {2, 3, 4}) {
    const PrivacyPair bound = SwapBound({.epsilon0 = 1.0}, n, 1e-2).value();
    auto report = VerifyBound(ProtocolId::kSwap, n, rr, {}, bound,
                              NeighborScope::kFirstIndex);
    ASSERT_TRUE(report.ok()) << report.status();
    EXPECT_TRUE(report->passed) << BoundReportJson(*report);
    // 2^n datasets, one first-index neighbour each, counted in both directions.
    EXPECT_EQ(report->pairs_checked, 2 << n);
  }
}

// The exhaustive check must be able to fail: claiming the swap protocol is
// (0.05, 1e-4)-DP is false.
TEST(VerifyBoundTest, DetectsAFalseClaim) {
  const DiscreteMechanism rr = Rr(2.0);
  auto report = VerifyBound(ProtocolId::kShuffle, 3, rr, {},
                            {.epsilon = 0.05, .delta = 1e-4},
                            NeighborScope::kAnyIndex);
  ASSERT_TRUE(report.ok());
  EXPECT_FALSE(report->passed);
  EXPECT_GT(static_cast<double>(report->delta_emp), 1e-4);
  EXPECT_EQ(report->worst_dataset.size(), 3u);
  EXPECT_THAT(BoundReportJson(*report), HasSubstr("\"passed\":false"));
}

TEST(VerifyBoundTest, FixedWindowBoundHolds) {
  const DiscreteMechanism rr = Rr(0.5);
  const OracleParams p{.m = 2, .p0 = 0.5};
  const PrivacyPair bound =
      FixedWindowBound({.epsilon0 = 0.5},
                       {.n = 3, .m = 2, .p0 = 0.5, .delta = 1e-2})
          .value();
  auto report = VerifyBound(ProtocolId::kFixed, 3, rr, p, bound,
                            NeighborScope::kAnyIndex);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_TRUE(report->passed);
}

TEST(PosteriorTest, WithinBounds) {
  const double eps0 = 1.0;
  const DiscreteMechanism rr = Rr(eps0);
  for (const std::vector<int>& data :
       std::vector<std::vector<int>>{{0, 1, 1}, {1, 0, 0, 1}}) {
    auto swap = ExactPosterior(ProtocolId::kSwap, data, rr, {});
    ASSERT_TRUE(swap.ok()) << swap.status();
    ASSERT_FALSE(swap->empty());
    for (const PosteriorRecord& r : *swap) {
      const double bound =
          PosteriorBoundSwap(eps0, static_cast<int64_t>(data.size()), r.i)
              .value();
      EXPECT_LE(static_cast<double>(r.q), bound + 1e-9);
    }
    const int m = static_cast<int>(data.size());
    const OracleParams p{.weights = std::vector<double>(m, 0.5),
                         .w_max = 0.5,
                         .replacement = 1};
    auto rep = ExactPosterior(ProtocolId::kReplacement, data, rr, p);
    ASSERT_TRUE(rep.ok()) << rep.status();
    for (const PosteriorRecord& r : *rep) {
      EXPECT_LE(static_cast<double>(r.q),
                PosteriorBoundFixed(eps0, m, r.i).value() + 1e-9);
    }
  }
}

TEST(PosteriorTest, FirstPositionIsPrior) {
  const DiscreteMechanism rr = Rr(1.0);
  auto swap = ExactPosterior(ProtocolId::kSwap, std::vector<int>{0, 1, 0}, rr,
                             {});
  ASSERT_TRUE(swap.ok());
  for (const PosteriorRecord& r : *swap) {
    if (r.i == 1) {
      EXPECT_NEAR(static_cast<double>(r.q), 1.0 / 3, 1e-15);
    }
  }
}

TEST(RatioLemmaTest, Holds) {
  const DiscreteMechanism rr = Rr(1.3);
  const DiscreteMechanism three =
      DiscreteMechanism::Create({{0.5, 0.3, 0.2}, {0.2, 0.5, 0.3},
                                 {0.3, 0.2, 0.5}})
          .value();
  for (double q : {0.0, 0.25, 0.5, 1.0}) {
    auto a = VerifyRatioLemma(rr, std::vector<int>{0, 1, 1}, 0, q);
    ASSERT_TRUE(a.ok()) << a.status();
    EXPECT_TRUE(a->passed) << a->max_ratio << " > " << a->bound;
    auto b = VerifyRatioLemma(three, std::vector<int>{0, 1, 2, 2}, 2, q);
    ASSERT_TRUE(b.ok()) << b.status();
    EXPECT_TRUE(b->passed);
  }
}

TEST(EnumerateLawTest, RespectsTheAtomCap) {
  const DiscreteMechanism rr = Rr(1.0);
  OracleParams p{.m = 3, .p0 = 1, .atom_cap = 10};
  EXPECT_FALSE(EnumerateLaw(ProtocolId::kFixed, std::vector<int>{0, 1, 0}, rr,
                            p)
                   .ok());
  EXPECT_FALSE(
      EnumerateLaw(ProtocolId::kSwap, std::vector<int>{0, 5}, rr, {}).ok());
}

}  // namespace
}  // namespace rcdp
