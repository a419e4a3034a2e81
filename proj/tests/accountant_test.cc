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

#include <cmath>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "absl/status/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace rcdp {
namespace {

using Big = boost::multiprecision::cpp_dec_float_50;
using ::testing::DoubleNear;
using ::testing::HasSubstr;

constexpr double kRel = 1e-13;

void ExpectRel(double actual, double expected, double rel = kRel) {
  if (std::isinf(expected)) {
    EXPECT_EQ(actual, expected);
    return;
  }
  EXPECT_NEAR(actual, expected, rel * std::abs(expected))
      << "actual " << actual << " expected " << expected;
}

// 50-digit reference implementations, written from the closed forms and
// kept independent of the double-precision code paths.
Big BigReplacement(Big eps0, Big m, Big w, Big delta) {
  const Big e = exp(eps0);
  const Big g = e - 1;
  return w * w * e * g * g / (2 * m) +
         w * g * sqrt(2 * e * log(1 / delta) / m);
}

Big BigSwap(Big eps0, Big n, Big delta) {
  const Big g = exp(eps0) - 1;
  return exp(3 * eps0) * g * g / (2 * n) +
         exp(Big(3) / 2 * eps0) * g * sqrt(2 * log(1 / delta) / n);
}

Big BigShuffleOld(Big eps0, Big n, Big delta) {
  const Big s = 2 * exp(2 * eps0) * (exp(eps0) - 1);
  return s * (exp(s / n) - 1) + s * sqrt(2 * log(1 / delta) / n);
}

double ToDouble(const Big& v) { return v.convert_to<double>(); }

PrivacyPair Must(const absl::StatusOr<PrivacyPair>& r) {
  EXPECT_TRUE(r.ok()) << r.status();
  return r.value_or(PrivacyPair{});
}

// Reference values computed with mpmath at 50 digits
// (tests/scripts/freeze_constants.py).
TEST(AccountantFrozenTest, Replacement) {
  ExpectRel(Must(ReplacementBound({.epsilon0 = 0.5}, 100, 0.3, 1e-6)).epsilon,
            0.1316687045526535109879418);
}

TEST(AccountantFrozenTest, ApproximateBranchUsesEightEpsilon0) {
  // eps0 = 1 on the approximate branch evaluates the formula at 8.
  const LocalSpec spec{.epsilon0 = 1, .delta0 = 1e-15};
  const PrivacyPair p = Must(SlidingWindowBound(spec, 5000, 1000, 1e-5, 1e-6));
  ExpectRel(p.epsilon, 13260365.01360247607889657, 1e-12);
  EXPECT_EQ(p.delta, 1.0);
  EXPECT_TRUE(p.vacuous);
}

TEST(AccountantFrozenTest, Swap) {
  ExpectRel(Must(SwapBound({.epsilon0 = 0.5}, 10000, 1e-6)).epsilon,
            0.07228437420081552522517263);
  ExpectRel(Must(ShuffleBoundNew({.epsilon0 = 2}, 1000, 1e-6)).epsilon,
            29.56535271468375220783077);
}

TEST(AccountantFrozenTest, ShuffleOld) {
  ExpectRel(Must(ShuffleBoundOld({.epsilon0 = 0.5}, 10000, 1e-6)).epsilon,
            0.1866318325237605834364354);
  ExpectRel(Must(ShuffleBoundOld({.epsilon0 = 0.05}, 100000, 1e-6)).epsilon,
            0.001883909878005227796698313);
}

TEST(AccountantFrozenTest, Avg) {
  const PrivacyPair p = Must(AvgBound(
      {.epsilon0 = 0.5}, {.n = 10000, .m = 1000, .delta = 1e-6, .delta2 = 1e-3}));
  ExpectRel(p.epsilon, 0.5565494836356327207242266);
  ExpectRel(p.delta, 1e-6 + 1e-3);
}

TEST(AccountantFrozenTest, Bins) {
  ExpectRel(Must(BinSgdBound({.epsilon0 = 0.5}, {.ell = {2, 3, 5}, .n = 10},
                             1e-3))
                .epsilon,
            4.631257767486279320167727);
}

TEST(AccountantFrozenTest, Compositions) {
  ExpectRel(Must(HetComposition(1, 0.5, 100, 1e-6)).epsilon,
            0.7533844377699676893904814);
  ExpectRel(Must(KovComposition({{0.1, 0.2, 0.3}}, 1e-5)).epsilon,
            1.865038939004244479404803);
  const PrivacyPair epoch =
      Must(EpochComposition({.epsilon0 = 0.5}, 1000000, 1000, 1e-7, 1e-7));
  ExpectRel(epoch.epsilon, 0.02687435959182494836772193, 1e-12);
  ExpectRel(epoch.delta, 1000 * 1e-7 + 1e-7);
}

TEST(AccountantFrozenTest, CheuThreshold) {
  ExpectRel(CheuDeltaThreshold(1, 1e-6).value(), 2.706502863716624778529879e-11,
            1e-12);
  ExpectRel(CheuDeltaThreshold(0.1, 1e-3).value(),
            0.00000212108399460126638462364, 1e-12);
  EXPECT_EQ(CheuDeltaThreshold(0, 1e-3).value(), 0.0);
}

TEST(AccountantBigFloatTest, FixedWindowMatchesHighPrecision) {
  for (double eps0 : {0.05, 0.3, 1.0, 2.5}) {
    for (int64_t m : {1, 7, 100, 10000}) {
      for (double p0 : {0.01, 0.5, 1.0}) {
        for (double delta : {1e-9, 1e-4, 0.3}) {
          const PrivacyPair p = Must(FixedWindowBound(
              {.epsilon0 = eps0},
              {.n = 100000, .m = m, .p0 = p0, .delta = delta}));
          ExpectRel(p.epsilon, ToDouble(BigReplacement(Big(eps0), Big(m),
                                                       Big(p0), Big(delta))),
                    1e-12);
        }
      }
    }
  }
}

TEST(AccountantBigFloatTest, ShufflingMatchesHighPrecision) {
  for (double eps0 : {0.01, 0.2, 1.0, 3.0}) {
    for (int64_t n : {2, 50, 1000, 100000}) {
      for (double delta : {1e-9, 1e-6, 1e-2}) {
        ExpectRel(Must(SwapBound({.epsilon0 = eps0}, n, delta)).epsilon,
                  ToDouble(BigSwap(Big(eps0), Big(n), Big(delta))), 1e-12);
        ExpectRel(Must(ShuffleBoundOld({.epsilon0 = eps0}, n, delta)).epsilon,
                  ToDouble(BigShuffleOld(Big(eps0), Big(n), Big(delta))),
                  1e-12);
      }
    }
  }
}

TEST(AccountantTest, ZeroEpsilon0GivesZero) {
  const LocalSpec zero{.epsilon0 = 0};
  EXPECT_EQ(Must(ShuffleBoundNew(zero, 1000, 1e-6)).epsilon, 0.0);
  EXPECT_EQ(Must(ShuffleBoundOld(zero, 1000, 1e-6)).epsilon, 0.0);
  EXPECT_EQ(Must(FixedWindowBound(zero, {.n = 10, .m = 5})).epsilon, 0.0);
  EXPECT_EQ(Must(AvgBound(zero, {.n = 10, .m = 5})).epsilon, 0.0);
  EXPECT_EQ(Must(BinSgdBound(zero, {.ell = {4, 6}, .n = 10}, 1e-6)).epsilon,
            0.0);
}

TEST(AccountantTest, ZeroCheckInProbabilityGivesZero) {
  EXPECT_EQ(Must(FixedWindowBound({.epsilon0 = 2},
                                  {.n = 100, .m = 10, .p0 = 0}))
                .epsilon,
            0.0);
}

TEST(AccountantTest, FixedWindowMonotone) {
  const LocalSpec spec{.epsilon0 = 0.7};
  double prev = 0;
  for (double p0 : {0.1, 0.2, 0.5, 1.0}) {
    const double e =
        Must(FixedWindowBound(spec, {.n = 1000, .m = 100, .p0 = p0})).epsilon;
    EXPECT_GT(e, prev);
    prev = e;
  }
  prev = INFINITY;
  for (int64_t m : {10, 100, 1000, 10000}) {
    const double e =
        Must(FixedWindowBound(spec, {.n = 1000, .m = m, .p0 = 0.5})).epsilon;
    EXPECT_LT(e, prev);
    prev = e;
  }
  prev = 0;
  for (double eps0 : {0.1, 0.5, 1.0, 2.0}) {
    const double e = Must(FixedWindowBound({.epsilon0 = eps0},
                                           {.n = 1000, .m = 100, .p0 = 0.5}))
                         .epsilon;
    EXPECT_GT(e, prev);
    prev = e;
  }
}

TEST(AccountantTest, SwapDecreasesInN) {
  double prev = INFINITY;
  for (int64_t n : {10, 100, 1000, 10000, 100000}) {
    const double e = Must(SwapBound({.epsilon0 = 1}, n, 1e-6)).epsilon;
    EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(AccountantTest, NewShufflingBoundDominatesOld) {
  for (int64_t n : {1000, 10000, 100000}) {
    for (int k = 0; k < 60; ++k) {
      const double eps0 = 0.05 * std::pow(60.0, k / 59.0);
      const PrivacyPair fresh = Must(ShuffleBoundNew({.epsilon0 = eps0}, n, 1e-6));
      const PrivacyPair old = Must(ShuffleBoundOld({.epsilon0 = eps0}, n, 1e-6));
      if (fresh.vacuous && old.vacuous) continue;
      EXPECT_LT(fresh.epsilon, old.epsilon) << "eps0 " << eps0 << " n " << n;
    }
  }
}

TEST(AccountantTest, SimplifiedEnvelopesExact) {
  for (int t = 1; t <= 10; ++t) {
    const LocalSpec spec{.epsilon0 = 0.1 * t};
    for (double delta : {1e-6, 1e-4, 1e-2}) {
      for (int64_t m : {10, 100, 1000, 10000}) {
        for (double p0 : {0.01, 0.1, 1.0}) {
          const FixedWindowParams params{
              .n = 100000, .m = m, .p0 = p0, .delta = delta};
          EXPECT_LT(Must(FixedWindowBound(spec, params)).epsilon,
                    Must(FixedWindowSimplified(spec, params)).epsilon);
        }
      }
    }
  }
}

TEST(AccountantTest, SimplifiedRejectsOutsideItsRange) {
  EXPECT_EQ(FixedWindowSimplified({.epsilon0 = 1.5}, {.n = 10, .m = 10})
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(
      FixedWindowSimplified({.epsilon0 = 0.5}, {.n = 10, .m = 10, .delta = 0.1})
          .ok());
}

TEST(AccountantTest, ReductionIdentitiesAreExact) {
  for (double eps0 : {0.1, 0.9, 2.0}) {
    const LocalSpec spec{.epsilon0 = eps0};
    const PrivacyPair fixed =
        Must(FixedWindowBound(spec, {.n = 500, .m = 50, .p0 = 0.3}));
    const PrivacyPair rep = Must(ReplacementBound(spec, 50, 0.3, 1e-6));
    EXPECT_EQ(fixed.epsilon, rep.epsilon);
    EXPECT_EQ(Must(SlidingWindowBound(spec, 500, 50, 1e-6)).epsilon,
              Must(ReplacementBound(spec, 50, 1.0, 1e-6)).epsilon);
    EXPECT_EQ(Must(ShuffleBoundNew(spec, 500, 1e-6)).epsilon,
              Must(SwapBound(spec, 500, 1e-6)).epsilon);
  }
}

TEST(AccountantTest, HetDominatesKovOfItsSchedule) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> a_dist(0.01, 2.0);
  std::uniform_real_distribution<double> b_dist(0.01, 0.9);
  std::uniform_int_distribution<int64_t> k_dist(10, 1000);
  for (int t = 0; t < 100; ++t) {
    const double a = a_dist(rng);
    const double b = b_dist(rng);
    const int64_t k = k_dist(rng);
    const double het = Must(HetComposition(a, b, k, 1e-6)).epsilon;
    const double kov = Must(KovComposition({HetSchedule(a, b, k)}, 1e-6)).epsilon;
    EXPECT_GE(het, kov) << "a " << a << " b " << b << " k " << k;
  }
}

TEST(AccountantTest, HetScheduleMatchesDefinition) {
  const std::vector<double> s = HetSchedule(1.5, 0.5, 4);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_DOUBLE_EQ(s[0], std::log(1 + 1.5 / 4));
  EXPECT_DOUBLE_EQ(s[3], std::log(1 + 1.5 / 2.5));
}

TEST(AccountantTest, ReplacementScheduleIncreases) {
  const std::vector<double> s = ReplacementSchedule(1.0, 20, 0.5);
  ASSERT_EQ(s.size(), 20u);
  for (size_t i = 1; i < s.size(); ++i) EXPECT_GT(s[i], s[i - 1]);
  // Slot 1: log(1 + w e^x (e^x - 1) / (e^x m)).
  EXPECT_DOUBLE_EQ(s[0], std::log1p(0.5 * std::expm1(1.0) / 20));
}

TEST(AccountantTest, AdvancedCompositionSingleStep) {
  const PrivacyPair p = Must(AdvancedComposition({.epsilon = 0.2, .delta = 1e-8},
                                                 1, 1e-6));
  EXPECT_DOUBLE_EQ(p.epsilon, 0.2 * std::sqrt(2 * std::log(1e6)) +
                                  0.2 * std::expm1(0.2));
  EXPECT_DOUBLE_EQ(p.delta, 1e-8 + 1e-6);
}

TEST(AccountantTest, EpochScalesAsInverseRootN) {
  std::vector<double> xs, ys;
  for (int64_t n : {100000, 1000000, 10000000}) {
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(
        Must(EpochComposition({.epsilon0 = 0.5}, n, 1000, 1e-7, 1e-7))
            .epsilon));
  }
  const double slope = (ys[2] - ys[0]) / (xs[2] - xs[0]);
  EXPECT_THAT(slope, DoubleNear(-0.5, 0.05));
}

TEST(AccountantTest, EpochChecksItsConditions) {
  EXPECT_THAT(EpochComposition({.epsilon0 = 5}, 1000, 100, 1e-7, 1e-7)
                  .status()
                  .message(),
              HasSubstr("log(n / (8 sqrt(m)))"));
  EXPECT_FALSE(EpochComposition({.epsilon0 = 0.5}, 100, 1000, 1e-7, 1e-7).ok());
}

TEST(AccountantTest, ApproximateBranch) {
  const double delta1 = 1e-6;
  const double threshold = CheuDeltaThreshold(0.2, delta1).value();
  const LocalSpec spec{.epsilon0 = 0.2, .delta0 = threshold / 2};
  const PrivacyPair p = Must(SwapBound(spec, 100000, 1e-6, delta1));
  const PrivacyPair pure = Must(SwapBound({.epsilon0 = 1.6}, 100000, 1e-6));
  EXPECT_EQ(p.epsilon, pure.epsilon);
  EXPECT_DOUBLE_EQ(p.delta, 1e-6 + 100000 * (std::exp(p.epsilon) + 1) * delta1);
  EXPECT_EQ(p.vacuous, p.epsilon >= 1.6);

  EXPECT_FALSE(SwapBound(spec, 100, 1e-6).ok());  // delta1 missing
  EXPECT_FALSE(SwapBound({.epsilon0 = 0.2}, 100, 1e-6, delta1).ok());
  EXPECT_FALSE(
      SwapBound({.epsilon0 = 0.2, .delta0 = 2 * threshold}, 100, 1e-6, delta1)
          .ok());
}

TEST(AccountantTest, VacuousFlag) {
  EXPECT_TRUE(Must(ShuffleBoundNew({.epsilon0 = 3}, 1000, 1e-6)).vacuous);
  EXPECT_FALSE(Must(ShuffleBoundNew({.epsilon0 = 0.5}, 100000, 1e-6)).vacuous);
}

TEST(AccountantTest, RejectsInvalidInputs) {
  const LocalSpec spec{.epsilon0 = 1};
  EXPECT_FALSE(FixedWindowBound(spec, {.n = 0, .m = 1}).ok());
  EXPECT_FALSE(FixedWindowBound(spec, {.n = 1, .m = 1, .p0 = 1.5}).ok());
  EXPECT_FALSE(FixedWindowBound(spec, {.n = 1, .m = 1, .delta = 0}).ok());
  EXPECT_FALSE(FixedWindowBound({.epsilon0 = -1}, {.n = 1, .m = 1}).ok());
  EXPECT_FALSE(SlidingWindowBound(spec, 5, 6, 1e-6).ok());
  EXPECT_THAT(BinSgdBound(spec, {.ell = {1, 2}, .n = 4}, 1e-6).status().message(),
              HasSubstr("sum to 3"));
  EXPECT_FALSE(KovComposition({{}}, 1e-6).ok());
  EXPECT_FALSE(HetComposition(1, 1, 10, 1e-6).ok());
  EXPECT_FALSE(ShuffleBoundOld({.epsilon0 = 1, .delta0 = 1e-9}, 10, 1e-6).ok());
}

TEST(AccountantTest, BiasedSamplingRatioEndpoints) {
  EXPECT_DOUBLE_EQ(BiasedSamplingRatio(1.0, 0).value(), std::exp(1.0));
  EXPECT_EQ(BiasedSamplingRatio(1.0, 1).value(), 1.0);
  EXPECT_DOUBLE_EQ(BiasedSamplingRatio(1.0, 0.5).value(),
                   std::exp(1.0) / (1 + 0.5 * std::expm1(1.0)));
}

TEST(AccountantTest, PosteriorBoundsAtZeroEpsilonAreUniform) {
  for (int64_t i = 1; i <= 7; ++i) {
    EXPECT_DOUBLE_EQ(PosteriorBoundFixed(0, 7, i).value(), 1.0 / 7);
    EXPECT_DOUBLE_EQ(PosteriorBoundSwap(0, 7, i).value(), 1.0 / 7);
  }
  EXPECT_FALSE(PosteriorBoundFixed(1, 7, 8).ok());
  EXPECT_FALSE(PosteriorBoundSwap(1, 7, 0).ok());
}

TEST(AccountantTest, ExpectedDummies) {
  // (1 - 1/2)^2 * 2 = 0.5
  EXPECT_DOUBLE_EQ(ExpectedDummyFixed(2, 2, 1).value(), 0.5);
  EXPECT_EQ(ExpectedDummyFixed(10, 4, 0).value(), 4.0);
  for (double c : {1.0, 2.0, 3.0}) {
    EXPECT_LE(ExpectedDummyFixed(10000, 100, c * 100 / 10000).value(),
              100 * std::exp(-c));
  }
  EXPECT_LE(ExpectedDummySliding(2000, 50).value(), (2000 - 50 + 1) / M_E);
  EXPECT_DOUBLE_EQ(ExpectedDummySliding(3, 2).value(), 2 * 0.25);
}

TEST(AccountantTest, BinLoadBound) {
  EXPECT_DOUBLE_EQ(BinLoadL2Bound(100, 4, 1).value(), std::sqrt(100 + 2500.0));
  EXPECT_FALSE(BinLoadL2Bound(100, 4, 0).ok());
}

}  // namespace
}  // namespace rcdp
