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

#include "rcdp/randomizers.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace rcdp {

uint64_t DeriveSeed(uint64_t base, uint64_t index) {
  uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

absl::StatusOr<DiscreteMechanism> DiscreteMechanism::Create(
    std::vector<std::vector<double>> table) {
  if (table.empty() || table.front().empty()) {
    return absl::InvalidArgumentError("mechanism table must be nonempty");
  }
  const size_t width = table.front().size();
  for (size_t x = 0; x < table.size(); ++x) {
    if (table[x].size() != width) {
      return absl::InvalidArgumentError(
          absl::StrFormat("row %d has %d outputs, expected %d", x,
                          table[x].size(), width));
    }
    double total = 0;
    for (double p : table[x]) {
      if (!(p >= 0) || !std::isfinite(p)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("row %d has an invalid probability %.17g", x, p));
      }
      total += p;
    }
    if (std::abs(total - 1) > 1e-12) {
      return absl::InvalidArgumentError(
          absl::StrFormat("row %d sums to %.17g", x, total));
    }
  }
  return DiscreteMechanism(std::move(table));
}

double DiscreteMechanism::MeasuredEpsilon() const {
  double worst = 0;
  for (int o = 0; o < num_outputs_; ++o) {
    for (const auto& row : table_) {
      for (const auto& other : table_) {
        if (row[o] == 0) continue;
        if (other[o] == 0) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::log(row[o] / other[o]));
      }
    }
  }
  return worst;
}

int DiscreteMechanism::Sample(int input, Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  const auto& row = table_[input];
  for (int o = 0; o + 1 < num_outputs_; ++o) {
    if (u < row[o]) return o;
    u -= row[o];
  }
  return num_outputs_ - 1;
}

absl::StatusOr<DiscreteMechanism> RandomizedResponse(double epsilon0) {
  if (!std::isfinite(epsilon0) || epsilon0 < 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon0 must be finite and nonnegative, got %.17g", epsilon0));
  }
  // e^x / (1 + e^x) and 1 / (1 + e^x) without overflow.
  const double flip = 1 / (1 + std::exp(epsilon0));
  const double keep = 1 - flip;
  return DiscreteMechanism::Create({{keep, flip}, {flip, keep}});
}

absl::Status ValidateRandomizer(const GradientRandomizer& r) {
  if (!(r.clip_norm > 0) || !std::isfinite(r.clip_norm)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("clip_norm must be positive, got %.17g", r.clip_norm));
  }
  if (!(r.noise_scale >= 0) || !std::isfinite(r.noise_scale)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "noise_scale must be nonnegative, got %.17g", r.noise_scale));
  }
  if (r.dimension < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("dimension must be positive, got %d", r.dimension));
  }
  return absl::OkStatus();
}

Eigen::VectorXd ClipToNorm(const Eigen::VectorXd& g, double clip_norm) {
  const double norm = g.norm();
  if (norm <= clip_norm) return g;
  return g * (clip_norm / norm);
}

absl::StatusOr<Eigen::VectorXd> PrivatizeGradient(const GradientRandomizer& r,
                                                  const Eigen::VectorXd& g,
                                                  Rng& rng) {
  if (absl::Status s = ValidateRandomizer(r); !s.ok()) return s;
  if (g.size() != r.dimension) {
    return absl::InvalidArgumentError(
        absl::StrFormat("gradient has dimension %d, randomizer expects %d",
                        g.size(), r.dimension));
  }
  Eigen::VectorXd out = ClipToNorm(g, r.clip_norm);
  if (r.noise_scale == 0) return out;
  switch (r.kind) {
    case NoiseKind::kGaussian: {
      std::normal_distribution<double> noise(0.0, r.noise_scale);
      for (Eigen::Index k = 0; k < out.size(); ++k) out[k] += noise(rng);
      break;
    }
    case NoiseKind::kLaplace: {
      // Difference of two exponentials is Laplace.
      std::exponential_distribution<double> tail(1.0 / r.noise_scale);
      for (Eigen::Index k = 0; k < out.size(); ++k) {
        const double a = tail(rng);
        out[k] += a - tail(rng);
      }
      break;
    }
  }
  return out;
}

absl::StatusOr<LocalSpec> GaussianLocalSpec(const GradientRandomizer& r,
                                            double delta0) {
  if (absl::Status s = ValidateRandomizer(r); !s.ok()) return s;
  if (r.kind != NoiseKind::kGaussian) {
    return absl::InvalidArgumentError("randomizer is not Gaussian");
  }
  if (!(delta0 > 0 && delta0 < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta0 must lie in (0, 1), got %.17g", delta0));
  }
  if (r.noise_scale == 0) {
    return absl::InvalidArgumentError("noise_scale = 0 gives no privacy");
  }
  const double sensitivity = 2 * r.clip_norm;
  const double eps0 =
      sensitivity / r.noise_scale * std::sqrt(2 * std::log(1.25 / delta0));
  if (eps0 > 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "classical Gaussian calibration needs eps0 <= 1, got %.17g", eps0));
  }
  return LocalSpec{.epsilon0 = eps0, .delta0 = delta0};
}

absl::StatusOr<double> LaplaceScaleFor(double clip_norm, int dimension,
                                       double epsilon0) {
  if (!(clip_norm > 0) || dimension < 1 || !(epsilon0 > 0)) {
    return absl::InvalidArgumentError(
        "Laplace calibration needs clip_norm > 0, dimension >= 1, eps0 > 0");
  }
  return 2 * clip_norm * std::sqrt(static_cast<double>(dimension)) / epsilon0;
}

absl::StatusOr<LocalSpec> LaplaceLocalSpec(const GradientRandomizer& r) {
  if (absl::Status s = ValidateRandomizer(r); !s.ok()) return s;
  if (r.kind != NoiseKind::kLaplace) {
    return absl::InvalidArgumentError("randomizer is not Laplace");
  }
  if (r.noise_scale == 0) {
    return absl::InvalidArgumentError("noise_scale = 0 gives no privacy");
  }
  return LocalSpec{.epsilon0 = 2 * r.clip_norm *
                               std::sqrt(static_cast<double>(r.dimension)) /
                               r.noise_scale,
                   .delta0 = 0};
}

}  // namespace rcdp
