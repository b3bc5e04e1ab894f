// Copyright 2026 The ordsup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ordsup/grad_check.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordsup/errors.h"
#include "ordsup/losses.h"
#include "ordsup/rng.h"

namespace ordsup {

namespace {

std::vector<double> RandomVector(Rng& rng, std::size_t n, double lo,
                                 double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform(lo, hi);
  return v;
}

double CheckMse(Rng& rng, double eps) {
  const std::size_t n = 1 + rng.UniformIndex(8);
  const auto pred = RandomVector(rng, n, -2.0, 2.0);
  const auto target = RandomVector(rng, n, -2.0, 2.0);
  const auto analytic = MseLoss(pred, target).grad;
  const auto numeric = CentralDifference(
      [&](std::span<const double> x) { return MseLoss(x, target).loss; }, pred,
      eps);
  return RelativeError(analytic, numeric);
}

double CheckCrossEntropy(Rng& rng, double eps) {
  const std::size_t c = 2 + rng.UniformIndex(9);
  const auto logits = RandomVector(rng, c, -3.0, 3.0);
  const int label = static_cast<int>(rng.UniformIndex(c));
  const auto analytic = CrossEntropyLoss(logits, label).grad;
  const auto numeric = CentralDifference(
      [&](std::span<const double> x) { return CrossEntropyLoss(x, label).loss; },
      logits, eps);
  return RelativeError(analytic, numeric);
}

// Packs context and targets into one vector so a single central difference
// covers every input.
double CheckHinge(Rng& rng, double eps, int& resampled) {
  while (true) {
    const std::size_t d = 2 + rng.UniformIndex(7);
    const std::size_t m = 2 + rng.UniformIndex(5);
    const double margin = rng.Uniform(0.0, 0.3);
    std::vector<double> packed = RandomVector(rng, d * (m + 1), -1.0, 1.0);

    auto unpack = [&](std::span<const double> x, std::vector<double>& h,
                      std::vector<std::vector<double>>& z) {
      h.assign(x.begin(), x.begin() + d);
      z.assign(m, {});
      for (std::size_t t = 0; t < m; ++t) {
        z[t].assign(x.begin() + d * (t + 1), x.begin() + d * (t + 2));
      }
    };
    std::vector<double> h;
    std::vector<std::vector<double>> z;
    unpack(packed, h, z);

    std::vector<double> scores;
    for (const auto& zt : z) scores.push_back(CosineScore(h, zt));
    bool near_kink = false;
    for (std::size_t i = 0; i < m && !near_kink; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (std::abs(-scores[i] + scores[j] + margin) < 10.0 * eps) {
          near_kink = true;
          break;
        }
      }
    }
    if (near_kink) {
      ++resampled;
      continue;
    }

    const HingeRankResult r = HingeRankLoss(h, z, margin);
    std::vector<double> analytic(r.grad_context);
    for (const auto& g : r.grad_targets) {
      analytic.insert(analytic.end(), g.begin(), g.end());
    }
    const auto numeric = CentralDifference(
        [&](std::span<const double> x) {
          std::vector<double> hh;
          std::vector<std::vector<double>> zz;
          unpack(x, hh, zz);
          return HingeRankLoss(hh, zz, margin).loss;
        },
        packed, eps);
    return RelativeError(analytic, numeric);
  }
}

}  // namespace

std::string_view LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kMse:
      return "mse";
    case LossKind::kCrossEntropy:
      return "ce";
    case LossKind::kHinge:
      return "hinge";
  }
  return "unknown";
}

LossKind ParseLossKind(std::string_view name) {
  if (name == "mse") return LossKind::kMse;
  if (name == "ce" || name == "cross_entropy") return LossKind::kCrossEntropy;
  if (name == "hinge") return LossKind::kHinge;
  throw InvalidArgument("unknown loss \"" + std::string(name) + "\"");
}

double RelativeError(std::span<const double> analytic,
                     std::span<const double> numeric) {
  if (analytic.size() != numeric.size()) {
    throw LengthMismatch("gradient sizes differ");
  }
  double diff = 0.0, na = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double e = analytic[i] - numeric[i];
    diff += e * e;
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
  }
  const double denom = std::sqrt(std::max(na, nn));
  return denom == 0.0 ? 0.0 : std::sqrt(diff) / denom;
}

std::vector<double> CentralDifference(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double eps) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + eps;
    const double up = f(probe);
    probe[i] = orig - eps;
    const double down = f(probe);
    probe[i] = orig;
    out[i] = (up - down) / (2.0 * eps);
  }
  return out;
}

GradCheckResult GradCheck(LossKind kind, int trials, uint64_t seed,
                          double eps) {
  if (trials < 1) throw InvalidArgument("trials must be positive");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  Rng rng(seed);
  GradCheckResult res;
  res.trials = trials;
  for (int t = 0; t < trials; ++t) {
    double err = 0.0;
    switch (kind) {
      case LossKind::kMse:
        err = CheckMse(rng, eps);
        break;
      case LossKind::kCrossEntropy:
        err = CheckCrossEntropy(rng, eps);
        break;
      case LossKind::kHinge:
        err = CheckHinge(rng, eps, res.resampled);
        break;
    }
    res.max_rel_error = std::max(res.max_rel_error, err);
  }
  return res;
}

}  // namespace ordsup
