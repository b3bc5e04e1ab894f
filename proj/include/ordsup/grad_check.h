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

// Central finite-difference checks of the analytic loss gradients.

#ifndef ORDSUP_GRAD_CHECK_H_
#define ORDSUP_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace ordsup {

enum class LossKind { kMse, kCrossEntropy, kHinge };

std::string_view LossKindName(LossKind kind);
LossKind ParseLossKind(std::string_view name);

inline constexpr double kDefaultGradCheckEps = 1e-5;

// ||analytic - numeric||_2 / max(||analytic||_2, ||numeric||_2), or 0 when
// both are zero. Normwise, so components that cancel to exactly zero are
// judged against the gradient's scale rather than their own.
double RelativeError(std::span<const double> analytic,
                     std::span<const double> numeric);

// (f(x + eps e_i) - f(x - eps e_i)) / (2 eps) for every coordinate i.
std::vector<double> CentralDifference(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double eps);

struct GradCheckResult {
  double max_rel_error = 0.0;
  int trials = 0;
  int resampled = 0;  // hinge points rejected as too close to a kink
};

// Draws `trials` random inputs for the loss and compares analytic gradients
// against central differences. Hinge points with any |pairwise margin term|
// below 10 eps are redrawn.
GradCheckResult GradCheck(LossKind kind, int trials, uint64_t seed,
                          double eps = kDefaultGradCheckEps);

}  // namespace ordsup

#endif  // ORDSUP_GRAD_CHECK_H_
