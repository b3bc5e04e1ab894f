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

// Training losses with analytic gradients.

#ifndef ORDSUP_LOSSES_H_
#define ORDSUP_LOSSES_H_

#include <span>
#include <vector>

namespace ordsup {

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

// <h, z> / (|h| |z|), and 0 when either norm is 0. Throws LengthMismatch.
double CosineScore(std::span<const double> h, std::span<const double> z);

struct CosineGrad {
  double score = 0.0;
  std::vector<double> d_h;
  std::vector<double> d_z;
};
// Gradients are zero wherever the score is pinned to 0 by a zero norm.
CosineGrad CosineScoreWithGrad(std::span<const double> h,
                               std::span<const double> z);

// sum_{i<j} max(0, -s_i + s_j + margin) over scores listed in recipe order,
// with the subgradient w.r.t. each score (0 on inactive and kink terms).
// Throws InvalidArgument for fewer than two scores.
LossGrad HingeRankLossFromScores(std::span<const double> scores, double margin);

struct HingeRankResult {
  double loss = 0.0;
  std::vector<double> grad_context;
  std::vector<std::vector<double>> grad_targets;
};
// The pairwise hinge over cosine scores of the context against targets
// ordered as in the recipe.
HingeRankResult HingeRankLoss(std::span<const double> context,
                              const std::vector<std::vector<double>>& targets,
                              double margin);

// Mean of squared differences; gradient 2 (pred - target) / n.
LossGrad MseLoss(std::span<const double> pred, std::span<const double> target);

// -log softmax(logits)[label] with max subtraction; gradient softmax - onehot.
// Throws LabelOutOfRange.
LossGrad CrossEntropyLoss(std::span<const double> logits, int label);

}  // namespace ordsup

#endif  // ORDSUP_LOSSES_H_
