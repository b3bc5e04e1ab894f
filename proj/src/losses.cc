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

#include "ordsup/losses.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordsup/errors.h"

namespace ordsup {

namespace {

void CheckEqualLength(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw LengthMismatch(std::string(what) + ": lengths " + std::to_string(a) +
                         " and " + std::to_string(b) + " differ");
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double CosineScore(std::span<const double> h, std::span<const double> z) {
  CheckEqualLength(h.size(), z.size(), "cosine score");
  const double nh = std::sqrt(Dot(h, h));
  const double nz = std::sqrt(Dot(z, z));
  if (nh == 0.0 || nz == 0.0) return 0.0;
  return Dot(h, z) / (nh * nz);
}

CosineGrad CosineScoreWithGrad(std::span<const double> h,
                               std::span<const double> z) {
  CheckEqualLength(h.size(), z.size(), "cosine score");
  CosineGrad g;
  g.d_h.assign(h.size(), 0.0);
  g.d_z.assign(z.size(), 0.0);
  const double hh = Dot(h, h);
  const double zz = Dot(z, z);
  if (hh == 0.0 || zz == 0.0) return g;
  const double nh = std::sqrt(hh);
  const double nz = std::sqrt(zz);
  const double inv = 1.0 / (nh * nz);
  g.score = Dot(h, z) * inv;
  // d/dh <h,z>/(|h||z|) = z/(|h||z|) - score * h/|h|^2, symmetric in z.
  for (std::size_t i = 0; i < h.size(); ++i) {
    g.d_h[i] = z[i] * inv - g.score * h[i] / hh;
    g.d_z[i] = h[i] * inv - g.score * z[i] / zz;
  }
  return g;
}

LossGrad HingeRankLossFromScores(std::span<const double> scores,
                                 double margin) {
  const std::size_t m = scores.size();
  if (m < 2) throw InvalidArgument("hinge rank loss needs at least 2 targets");
  LossGrad out;
  out.grad.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double term = -scores[i] + scores[j] + margin;
      if (term > 0.0) {
        out.loss += term;
        out.grad[i] -= 1.0;
        out.grad[j] += 1.0;
      }
    }
  }
  return out;
}

HingeRankResult HingeRankLoss(std::span<const double> context,
                              const std::vector<std::vector<double>>& targets,
                              double margin) {
  if (targets.size() < 2) {
    throw InvalidArgument("hinge rank loss needs at least 2 targets");
  }
  std::vector<CosineGrad> cos;
  std::vector<double> scores;
  cos.reserve(targets.size());
  for (const auto& z : targets) {
    cos.push_back(CosineScoreWithGrad(context, z));
    scores.push_back(cos.back().score);
  }
  const LossGrad lg = HingeRankLossFromScores(scores, margin);

  HingeRankResult r;
  r.loss = lg.loss;
  r.grad_context.assign(context.size(), 0.0);
  r.grad_targets.resize(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const double ds = lg.grad[t];
    r.grad_targets[t].assign(context.size(), 0.0);
    if (ds == 0.0) continue;
    for (std::size_t k = 0; k < context.size(); ++k) {
      r.grad_context[k] += ds * cos[t].d_h[k];
      r.grad_targets[t][k] = ds * cos[t].d_z[k];
    }
  }
  return r;
}

LossGrad MseLoss(std::span<const double> pred, std::span<const double> target) {
  CheckEqualLength(pred.size(), target.size(), "mse loss");
  LossGrad out;
  const std::size_t n = pred.size();
  out.grad.assign(n, 0.0);
  if (n == 0) return out;
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = pred[i] - target[i];
    out.loss += diff * diff;
    out.grad[i] = 2.0 * diff * scale;
  }
  out.loss *= scale;
  return out;
}

LossGrad CrossEntropyLoss(std::span<const double> logits, int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= logits.size()) {
    throw LabelOutOfRange("label " + std::to_string(label) +
                          " outside 0.." +
                          std::to_string(static_cast<long>(logits.size()) - 1));
  }
  const double mx = *std::max_element(logits.begin(), logits.end());
  LossGrad out;
  out.grad.resize(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out.grad[i] = std::exp(logits[i] - mx);
    sum += out.grad[i];
  }
  out.loss = std::log(sum) - (logits[label] - mx);
  for (double& g : out.grad) g /= sum;
  out.grad[label] -= 1.0;
  return out;
}

}  // namespace ordsup
