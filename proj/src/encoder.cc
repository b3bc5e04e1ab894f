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

#include "ordsup/encoder.h"

#include <cctype>
#include <cmath>
#include <map>

#include "ordsup/errors.h"
#include "ordsup/io.h"
#include "ordsup/rng.h"

namespace ordsup {

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

uint64_t TokenHash(std::string_view token) { return Fnv1a64(token); }

SparseFeatures HashFeatures(std::string_view text, int feature_dim) {
  const auto tokens = Tokenize(text);
  SparseFeatures f;
  if (tokens.empty()) return f;
  std::map<uint32_t, int> counts;
  for (const auto& t : tokens) {
    ++counts[static_cast<uint32_t>(TokenHash(t) %
                                   static_cast<uint64_t>(feature_dim))];
  }
  const double inv = 1.0 / static_cast<double>(tokens.size());
  for (const auto& [idx, c] : counts) {
    f.index.push_back(idx);
    f.weight.push_back(c * inv);
  }
  return f;
}

EncoderModel EncoderModel::Random(int feature_dim, int embed_dim,
                                  uint64_t seed) {
  EncoderModel m = Zero(feature_dim, embed_dim);
  Rng rng(seed);
  const double a = std::sqrt(3.0);
  for (double& w : m.projection) w = rng.Uniform(-a, a);
  return m;
}

EncoderModel EncoderModel::Zero(int feature_dim, int embed_dim) {
  if (feature_dim < 1 || embed_dim < 1) {
    throw InvalidArgument("encoder dimensions must be positive");
  }
  EncoderModel m;
  m.feature_dim = feature_dim;
  m.embed_dim = embed_dim;
  m.projection.assign(static_cast<std::size_t>(feature_dim) * embed_dim, 0.0);
  return m;
}

std::vector<double> EncoderModel::Encode(std::string_view text) const {
  return Encode(HashFeatures(text, feature_dim));
}

std::vector<double> EncoderModel::Encode(const SparseFeatures& features) const {
  std::vector<double> out(embed_dim, 0.0);
  for (std::size_t k = 0; k < features.index.size(); ++k) {
    const double w = features.weight[k];
    const double* row =
        projection.data() + static_cast<std::size_t>(features.index[k]) * embed_dim;
    for (int j = 0; j < embed_dim; ++j) out[j] += w * row[j];
  }
  return out;
}

std::vector<double> EncodeBatch(const EncoderModel& model,
                                std::span<const std::string> texts,
                                kernels::Execution exec) {
  kernels::SparseRows rows;
  for (const auto& t : texts) {
    const SparseFeatures f = HashFeatures(t, model.feature_dim);
    rows.columns.insert(rows.columns.end(), f.index.begin(), f.index.end());
    rows.weights.insert(rows.weights.end(), f.weight.begin(), f.weight.end());
    rows.offsets.push_back(rows.columns.size());
  }
  std::vector<double> out(texts.size() * model.embed_dim);
  if (exec == kernels::Execution::kParallel) {
    kernels::SparseTimesDenseParallel(rows, model.projection, model.embed_dim,
                                      out);
  } else {
    kernels::SparseTimesDenseSerial(rows, model.projection, model.embed_dim,
                                    out);
  }
  return out;
}

}  // namespace ordsup
