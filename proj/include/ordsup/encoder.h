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

// Hashed bag-of-words text encoder with one trainable projection.
//
// Text is lowercased (ASCII), split on whitespace, and every token is hashed
// with 64-bit FNV-1a into one of D buckets. The feature vector is the mean of
// the token one-hots; the encoding is that vector times the D x d projection.

#ifndef ORDSUP_ENCODER_H_
#define ORDSUP_ENCODER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordsup/kernels.h"

namespace ordsup {

inline constexpr int kDefaultFeatureDim = 1024;
inline constexpr int kDefaultEmbedDim = 64;

std::vector<std::string> Tokenize(std::string_view text);
uint64_t TokenHash(std::string_view token);

// Bucket indices in ascending order with their averaged weights.
struct SparseFeatures {
  std::vector<uint32_t> index;
  std::vector<double> weight;

  bool empty() const { return index.empty(); }
};

SparseFeatures HashFeatures(std::string_view text, int feature_dim);

struct EncoderModel {
  int feature_dim = kDefaultFeatureDim;
  int embed_dim = kDefaultEmbedDim;
  std::vector<double> projection;  // feature_dim x embed_dim, row-major

  // Entries uniform in [-sqrt(3), sqrt(3)] (unit variance).
  static EncoderModel Random(int feature_dim, int embed_dim, uint64_t seed);
  static EncoderModel Zero(int feature_dim, int embed_dim);

  std::vector<double> Encode(std::string_view text) const;
  std::vector<double> Encode(const SparseFeatures& features) const;
};

// Row r of the result (texts.size() x d, row-major) is Encode(texts[r]).
std::vector<double> EncodeBatch(
    const EncoderModel& model, std::span<const std::string> texts,
    kernels::Execution exec = kernels::Execution::kParallel);

}  // namespace ordsup

#endif  // ORDSUP_ENCODER_H_
