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

// Training-example generators for the three order-supervision tasks.
//
// All randomness for the record at stream position k is drawn from
// Rng::Keyed(seed, k), so generating a stream in one pass, in batches, or in
// parallel yields the same examples.

#ifndef ORDSUP_TASK_GENERATION_H_
#define ORDSUP_TASK_GENERATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ordsup/corpus.h"
#include "ordsup/permutation_set.h"

namespace ordsup {

enum class EmbeddingKind { kLehmer, kHamming };

std::string_view EmbeddingKindName(EmbeddingKind kind);
EmbeddingKind ParseEmbeddingKind(std::string_view name);

struct PermClassExample {
  std::string recipe_id;
  std::vector<std::string> permuted_steps;
  int label = 0;
  std::string permset_ref;

  friend bool operator==(const PermClassExample&,
                         const PermClassExample&) = default;
};

struct EmbRegExample {
  std::string recipe_id;
  std::vector<std::string> permuted_steps;
  int label = 0;
  std::string permset_ref;
  std::vector<int> target;
  EmbeddingKind kind = EmbeddingKind::kLehmer;

  friend bool operator==(const EmbRegExample&, const EmbRegExample&) = default;
};

struct SkipClipTarget {
  int t = 0;  // 1-indexed position in the original recipe
  std::string text;

  friend bool operator==(const SkipClipTarget&,
                         const SkipClipTarget&) = default;
};

struct SkipClipExample {
  std::string recipe_id;
  std::vector<std::string> context_steps;
  std::vector<SkipClipTarget> targets;  // ascending by t

  friend bool operator==(const SkipClipExample&,
                         const SkipClipExample&) = default;
};

// Label drawn uniformly from [0, set_size) for stream position `position`.
int ChooseLabel(uint64_t seed, uint64_t position, int set_size);

// Throws StepCountMismatch (naming the recipe) when the recipe does not have
// exactly set.n_steps steps.
PermClassExample MakePermClassExample(const Recipe& recipe,
                                      const PermutationSet& set,
                                      uint64_t seed, uint64_t position,
                                      const std::string& permset_ref);
std::vector<PermClassExample> GenPermClass(const std::vector<Recipe>& recipes,
                                           const PermutationSet& set,
                                           uint64_t seed,
                                           const std::string& permset_ref);

// Same permutation choice as MakePermClassExample for equal (seed, position).
EmbRegExample MakeEmbRegExample(const Recipe& recipe, const PermutationSet& set,
                                EmbeddingKind kind, uint64_t seed,
                                uint64_t position,
                                const std::string& permset_ref);
std::vector<EmbRegExample> GenEmbReg(const std::vector<Recipe>& recipes,
                                     const PermutationSet& set,
                                     EmbeddingKind kind, uint64_t seed,
                                     const std::string& permset_ref);

inline constexpr int kDefaultContextSteps = 4;
inline constexpr int kDefaultTargetSteps = 4;

// Context is the first `context_steps` steps; `target_steps` distinct indices
// are drawn uniformly from the steps after the context and emitted in
// ascending order. Returns nullopt when the recipe is too short. Throws
// InvalidArgument for context_steps < 1 or target_steps < 2.
std::optional<SkipClipExample> MakeSkipClipExample(const Recipe& recipe,
                                                   int context_steps,
                                                   int target_steps,
                                                   uint64_t seed,
                                                   uint64_t position);

struct SkipClipBatch {
  std::vector<SkipClipExample> examples;
  std::size_t skipped = 0;
};
SkipClipBatch GenSkipClip(const std::vector<Recipe>& recipes,
                          int context_steps, int target_steps, uint64_t seed);

nlohmann::ordered_json ToJson(const PermClassExample& e);
nlohmann::ordered_json ToJson(const EmbRegExample& e);
nlohmann::ordered_json ToJson(const SkipClipExample& e);

// Throw SchemaMismatch on a record that does not fit the task schema.
PermClassExample PermClassExampleFromJson(const nlohmann::json& j);
EmbRegExample EmbRegExampleFromJson(const nlohmann::json& j);
SkipClipExample SkipClipExampleFromJson(const nlohmann::json& j);

}  // namespace ordsup

#endif  // ORDSUP_TASK_GENERATION_H_
