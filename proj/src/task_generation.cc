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

#include "ordsup/task_generation.h"

#include <algorithm>
#include <numeric>

#include "ordsup/rng.h"

namespace ordsup {

namespace {

void CheckStepCount(const Recipe& recipe, const PermutationSet& set) {
  if (recipe.step_count() != set.n_steps) {
    throw StepCountMismatch("recipe " + recipe.id + " has " +
                            std::to_string(recipe.step_count()) +
                            " steps, permutation set expects " +
                            std::to_string(set.n_steps));
  }
}

template <typename T>
T Field(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::string_view EmbeddingKindName(EmbeddingKind kind) {
  return kind == EmbeddingKind::kLehmer ? "lehmer" : "hamming";
}

EmbeddingKind ParseEmbeddingKind(std::string_view name) {
  if (name == "lehmer") return EmbeddingKind::kLehmer;
  if (name == "hamming") return EmbeddingKind::kHamming;
  throw SchemaMismatch("unknown embedding kind \"" + std::string(name) + "\"");
}

int ChooseLabel(uint64_t seed, uint64_t position, int set_size) {
  if (set_size < 1) throw InvalidArgument("empty permutation set");
  Rng rng = Rng::Keyed(seed, position);
  return static_cast<int>(rng.UniformIndex(static_cast<uint64_t>(set_size)));
}

PermClassExample MakePermClassExample(const Recipe& recipe,
                                      const PermutationSet& set,
                                      uint64_t seed, uint64_t position,
                                      const std::string& permset_ref) {
  CheckStepCount(recipe, set);
  PermClassExample e;
  e.recipe_id = recipe.id;
  e.label = ChooseLabel(seed, position, set.size());
  e.permuted_steps = ApplyPermutation(recipe.steps, set[e.label]);
  e.permset_ref = permset_ref;
  return e;
}

std::vector<PermClassExample> GenPermClass(const std::vector<Recipe>& recipes,
                                           const PermutationSet& set,
                                           uint64_t seed,
                                           const std::string& permset_ref) {
  std::vector<PermClassExample> out;
  out.reserve(recipes.size());
  for (std::size_t k = 0; k < recipes.size(); ++k) {
    out.push_back(MakePermClassExample(recipes[k], set, seed, k, permset_ref));
  }
  return out;
}

EmbRegExample MakeEmbRegExample(const Recipe& recipe, const PermutationSet& set,
                                EmbeddingKind kind, uint64_t seed,
                                uint64_t position,
                                const std::string& permset_ref) {
  PermClassExample base =
      MakePermClassExample(recipe, set, seed, position, permset_ref);
  EmbRegExample e;
  e.recipe_id = std::move(base.recipe_id);
  e.permuted_steps = std::move(base.permuted_steps);
  e.label = base.label;
  e.permset_ref = std::move(base.permset_ref);
  e.kind = kind;
  const Permutation& p = set[e.label];
  e.target = kind == EmbeddingKind::kLehmer ? LehmerEncode(p) : HammingEncode(p);
  return e;
}

std::vector<EmbRegExample> GenEmbReg(const std::vector<Recipe>& recipes,
                                     const PermutationSet& set,
                                     EmbeddingKind kind, uint64_t seed,
                                     const std::string& permset_ref) {
  std::vector<EmbRegExample> out;
  out.reserve(recipes.size());
  for (std::size_t k = 0; k < recipes.size(); ++k) {
    out.push_back(
        MakeEmbRegExample(recipes[k], set, kind, seed, k, permset_ref));
  }
  return out;
}

std::optional<SkipClipExample> MakeSkipClipExample(const Recipe& recipe,
                                                   int context_steps,
                                                   int target_steps,
                                                   uint64_t seed,
                                                   uint64_t position) {
  if (context_steps < 1) throw InvalidArgument("context size K must be >= 1");
  if (target_steps < 2) throw InvalidArgument("target count M must be >= 2");
  const int n = recipe.step_count();
  if (n - context_steps < target_steps) return std::nullopt;

  // Partial Fisher-Yates over the post-context indices K+1..N.
  std::vector<int> pool(n - context_steps);
  std::iota(pool.begin(), pool.end(), context_steps + 1);
  Rng rng = Rng::Keyed(seed, position);
  for (int i = 0; i < target_steps; ++i) {
    const auto j = i + rng.UniformIndex(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(target_steps);
  std::sort(pool.begin(), pool.end());

  SkipClipExample e;
  e.recipe_id = recipe.id;
  e.context_steps.assign(recipe.steps.begin(),
                         recipe.steps.begin() + context_steps);
  for (int t : pool) e.targets.push_back({t, recipe.steps[t - 1]});
  return e;
}

SkipClipBatch GenSkipClip(const std::vector<Recipe>& recipes,
                          int context_steps, int target_steps, uint64_t seed) {
  SkipClipBatch batch;
  for (std::size_t k = 0; k < recipes.size(); ++k) {
    auto e =
        MakeSkipClipExample(recipes[k], context_steps, target_steps, seed, k);
    if (e) {
      batch.examples.push_back(std::move(*e));
    } else {
      ++batch.skipped;
    }
  }
  return batch;
}

nlohmann::ordered_json ToJson(const PermClassExample& e) {
  nlohmann::ordered_json j;
  j["recipe_id"] = e.recipe_id;
  j["permuted_steps"] = e.permuted_steps;
  j["label"] = e.label;
  j["permset_ref"] = e.permset_ref;
  return j;
}

nlohmann::ordered_json ToJson(const EmbRegExample& e) {
  nlohmann::ordered_json j;
  j["recipe_id"] = e.recipe_id;
  j["permuted_steps"] = e.permuted_steps;
  j["label"] = e.label;
  j["permset_ref"] = e.permset_ref;
  j["target"] = e.target;
  j["kind"] = std::string(EmbeddingKindName(e.kind));
  return j;
}

nlohmann::ordered_json ToJson(const SkipClipExample& e) {
  nlohmann::ordered_json j;
  j["recipe_id"] = e.recipe_id;
  j["context_steps"] = e.context_steps;
  auto targets = nlohmann::ordered_json::array();
  for (const auto& t : e.targets) {
    nlohmann::ordered_json tj;
    tj["t"] = t.t;
    tj["text"] = t.text;
    targets.push_back(std::move(tj));
  }
  j["targets"] = std::move(targets);
  return j;
}

PermClassExample PermClassExampleFromJson(const nlohmann::json& j) {
  PermClassExample e;
  e.recipe_id = Field<std::string>(j, "recipe_id");
  e.permuted_steps = Field<std::vector<std::string>>(j, "permuted_steps");
  e.label = Field<int>(j, "label");
  e.permset_ref = Field<std::string>(j, "permset_ref");
  if (e.label < 0) throw SchemaMismatch("negative label");
  return e;
}

EmbRegExample EmbRegExampleFromJson(const nlohmann::json& j) {
  EmbRegExample e;
  e.recipe_id = Field<std::string>(j, "recipe_id");
  e.permuted_steps = Field<std::vector<std::string>>(j, "permuted_steps");
  e.label = Field<int>(j, "label");
  e.permset_ref = Field<std::string>(j, "permset_ref");
  e.target = Field<std::vector<int>>(j, "target");
  e.kind = ParseEmbeddingKind(Field<std::string>(j, "kind"));
  const std::size_t n = e.permuted_steps.size();
  const std::size_t want = e.kind == EmbeddingKind::kLehmer ? n : n * n;
  if (e.target.size() != want) {
    throw SchemaMismatch("target has " + std::to_string(e.target.size()) +
                         " entries, expected " + std::to_string(want));
  }
  return e;
}

SkipClipExample SkipClipExampleFromJson(const nlohmann::json& j) {
  SkipClipExample e;
  e.recipe_id = Field<std::string>(j, "recipe_id");
  e.context_steps = Field<std::vector<std::string>>(j, "context_steps");
  const auto targets = Field<nlohmann::json>(j, "targets");
  if (!targets.is_array()) throw SchemaMismatch("\"targets\" is not an array");
  for (const auto& t : targets) {
    e.targets.push_back({Field<int>(t, "t"), Field<std::string>(t, "text")});
  }
  if (e.context_steps.empty() || e.targets.size() < 2) {
    throw SchemaMismatch("skip-clip record needs K >= 1 and M >= 2");
  }
  const int k = static_cast<int>(e.context_steps.size());
  for (std::size_t i = 0; i < e.targets.size(); ++i) {
    if (e.targets[i].t <= k ||
        (i > 0 && e.targets[i].t <= e.targets[i - 1].t)) {
      throw SchemaMismatch("skip-clip targets must follow the context in "
                           "strictly ascending order");
    }
  }
  return e;
}

}  // namespace ordsup
