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

#ifndef ORDSUP_PERMUTATION_SET_H_
#define ORDSUP_PERMUTATION_SET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ordsup/kernels.h"
#include "ordsup/permutation.h"

namespace ordsup {

// Permutations up to this length are scored against the full symmetric
// group; longer ones against fresh seeded pools.
inline constexpr int kMaxExhaustiveSteps = 8;
inline constexpr int64_t kDefaultPoolSize = 10000;

// The index of a permutation in `permutations` is its classification label.
struct PermutationSet {
  int n_steps = 0;
  uint64_t seed = 0;
  int64_t pool_size = 0;
  std::vector<Permutation> permutations;

  int size() const { return static_cast<int>(permutations.size()); }
  const Permutation& operator[](int label) const {
    return permutations.at(label);
  }
  std::optional<int> IndexOf(const Permutation& p) const;
};

// Greedy max-min Hamming selection. The first member is drawn uniformly from
// the candidates; each later one maximizes its minimum distance to the
// members chosen so far, ties broken by larger total distance and then by the
// lexicographically smallest mapping.
//
// Throws SetSizeTooLarge when set_size > n_steps!, InvalidArgument when
// n_steps < 2, set_size < 2 or pool_size < set_size.
PermutationSet GenerateMaxHammingSet(
    int n_steps, int set_size, uint64_t seed,
    int64_t pool_size = kDefaultPoolSize,
    kernels::Execution exec = kernels::Execution::kParallel);

// Smallest Hamming distance between two members (0 for fewer than two).
int MinPairwiseHamming(const std::vector<Permutation>& perms,
                       kernels::Execution exec = kernels::Execution::kParallel);

// {n_steps, set_size, seed, pool_size, permutations}; 1-indexed mappings.
nlohmann::ordered_json PermutationSetToJson(const PermutationSet& set);
// Validates every mapping and the header fields; throws SchemaMismatch.
PermutationSet PermutationSetFromJson(const nlohmann::json& j);

// Writes the set with an optional "meta" provenance block.
void WritePermutationSet(const std::string& path, const PermutationSet& set,
                         const nlohmann::ordered_json& meta = nullptr);
PermutationSet ReadPermutationSet(const std::string& path);

// Content identifier ("fnv1a64:<hex>") over the canonical set JSON, meta
// excluded. Example files carry it so training can check it was handed the
// set the labels index into.
std::string Fingerprint(const PermutationSet& set);

}  // namespace ordsup

#endif  // ORDSUP_PERMUTATION_SET_H_
