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

#include "ordsup/synthetic.h"

#include <array>
#include <string_view>

#include "ordsup/errors.h"
#include "ordsup/rng.h"

namespace ordsup {

namespace {

constexpr std::array<std::string_view, 12> kVerbs = {
    "mix", "stir", "bake", "chop", "whisk", "fold",
    "pour", "boil", "fry", "knead", "slice", "season"};
constexpr std::array<std::string_view, 16> kNouns = {
    "flour", "water", "eggs",   "butter", "sugar",  "onion",
    "garlic", "salt",  "pepper", "milk",   "dough",  "sauce",
    "rice",  "beans", "cheese", "tomato"};
constexpr std::array<std::string_view, 10> kFiller = {
    "the", "a", "well", "gently", "slowly", "then", "until", "with", "and",
    "in"};

template <std::size_t N>
std::string_view Pick(const std::array<std::string_view, N>& words, Rng& rng) {
  return words[rng.UniformIndex(N)];
}

}  // namespace

std::string PositionMarker(int step) {
  return "stepmark" + std::to_string(step);
}

std::vector<Recipe> MakeSyntheticRecipes(int count, int n_steps,
                                         uint64_t seed) {
  if (count < 0 || n_steps < 1) {
    throw InvalidArgument("synthetic corpus needs count >= 0, n_steps >= 1");
  }
  std::vector<Recipe> out;
  out.reserve(count);
  for (int r = 0; r < count; ++r) {
    Rng rng = Rng::Keyed(seed, static_cast<uint64_t>(r));
    Recipe recipe;
    recipe.id = "synth-" + std::to_string(r);
    recipe.title = "Synthetic dish " + std::to_string(r);
    recipe.source = "synthetic";
    const int n_ing = 2 + static_cast<int>(rng.UniformIndex(3));
    for (int i = 0; i < n_ing; ++i) {
      recipe.ingredients.emplace_back(Pick(kNouns, rng));
    }
    for (int k = 1; k <= n_steps; ++k) {
      std::string step(Pick(kVerbs, rng));
      step += ' ';
      step += Pick(kFiller, rng);
      step += ' ';
      step += Pick(kNouns, rng);
      const int extra = static_cast<int>(rng.UniformIndex(3));
      for (int e = 0; e < extra; ++e) {
        step += ' ';
        step += Pick(kFiller, rng);
      }
      step += ' ' + PositionMarker(k) + '.';
      recipe.steps.push_back(std::move(step));
    }
    out.push_back(std::move(recipe));
  }
  return out;
}

}  // namespace ordsup
