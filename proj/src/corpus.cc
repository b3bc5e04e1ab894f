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

#include "ordsup/corpus.h"

#include <algorithm>
#include <cctype>

namespace ordsup {

namespace {

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string RequireString(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(0, std::string("missing \"") + key + "\"");
  if (!it->is_string()) {
    throw ParseError(0, std::string("\"") + key + "\" is not a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> RequireStringList(const nlohmann::json& j,
                                           const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(0, std::string("missing \"") + key + "\"");
  if (!it->is_array()) {
    throw ParseError(0, std::string("\"") + key + "\" is not an array");
  }
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw ParseError(0, std::string("\"") + key +
                              "\" holds a non-string entry");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

Recipe RecipeFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError(0, "record is not a JSON object");
  Recipe r;
  r.id = RequireString(j, "id");
  r.title = RequireString(j, "title");
  r.ingredients = RequireStringList(j, "ingredients");
  r.steps = RequireStringList(j, "steps");
  r.source = RequireString(j, "source");
  if (auto it = j.find("ingredients_prepended"); it != j.end()) {
    if (!it->is_boolean()) {
      throw ParseError(0, "\"ingredients_prepended\" is not a boolean");
    }
    r.ingredients_prepended = it->get<bool>();
  }
  if (r.steps.empty()) throw ParseError(0, "recipe " + r.id + " has no steps");
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    if (IsBlank(r.steps[i])) {
      throw ParseError(0, "recipe " + r.id + " step " + std::to_string(i + 1) +
                              " is blank");
    }
  }
  return r;
}

nlohmann::ordered_json RecipeToJson(const Recipe& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["title"] = r.title;
  j["ingredients"] = r.ingredients;
  j["steps"] = r.steps;
  j["source"] = r.source;
  if (r.ingredients_prepended) j["ingredients_prepended"] = true;
  return j;
}

std::string RecipeToLine(const Recipe& r) { return RecipeToJson(r).dump(); }

RecipeReader::RecipeReader(const std::string& path, std::string source_tag)
    : in_(path, std::ios::binary),
      path_(path),
      source_tag_(std::move(source_tag)) {
  if (!in_) throw IoError("cannot open " + path);
}

std::optional<Recipe> RecipeReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) continue;
    try {
      Recipe r = RecipeFromJson(nlohmann::json::parse(line));
      if (!source_tag_.empty()) r.source = source_tag_;
      return r;
    } catch (const nlohmann::json::exception& e) {
      errors_.push_back({line_no_, e.what()});
    } catch (const ParseError& e) {
      errors_.push_back({line_no_, e.what()});
    }
  }
  if (in_.bad()) throw IoError("read error in " + path_);
  return std::nullopt;
}

LoadedCorpus LoadCorpus(const std::string& path,
                        const std::string& source_tag) {
  RecipeReader reader(path, source_tag);
  LoadedCorpus out;
  while (auto r = reader.Next()) out.recipes.push_back(std::move(*r));
  out.errors = reader.errors();
  return out;
}

std::string IngredientSentence(const std::vector<std::string>& ingredients) {
  std::string s = "Ingredients: ";
  for (std::size_t i = 0; i < ingredients.size(); ++i) {
    if (i) s += ", ";
    s += ingredients[i];
  }
  return s + ".";
}

Recipe PrependIngredientStep(Recipe r) {
  if (r.ingredients.empty() || r.ingredients_prepended) return r;
  r.steps.insert(r.steps.begin(), IngredientSentence(r.ingredients));
  r.ingredients_prepended = true;
  return r;
}

bool PassesMinSteps(const Recipe& r, int min_steps_exclusive) {
  return r.step_count() > min_steps_exclusive;
}

std::vector<Recipe> FilterMinSteps(std::vector<Recipe> recipes,
                                   int min_steps_exclusive) {
  if (min_steps_exclusive < 0) {
    throw InvalidArgument("min_steps_exclusive must be non-negative");
  }
  std::erase_if(recipes, [&](const Recipe& r) {
    return !PassesMinSteps(r, min_steps_exclusive);
  });
  return recipes;
}

bool HasStepCount(const Recipe& r, int n_steps) {
  return r.step_count() == n_steps;
}

std::vector<Recipe> SelectFixedStepSubset(std::vector<Recipe> recipes,
                                          int n_steps) {
  if (n_steps < 2) throw InvalidArgument("n_steps must be at least 2");
  std::erase_if(recipes,
                [&](const Recipe& r) { return !HasStepCount(r, n_steps); });
  return recipes;
}

int64_t CountWords(std::string_view text) {
  int64_t count = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = std::isspace(c);
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

void StatsAccumulator::Add(const Recipe& r) {
  ++stats_.recipe_count;
  // A prepended ingredient sentence is counted with the ingredients, not
  // with the steps.
  const std::size_t first = r.ingredients_prepended ? 1 : 0;
  for (std::size_t i = first; i < r.steps.size(); ++i) {
    stats_.step_word_count += CountWords(r.steps[i]);
  }
  for (const auto& ing : r.ingredients) {
    stats_.ingredient_word_count += CountWords(ing);
  }
  ++stats_.step_count_histogram[r.step_count()];
}

CorpusStats ComputeStats(const std::vector<Recipe>& recipes) {
  StatsAccumulator acc;
  for (const auto& r : recipes) acc.Add(r);
  return acc.stats();
}

nlohmann::ordered_json StatsToJson(const CorpusStats& s) {
  nlohmann::ordered_json j;
  j["recipe_count"] = s.recipe_count;
  j["step_word_count"] = s.step_word_count;
  j["ingredient_word_count"] = s.ingredient_word_count;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [steps, count] : s.step_count_histogram) {
    hist[std::to_string(steps)] = count;
  }
  j["step_count_histogram"] = std::move(hist);
  return j;
}

}  // namespace ordsup
