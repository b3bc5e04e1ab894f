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


#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ordsup/corpus.h"
#include "ordsup/errors.h"
#include "ordsup/io.h"
#include "ordsup/rng.h"

namespace ordsup {
namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& name, const std::string& content)
      : path_((std::filesystem::temp_directory_path() / name).string()) {
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Recipe MakeRecipe(std::string id, int steps,
                  std::vector<std::string> ingredients = {}) {
  Recipe r;
  r.id = std::move(id);
  r.title = "t";
  r.ingredients = std::move(ingredients);
  for (int i = 0; i < steps; ++i) r.steps.push_back("step " + std::to_string(i));
  r.source = "test";
  return r;
}

const char* kGood =
    R"({"id":"a","title":"A","ingredients":["flour"],"steps":["Mix.","Bake."],"source":"x"})";

TEST_CASE("load a well-formed file") {
  const std::string content = std::string(kGood) + "\n" + kGood + "\n" +
                              kGood + "\n";
  TempFile f("ordsup_corpus_good.jsonl", content);
  const LoadedCorpus c = LoadCorpus(f.path());
  CHECK(c.recipes.size() == 3);
  CHECK(c.errors.empty());
  CHECK(c.recipes[0].steps == std::vector<std::string>{"Mix.", "Bake."});
}

TEST_CASE("malformed lines are reported with their line number") {
  const std::string content = std::string(kGood) + "\n{not json\n" + kGood +
                              "\n" +
                              R"({"id":"b","title":"B","ingredients":[],"steps":[" "],"source":"x"})" +
                              "\n";
  TempFile f("ordsup_corpus_bad.jsonl", content);
  const LoadedCorpus c = LoadCorpus(f.path());
  CHECK(c.recipes.size() == 2);
  REQUIRE(c.errors.size() == 2);
  CHECK(c.errors[0].line == 2);
  CHECK(c.errors[1].line == 4);
}

TEST_CASE("empty file and missing file") {
  TempFile f("ordsup_corpus_empty.jsonl", "");
  const LoadedCorpus c = LoadCorpus(f.path());
  CHECK(c.recipes.empty());
  CHECK(ComputeStats(c.recipes) == CorpusStats{});
  CHECK_THROWS_AS(LoadCorpus("/nonexistent/ordsup.jsonl"), IoError);
}

TEST_CASE("source tag overrides the record") {
  TempFile f("ordsup_corpus_src.jsonl", std::string(kGood) + "\n");
  CHECK(LoadCorpus(f.path(), "recipe1m").recipes[0].source == "recipe1m");
  CHECK(LoadCorpus(f.path()).recipes[0].source == "x");
}

TEST_CASE("record json round-trip") {
  const Recipe r = PrependIngredientStep(MakeRecipe("z", 3, {"egg"}));
  CHECK(RecipeFromJson(nlohmann::json::parse(RecipeToLine(r))) == r);
  CHECK_THROWS_AS(RecipeFromJson(nlohmann::json::parse(R"({"id":"q"})")),
                  ParseError);
}

TEST_CASE("prepend ingredient step") {
  Recipe r = MakeRecipe("p", 0, {"flour", "water"});
  r.steps = {"Mix.", "Bake."};
  const Recipe once = PrependIngredientStep(r);
  CHECK(once.steps == std::vector<std::string>{"Ingredients: flour, water.",
                                               "Mix.", "Bake."});
  CHECK(once.ingredients_prepended);
  CHECK(PrependIngredientStep(once) == once);
  const Recipe bare = MakeRecipe("q", 2);
  CHECK(PrependIngredientStep(bare).steps == bare.steps);
}

TEST_CASE("min-step filter boundary") {
  CHECK(PassesMinSteps(MakeRecipe("a", 5), 4));
  CHECK_FALSE(PassesMinSteps(MakeRecipe("a", 4), 4));
  CHECK(PassesMinSteps(MakeRecipe("a", 1), 0));
  CHECK_THROWS_AS(FilterMinSteps({}, -1), InvalidArgument);
}

TEST_CASE("fixed-step subset") {
  std::vector<Recipe> rs{MakeRecipe("a", 5), MakeRecipe("b", 6),
                         MakeRecipe("c", 7), MakeRecipe("d", 6)};
  const auto six = SelectFixedStepSubset(rs, 6);
  REQUIRE(six.size() == 2);
  CHECK(six[0].id == "b");
  CHECK(six[1].id == "d");
  CHECK(SelectFixedStepSubset(six, 6) == six);
  CHECK(SelectFixedStepSubset(rs, 20).empty());
  CHECK_THROWS_AS(SelectFixedStepSubset(rs, 1), InvalidArgument);
}

TEST_CASE("stats") {
  Recipe r = MakeRecipe("a", 0);
  r.steps = {"Mix well.", "Bake it now."};
  CHECK(ComputeStats({r}).step_word_count == 5);
  const CorpusStats s = ComputeStats({MakeRecipe("a", 5), MakeRecipe("b", 6)});
  CHECK(s.recipe_count == 2);
  CHECK(s.step_count_histogram == std::map<int, int64_t>{{5, 1}, {6, 1}});

  const Recipe aug =
      PrependIngredientStep(MakeRecipe("c", 2, {"two words", "x"}));
  const CorpusStats a = ComputeStats({aug});
  CHECK(a.step_word_count == 4);
  CHECK(a.step_count_histogram.at(3) == 1);
  CHECK(StatsToJson(a)["step_count_histogram"]["3"] == 1);
}

// --- properties -----------------------------------------------------------

std::vector<Recipe> RandomCorpus(uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<Recipe> out;
  for (int i = 0; i < count; ++i) {
    std::vector<std::string> ing;
    for (uint64_t k = rng.UniformIndex(4); k > 0; --k) ing.push_back("item");
    out.push_back(MakeRecipe("r" + std::to_string(i),
                             1 + static_cast<int>(rng.UniformIndex(9)), ing));
  }
  return out;
}

TEST_CASE("property: filter after prepend never grows and keeps order") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto corpus = RandomCorpus(seed, 60);
    std::vector<Recipe> augmented;
    for (const auto& r : corpus) augmented.push_back(PrependIngredientStep(r));
    const auto kept = FilterMinSteps(augmented, 4);
    CHECK(kept.size() <= corpus.size());
    std::size_t cursor = 0;
    for (const auto& r : kept) {
      while (cursor < augmented.size() && augmented[cursor].id != r.id) ++cursor;
      REQUIRE(cursor < augmented.size());
      ++cursor;
    }
    const CorpusStats all = ComputeStats(augmented);
    const CorpusStats sub = ComputeStats(kept);
    CHECK(sub.recipe_count <= all.recipe_count);
    CHECK(sub.step_word_count <= all.step_word_count);
    CHECK(sub.ingredient_word_count <= all.ingredient_word_count);
    for (const auto& [k, v] : sub.step_count_histogram) {
      CHECK(v <= all.step_count_histogram.at(k));
    }
    int64_t total = 0;
    for (const auto& [k, v] : all.step_count_histogram) total += v;
    CHECK(total == all.recipe_count);
  }
}

TEST_CASE("property: serialization is deterministic") {
  const auto corpus = RandomCorpus(3, 30);
  std::string a, b;
  for (const auto& r : corpus) a += RecipeToLine(r) + "\n";
  for (const auto& r : corpus) b += RecipeToLine(r) + "\n";
  CHECK(a == b);
  CHECK(Fnv1a64(a) == Fnv1a64(b));
}

}  // namespace
}  // namespace ordsup
