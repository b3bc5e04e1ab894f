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

// Recipe corpus ingestion: one normalized JSON-Lines schema,
//
//   {"id": str, "title": str, "ingredients": [str], "steps": [str],
//    "source": str, "ingredients_prepended": bool (optional)}
//
// read as a stream so that multi-million-record corpora never sit in memory.

#ifndef ORDSUP_CORPUS_H_
#define ORDSUP_CORPUS_H_

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ordsup/errors.h"

namespace ordsup {

struct Recipe {
  std::string id;
  std::string title;
  std::vector<std::string> ingredients;
  std::vector<std::string> steps;
  std::string source;
  bool ingredients_prepended = false;

  int step_count() const { return static_cast<int>(steps.size()); }
  friend bool operator==(const Recipe&, const Recipe&) = default;
};

// Throws ParseError (line 0) on a schema violation: missing or mistyped
// field, empty step list, or a whitespace-only step.
Recipe RecipeFromJson(const nlohmann::json& j);
nlohmann::ordered_json RecipeToJson(const Recipe& r);
// Single compact JSON line, no trailing newline.
std::string RecipeToLine(const Recipe& r);

struct LineError {
  std::size_t line = 0;
  std::string message;
};

// Streaming JSONL reader. Malformed lines are collected with their 1-based
// line numbers and skipped; blank lines are ignored. A non-empty
// `source_tag` overrides the "source" field of every record.
class RecipeReader {
 public:
  // Throws IoError if the file cannot be opened.
  RecipeReader(const std::string& path, std::string source_tag = "");

  // Next valid record, or nullopt at end of file.
  std::optional<Recipe> Next();

  const std::vector<LineError>& errors() const { return errors_; }
  std::size_t skipped() const { return errors_.size(); }
  std::size_t lines_read() const { return line_no_; }

 private:
  std::ifstream in_;
  std::string path_;
  std::string source_tag_;
  std::size_t line_no_ = 0;
  std::vector<LineError> errors_;
};

struct LoadedCorpus {
  std::vector<Recipe> recipes;
  std::vector<LineError> errors;
};

// Reads a whole file; meant for tests and small corpora.
LoadedCorpus LoadCorpus(const std::string& path,
                        const std::string& source_tag = "");

// "Ingredients: a, b, c." inserted as the first step when ingredients are
// present and not already prepended.
std::string IngredientSentence(const std::vector<std::string>& ingredients);
Recipe PrependIngredientStep(Recipe r);

// True when the recipe has strictly more than `min_steps_exclusive` steps.
bool PassesMinSteps(const Recipe& r, int min_steps_exclusive);
std::vector<Recipe> FilterMinSteps(std::vector<Recipe> recipes,
                                   int min_steps_exclusive = 4);

bool HasStepCount(const Recipe& r, int n_steps);
std::vector<Recipe> SelectFixedStepSubset(std::vector<Recipe> recipes,
                                          int n_steps);

struct CorpusStats {
  int64_t recipe_count = 0;
  int64_t step_word_count = 0;
  int64_t ingredient_word_count = 0;
  std::map<int, int64_t> step_count_histogram;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Whitespace-token count.
int64_t CountWords(std::string_view text);

class StatsAccumulator {
 public:
  void Add(const Recipe& r);
  const CorpusStats& stats() const { return stats_; }

 private:
  CorpusStats stats_;
};

CorpusStats ComputeStats(const std::vector<Recipe>& recipes);
nlohmann::ordered_json StatsToJson(const CorpusStats& s);

}  // namespace ordsup

#endif  // ORDSUP_CORPUS_H_
