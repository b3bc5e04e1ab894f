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

// Entity state derivation and three-category scoring for procedural text.
//
// A grid holds one entity's location before the process (index 0) and after
// each of the S steps. "-" means the entity does not exist, "?" that it
// exists at an unknown location; anything else is a location span.

#ifndef ORDSUP_ENTITY_TRACKING_H_
#define ORDSUP_ENTITY_TRACKING_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ordsup {

struct Location {
  enum class Kind { kNotExists, kUnknown, kSpan };
  Kind kind = Kind::kNotExists;
  std::string text;  // trimmed span text; empty unless kind == kSpan

  // "-", "?", or a span (trimmed). Throws InvalidArgument on blank text.
  static Location Parse(std::string_view raw);
  bool exists() const { return kind != Kind::kNotExists; }
  std::string ToString() const;
};

// Same kind, and for spans equal after trimming and ASCII case folding.
bool LocationsMatch(const Location& a, const Location& b);

struct EntityGrid {
  std::string procedure_id;
  std::string entity;
  std::vector<Location> locations;  // length S + 1 >= 2

  int steps() const { return static_cast<int>(locations.size()) - 1; }
};

enum class StepState { kCreated, kMoved, kDestroyed, kUnchanged };

std::string_view StepStateName(StepState s);

// One state per step s = 1..S from the pair (locations[s-1], locations[s]):
//   "-" -> exists   created
//   exists -> "-"   destroyed
//   exists -> exists with non-matching locations ("?" never matches a span)
//                   moved
//   otherwise       unchanged
std::vector<StepState> DeriveStates(const EntityGrid& grid);

struct CategoryScores {
  double cat1 = 0.0;
  double cat2 = 0.0;
  double cat3 = 0.0;
  double avg_cat = 0.0;
  double status = 0.0;
  double location = 0.0;
  long entities = 0;
};

// Scores predictions against gold, matched on (procedure_id, entity).
//   cat1      set of occurring transition kinds equals gold's
//   cat2      for each kind in gold, the steps where it occurs match
//   cat3      predicted location matches gold at every gold event step
//   status    per (entity, step): same derived state and same existence
//             after the step
//   location  per (entity, index 0..S): matching location
// Category accuracies are unweighted means over entities; status and
// location are pooled over all cells. Throws KeyMismatch when the key sets
// differ or a key repeats, LengthMismatch when a pair of grids differ in
// length, InvalidArgument for an empty gold set or a grid shorter than 2.
CategoryScores Score(const std::vector<EntityGrid>& gold,
                     const std::vector<EntityGrid>& pred);

nlohmann::ordered_json ScoresToJson(const CategoryScores& s);

// TSV rows: procedure_id, entity, loc_0 .. loc_S. A first row whose first
// column is "procedure_id" is treated as a header.
std::vector<EntityGrid> ReadGridsTsv(const std::string& path);
// JSONL: {"procedure_id", "entity", "locations": [str]}.
std::vector<EntityGrid> ReadGridsJsonl(const std::string& path);

}  // namespace ordsup

#endif  // ORDSUP_ENTITY_TRACKING_H_
