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

#include "ordsup/entity_tracking.h"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <utility>

#include "ordsup/errors.h"

namespace ordsup {

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

using Key = std::pair<std::string, std::string>;

std::string KeyString(const Key& k) {
  return "(" + k.first + ", " + k.second + ")";
}

std::map<Key, const EntityGrid*> IndexGrids(const std::vector<EntityGrid>& grids,
                                            const char* side) {
  std::map<Key, const EntityGrid*> index;
  for (const auto& g : grids) {
    if (g.locations.size() < 2) {
      throw InvalidArgument(std::string(side) + " grid " +
                            KeyString({g.procedure_id, g.entity}) +
                            " needs at least 2 locations");
    }
    if (!index.emplace(Key{g.procedure_id, g.entity}, &g).second) {
      throw KeyMismatch(std::string(side) + " repeats entity " +
                        KeyString({g.procedure_id, g.entity}));
    }
  }
  return index;
}

// Step indices (1-based) per transition kind other than unchanged.
std::map<StepState, std::set<int>> Events(const std::vector<StepState>& s) {
  std::map<StepState, std::set<int>> ev;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != StepState::kUnchanged) ev[s[i]].insert(static_cast<int>(i) + 1);
  }
  return ev;
}

EntityGrid GridFromFields(std::string procedure_id, std::string entity,
                          const std::vector<std::string>& raw,
                          const std::string& where) {
  if (raw.size() < 2) {
    throw InvalidArgument(where + ": need at least 2 location columns");
  }
  EntityGrid g;
  g.procedure_id = std::move(procedure_id);
  g.entity = std::move(entity);
  for (const auto& r : raw) {
    try {
      g.locations.push_back(Location::Parse(r));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + ": " + e.what());
    }
  }
  return g;
}

}  // namespace

Location Location::Parse(std::string_view raw) {
  const std::string t = Trim(raw);
  if (t == "-") return {Kind::kNotExists, ""};
  if (t == "?") return {Kind::kUnknown, ""};
  if (t.empty()) throw InvalidArgument("blank location value");
  return {Kind::kSpan, t};
}

std::string Location::ToString() const {
  switch (kind) {
    case Kind::kNotExists:
      return "-";
    case Kind::kUnknown:
      return "?";
    case Kind::kSpan:
      return text;
  }
  return text;
}

bool LocationsMatch(const Location& a, const Location& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != Location::Kind::kSpan) return true;
  return Fold(Trim(a.text)) == Fold(Trim(b.text));
}

std::string_view StepStateName(StepState s) {
  switch (s) {
    case StepState::kCreated:
      return "created";
    case StepState::kMoved:
      return "moved";
    case StepState::kDestroyed:
      return "destroyed";
    case StepState::kUnchanged:
      return "unchanged";
  }
  return "unknown";
}

std::vector<StepState> DeriveStates(const EntityGrid& grid) {
  std::vector<StepState> states;
  for (std::size_t s = 1; s < grid.locations.size(); ++s) {
    const Location& before = grid.locations[s - 1];
    const Location& after = grid.locations[s];
    if (!before.exists() && after.exists()) {
      states.push_back(StepState::kCreated);
    } else if (before.exists() && !after.exists()) {
      states.push_back(StepState::kDestroyed);
    } else if (before.exists() && !LocationsMatch(before, after)) {
      states.push_back(StepState::kMoved);
    } else {
      states.push_back(StepState::kUnchanged);
    }
  }
  return states;
}

CategoryScores Score(const std::vector<EntityGrid>& gold,
                     const std::vector<EntityGrid>& pred) {
  if (gold.empty()) throw InvalidArgument("gold set is empty");
  const auto gold_index = IndexGrids(gold, "gold");
  const auto pred_index = IndexGrids(pred, "prediction");
  for (const auto& [key, g] : gold_index) {
    if (!pred_index.count(key)) {
      throw KeyMismatch("prediction is missing entity " + KeyString(key));
    }
  }
  for (const auto& [key, p] : pred_index) {
    if (!gold_index.count(key)) {
      throw KeyMismatch("prediction has entity " + KeyString(key) +
                        " absent from gold");
    }
  }

  CategoryScores sc;
  long status_hits = 0, status_cells = 0;
  long location_hits = 0, location_cells = 0;
  double cat1 = 0, cat2 = 0, cat3 = 0;
  for (const auto& [key, g] : gold_index) {
    const EntityGrid& p = *pred_index.at(key);
    if (p.locations.size() != g->locations.size()) {
      throw LengthMismatch("entity " + KeyString(key) + " has " +
                           std::to_string(g->locations.size()) +
                           " gold locations and " +
                           std::to_string(p.locations.size()) + " predicted");
    }
    const auto gs = DeriveStates(*g);
    const auto ps = DeriveStates(p);
    const auto gev = Events(gs);
    const auto pev = Events(ps);

    std::set<StepState> gkinds, pkinds;
    for (const auto& [k, steps] : gev) gkinds.insert(k);
    for (const auto& [k, steps] : pev) pkinds.insert(k);
    cat1 += gkinds == pkinds;

    bool steps_ok = true;
    for (const auto& [k, steps] : gev) {
      auto it = pev.find(k);
      if (it == pev.end() || it->second != steps) steps_ok = false;
    }
    cat2 += steps_ok;

    bool locs_ok = true;
    for (const auto& [k, steps] : gev) {
      for (int s : steps) {
        if (!LocationsMatch(g->locations[s], p.locations[s])) locs_ok = false;
      }
    }
    cat3 += locs_ok;

    for (std::size_t s = 0; s < gs.size(); ++s) {
      ++status_cells;
      status_hits += gs[s] == ps[s] && g->locations[s + 1].exists() ==
                                           p.locations[s + 1].exists();
    }
    for (std::size_t i = 0; i < g->locations.size(); ++i) {
      ++location_cells;
      location_hits += LocationsMatch(g->locations[i], p.locations[i]);
    }
  }

  const double n = static_cast<double>(gold_index.size());
  sc.entities = static_cast<long>(gold_index.size());
  sc.cat1 = cat1 / n;
  sc.cat2 = cat2 / n;
  sc.cat3 = cat3 / n;
  sc.avg_cat = (sc.cat1 + sc.cat2 + sc.cat3) / 3.0;
  sc.status = static_cast<double>(status_hits) / status_cells;
  sc.location = static_cast<double>(location_hits) / location_cells;
  return sc;
}

nlohmann::ordered_json ScoresToJson(const CategoryScores& s) {
  nlohmann::ordered_json j;
  j["cat1_acc"] = s.cat1;
  j["cat2_acc"] = s.cat2;
  j["cat3_acc"] = s.cat3;
  j["avg_cat_acc"] = s.avg_cat;
  j["status_acc"] = s.status;
  j["location_acc"] = s.location;
  j["entities"] = s.entities;
  return j;
}

std::vector<EntityGrid> ReadGridsTsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<EntityGrid> grids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (grids.empty() && line_no == 1 && Trim(cols[0]) == "procedure_id") {
      continue;
    }
    const std::string where = path + ":" + std::to_string(line_no);
    if (cols.size() < 4) {
      throw InvalidArgument(where + ": expected procedure_id, entity and at "
                                    "least 2 locations");
    }
    grids.push_back(GridFromFields(Trim(cols[0]), Trim(cols[1]),
                                   {cols.begin() + 2, cols.end()}, where));
  }
  return grids;
}

std::vector<EntityGrid> ReadGridsJsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<EntityGrid> grids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    try {
      const auto j = nlohmann::json::parse(line);
      grids.push_back(GridFromFields(
          j.at("procedure_id").get<std::string>(),
          j.at("entity").get<std::string>(),
          j.at("locations").get<std::vector<std::string>>(), where));
    } catch (const nlohmann::json::exception& e) {
      throw SchemaMismatch(where + ": " + e.what());
    }
  }
  return grids;
}

}  // namespace ordsup
