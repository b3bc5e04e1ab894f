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

#include "ordsup/permutation_set.h"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <numeric>
#include <set>

#include "ordsup/io.h"
#include "ordsup/rng.h"

namespace ordsup {

namespace {

using Row = std::vector<uint8_t>;

Row ToRow(const Permutation& p) {
  Row r(p.size());
  for (int i = 1; i <= p.size(); ++i) r[i - 1] = static_cast<uint8_t>(p.at(i) - 1);
  return r;
}

Permutation FromRow(const uint8_t* row, int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = row[i] + 1;
  return Permutation::Validate(m);
}

Row RandomRow(int n, Rng& rng) {
  Row r(n);
  std::iota(r.begin(), r.end(), uint8_t{0});
  for (int i = n - 1; i > 0; --i) {
    std::swap(r[i], r[rng.UniformIndex(static_cast<uint64_t>(i) + 1)]);
  }
  return r;
}

void UpdateDistances(std::span<const uint8_t> candidates, int n,
                     std::span<const uint8_t> member, std::span<int> min_dist,
                     std::span<int64_t> sum_dist, kernels::Execution exec) {
  if (exec == kernels::Execution::kParallel) {
    kernels::UpdateDistancesParallel(candidates, n, member, min_dist, sum_dist);
  } else {
    kernels::UpdateDistancesSerial(candidates, n, member, min_dist, sum_dist);
  }
}

kernels::Selection SelectBest(std::span<const int> min_dist,
                              std::span<const int64_t> sum_dist,
                              std::span<const uint8_t> eligible,
                              kernels::Execution exec) {
  return exec == kernels::Execution::kParallel
             ? kernels::SelectBestParallel(min_dist, sum_dist, eligible)
             : kernels::SelectBestSerial(min_dist, sum_dist, eligible);
}

// Candidates are all n! rows in lexicographic order, so index order is the
// lexicographic tie-break.
std::vector<Permutation> SelectExhaustive(int n, int set_size, Rng& rng,
                                          kernels::Execution exec) {
  const std::size_t count = Factorial(n);
  Row flat(count * n);
  {
    Row r(n);
    std::iota(r.begin(), r.end(), uint8_t{0});
    std::size_t c = 0;
    do {
      std::copy(r.begin(), r.end(), flat.begin() + c * n);
      ++c;
    } while (std::next_permutation(r.begin(), r.end()));
  }
  std::vector<int> min_dist(count, INT_MAX);
  std::vector<int64_t> sum_dist(count, 0);
  std::vector<uint8_t> eligible(count, 1);

  std::vector<Permutation> chosen;
  std::size_t pick = rng.UniformIndex(count);
  while (true) {
    chosen.push_back(FromRow(flat.data() + pick * n, n));
    eligible[pick] = 0;
    if (static_cast<int>(chosen.size()) == set_size) break;
    UpdateDistances(flat, n,
                    std::span<const uint8_t>(flat.data() + pick * n, n),
                    min_dist, sum_dist, exec);
    pick = static_cast<std::size_t>(
        SelectBest(min_dist, sum_dist, eligible, exec).index);
  }
  return chosen;
}

// Each iteration scores a fresh pool of seeded uniform candidates against all
// members chosen so far. The pool is sorted and deduplicated first so that
// index order is again lexicographic.
std::vector<Permutation> SelectPooled(int n, int set_size, int64_t pool_size,
                                      Rng& rng, kernels::Execution exec) {
  std::vector<Row> members;
  std::set<Row> member_set;
  members.push_back(RandomRow(n, rng));
  member_set.insert(members.back());

  while (static_cast<int>(members.size()) < set_size) {
    std::vector<Row> pool;
    pool.reserve(pool_size);
    for (int64_t k = 0; k < pool_size; ++k) pool.push_back(RandomRow(n, rng));
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::erase_if(pool, [&](const Row& r) { return member_set.count(r) > 0; });
    if (pool.empty()) continue;

    const std::size_t count = pool.size();
    Row flat(count * n);
    for (std::size_t c = 0; c < count; ++c) {
      std::copy(pool[c].begin(), pool[c].end(), flat.begin() + c * n);
    }
    std::vector<int> min_dist(count, INT_MAX);
    std::vector<int64_t> sum_dist(count, 0);
    std::vector<uint8_t> eligible(count, 1);
    for (const Row& m : members) {
      UpdateDistances(flat, n, m, min_dist, sum_dist, exec);
    }
    const auto best = SelectBest(min_dist, sum_dist, eligible, exec);
    members.push_back(pool[best.index]);
    member_set.insert(members.back());
  }

  std::vector<Permutation> chosen;
  chosen.reserve(members.size());
  for (const Row& m : members) chosen.push_back(FromRow(m.data(), n));
  return chosen;
}

}  // namespace

std::optional<int> PermutationSet::IndexOf(const Permutation& p) const {
  for (std::size_t i = 0; i < permutations.size(); ++i) {
    if (permutations[i] == p) return static_cast<int>(i);
  }
  return std::nullopt;
}

PermutationSet GenerateMaxHammingSet(int n_steps, int set_size, uint64_t seed,
                                     int64_t pool_size,
                                     kernels::Execution exec) {
  if (n_steps < 2 || n_steps > 255) {
    throw InvalidArgument("n_steps must be in 2..255, got " +
                          std::to_string(n_steps));
  }
  if (set_size < 2) {
    throw InvalidArgument("set_size must be at least 2, got " +
                          std::to_string(set_size));
  }
  if (static_cast<uint64_t>(set_size) > Factorial(n_steps)) {
    throw SetSizeTooLarge("set_size " + std::to_string(set_size) +
                          " exceeds " + std::to_string(n_steps) +
                          "! = " + std::to_string(Factorial(n_steps)));
  }
  if (pool_size < set_size) {
    throw InvalidArgument("pool_size " + std::to_string(pool_size) +
                          " is smaller than set_size " +
                          std::to_string(set_size));
  }

  PermutationSet set;
  set.n_steps = n_steps;
  set.seed = seed;
  set.pool_size = pool_size;
  Rng rng(seed);
  set.permutations =
      n_steps <= kMaxExhaustiveSteps
          ? SelectExhaustive(n_steps, set_size, rng, exec)
          : SelectPooled(n_steps, set_size, pool_size, rng, exec);
  return set;
}

int MinPairwiseHamming(const std::vector<Permutation>& perms,
                       kernels::Execution exec) {
  if (perms.size() < 2) return 0;
  const int n = perms.front().size();
  Row flat;
  flat.reserve(perms.size() * n);
  for (const auto& p : perms) {
    if (p.size() != n) throw LengthMismatch("mixed permutation lengths");
    const Row r = ToRow(p);
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return exec == kernels::Execution::kParallel
             ? kernels::MinPairwiseHammingParallel(flat, n)
             : kernels::MinPairwiseHammingSerial(flat, n);
}

nlohmann::ordered_json PermutationSetToJson(const PermutationSet& set) {
  nlohmann::ordered_json j;
  j["n_steps"] = set.n_steps;
  j["set_size"] = set.size();
  j["seed"] = set.seed;
  j["pool_size"] = set.pool_size;
  auto perms = nlohmann::ordered_json::array();
  for (const auto& p : set.permutations) perms.push_back(p.mapping());
  j["permutations"] = std::move(perms);
  return j;
}

PermutationSet PermutationSetFromJson(const nlohmann::json& j) {
  PermutationSet set;
  try {
    set.n_steps = j.at("n_steps").get<int>();
    set.seed = j.at("seed").get<uint64_t>();
    set.pool_size = j.at("pool_size").get<int64_t>();
    const int declared = j.at("set_size").get<int>();
    for (const auto& row : j.at("permutations")) {
      set.permutations.push_back(
          Permutation::Validate(row.get<std::vector<int>>()));
    }
    if (declared != set.size()) {
      throw SchemaMismatch("set_size " + std::to_string(declared) +
                           " does not match " + std::to_string(set.size()) +
                           " listed permutations");
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("malformed permutation set: ") + e.what());
  } catch (const NotABijection& e) {
    throw SchemaMismatch(std::string("malformed permutation set: ") + e.what());
  }
  std::set<std::vector<int>> seen;
  for (const auto& p : set.permutations) {
    if (p.size() != set.n_steps) {
      throw SchemaMismatch("permutation " + p.ToString() + " does not have " +
                           std::to_string(set.n_steps) + " steps");
    }
    if (!seen.insert(p.mapping()).second) {
      throw SchemaMismatch("permutation " + p.ToString() + " listed twice");
    }
  }
  return set;
}

void WritePermutationSet(const std::string& path, const PermutationSet& set,
                         const nlohmann::ordered_json& meta) {
  auto j = PermutationSetToJson(set);
  if (!meta.is_null()) j["meta"] = meta;
  WriteFileAtomic(path, j.dump() + "\n");
}

PermutationSet ReadPermutationSet(const std::string& path) {
  const std::string text = ReadFile(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaMismatch(path + ": " + e.what());
  }
  return PermutationSetFromJson(j);
}

std::string Fingerprint(const PermutationSet& set) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(
                    Fnv1a64(PermutationSetToJson(set).dump())));
  return std::string("fnv1a64:") + buf;
}

}  // namespace ordsup
