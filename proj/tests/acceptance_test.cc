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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "ordsup/corpus.h"
#include "ordsup/entity_tracking.h"
#include "ordsup/grad_check.h"
#include "ordsup/io.h"
#include "ordsup/losses.h"
#include "ordsup/permutation.h"
#include "ordsup/permutation_set.h"
#include "ordsup/rng.h"
#include "ordsup/synthetic.h"
#include "ordsup/task_generation.h"
#include "ordsup/trainer.h"

namespace {

using namespace ordsup;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int Lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

// --------------------------------------------------------------------------

void EmbeddingFidelity(Outcome& o) {
  const Permutation p = Permutation::Validate({4, 3, 1, 2});
  o.Require(LehmerEncode(p) == std::vector<int>{0, 1, 2, 2}, "lehmer");
  o.Require(HammingEncode(p) == std::vector<int>{0, 0, 0, 1, 0, 0, 1, 0, 1, 0,
                                                 0, 0, 0, 1, 0, 0},
            "hamming");
  o.detail << "lehmer(4,3,1,2)=(0,1,2,2), hamming matches 16 entries";
}

bool LehmerInvariants(const std::vector<int>& l, int inversions) {
  if (l.empty() || l[0] != 0) return false;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] < 0 || l[i] > static_cast<int>(i)) return false;
  }
  return std::accumulate(l.begin(), l.end(), 0) == inversions;
}

bool HammingInvariants(const std::vector<int>& h, int n) {
  if (static_cast<int>(h.size()) != n * n) return false;
  std::vector<int> col(n, 0);
  for (int b = 0; b < n; ++b) {
    int ones = 0;
    for (int k = 0; k < n; ++k) {
      const int v = h[b * n + k];
      if (v != 0 && v != 1) return false;
      ones += v;
      col[k] += v;
    }
    if (ones != 1) return false;
  }
  return std::all_of(col.begin(), col.end(), [](int c) { return c == 1; });
}

void CodecRoundTrip(Outcome& o) {
  const auto start = Clock::now();
  int count = 0;
  for (int n = 2; n <= 5; ++n) {
    for (const Permutation& p : AllPermutations(n)) {
      ++count;
      const auto l = LehmerEncode(p);
      const auto h = HammingEncode(p);
      o.Require(l == oracle::Lehmer(p.mapping()), "lehmer oracle " + p.ToString());
      o.Require(h == oracle::HammingEmbedding(p.mapping()),
                "hamming oracle " + p.ToString());
      o.Require(LehmerInvariants(l, oracle::KendallTau(
                                        Permutation::Identity(n).mapping(),
                                        p.mapping())),
                "lehmer invariants " + p.ToString());
      o.Require(HammingInvariants(h, n), "hamming invariants " + p.ToString());
      o.Require(LehmerDecode(l) == p, "lehmer round-trip " + p.ToString());
      o.Require(HammingDecode(h) == p, "hamming round-trip " + p.ToString());
    }
  }
  // 2!+3!+4!+5!; N = 1 is not a valid permutation length.
  o.Require(count == 152, "enumeration count");
  const double secs = Seconds(start);
  o.Require(secs < 1.0, "runtime");
  o.detail << count << " permutations (N=2..5), both codecs, " << secs << " s";
}

void DistanceIdentities(Outcome& o) {
  const auto start = Clock::now();
  int checked = 0;
  for (int n = 2; n <= 5; ++n) {
    const Permutation id = Permutation::Identity(n);
    for (const Permutation& p : AllPermutations(n)) {
      const auto l = LehmerEncode(p);
      const int sum = std::accumulate(l.begin(), l.end(), 0);
      o.Require(sum == KendallTauDistance(id, p), "lehmer sum " + p.ToString());
      o.Require(sum == oracle::KendallTau(id.mapping(), p.mapping()),
                "oracle tau " + p.ToString());
      ++checked;
    }
  }
  const auto all = AllPermutations(4);
  int pairs = 0;
  for (const auto& p : all) {
    for (const auto& q : all) {
      const double sq =
          oracle::SquaredDistance(HammingEncode(p), HammingEncode(q));
      o.Require(sq == 2.0 * HammingDistance(p, q),
                "hamming identity " + p.ToString() + q.ToString());
      o.Require(HammingDistance(p, q) == oracle::Hamming(p.mapping(), q.mapping()),
                "oracle hamming");
      ++pairs;
    }
  }
  const double secs = Seconds(start);
  o.Require(secs < 1.0, "runtime");
  o.detail << checked << " inversion identities, " << pairs
           << " N=4 pairs, " << secs << " s";
}

int MinPairwise(const std::vector<Permutation>& v) {
  int best = 1 << 30;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      best = std::min(best, oracle::Hamming(v[i].mapping(), v[j].mapping()));
    }
  }
  return best;
}

void GreedySetQuality(Outcome& o) {
  const PermutationSet small = GenerateMaxHammingSet(4, 4, 1);
  const int greedy = MinPairwise(small.permutations);
  const auto all = AllPermutations(4);
  Rng rng(1);
  int best_random = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < 4; ++i) {
      std::swap(idx[i], idx[i + rng.UniformIndex(idx.size() - i)]);
    }
    std::vector<Permutation> subset;
    for (std::size_t i = 0; i < 4; ++i) subset.push_back(all[idx[i]]);
    best_random = std::max(best_random, MinPairwise(subset));
  }
  o.Require(greedy >= best_random, "greedy min distance below random");

  const auto start = Clock::now();
  const PermutationSet a = GenerateMaxHammingSet(6, 100, 42);
  const double secs = Seconds(start);
  const PermutationSet b = GenerateMaxHammingSet(6, 100, 42);
  const std::set<Permutation> distinct(a.permutations.begin(),
                                       a.permutations.end());
  o.Require(secs < 60.0, "N=6 runtime");
  o.Require(distinct.size() == 100, "distinct members");
  o.Require(PermutationSetToJson(a).dump() == PermutationSetToJson(b).dump(),
            "byte-identical rerun");
  o.detail << "N=4 greedy min d_H " << greedy << " >= best random "
           << best_random << "; N=6 x100 in " << secs << " s, "
           << distinct.size() << " distinct, min d_H "
           << MinPairwiseHamming(a.permutations) << ", rerun identical";
}

void LossOracles(Outcome& o) {
  Rng rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + rng.UniformIndex(16);
    const std::size_t m = 2 + rng.UniformIndex(5);
    const double margin = rng.Uniform(0.0, 0.5);
    std::vector<double> h(d);
    for (double& x : h) x = rng.Uniform(-1.0, 1.0);
    std::vector<std::vector<double>> z(m, std::vector<double>(d));
    std::vector<double> s;
    for (auto& zt : z) {
      for (double& x : zt) x = rng.Uniform(-1.0, 1.0);
      s.push_back(oracle::Cosine(h, zt));
    }
    worst = std::max(worst, std::abs(HingeRankLoss(h, z, margin).loss -
                                     oracle::HingeBruteForce(s, margin)));
  }
  o.Require(worst <= 1e-12, "brute-force agreement");
  const std::vector<double> pair{0.1, 0.5};
  const double hand = HingeRankLossFromScores(pair, 0.1).loss;
  o.Require(hand == 0.5, "single pair");
  o.detail << "1000 instances, max |diff| " << worst
           << "; single pair = " << hand;
}

void GradientChecks(Outcome& o) {
  const auto start = Clock::now();
  for (auto kind : {LossKind::kMse, LossKind::kCrossEntropy, LossKind::kHinge}) {
    const GradCheckResult r = GradCheck(kind, 100, 1);
    o.Require(r.max_rel_error < 1e-4, std::string(LossKindName(kind)));
    o.detail << LossKindName(kind) << " " << r.max_rel_error;
    if (kind == LossKind::kHinge) o.detail << " (" << r.resampled << " resampled)";
    o.detail << ", ";
  }
  o.detail << "100 points each, " << Seconds(start) << " s";
}

void Learnability(Outcome& o) {
  const auto start = Clock::now();
  const auto recipes = MakeSyntheticRecipes(2000, 6, 7);
  const PermutationSet set = GenerateMaxHammingSet(6, 10, 7);
  const auto examples = GenPermClass(recipes, set, 7, "");
  std::vector<Example> train, held_out;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    (i < 1600 ? train : held_out).emplace_back(examples[i]);
  }
  VectorExampleStream train_stream(train), test_stream(held_out);
  TrainConfig cfg;  // defaults, one epoch
  cfg.seed = 7;
  const TrainResult r = Train(TaskKind::kPermClass, train_stream, cfg, 10);
  const EvalResult e = Evaluate(r.model, test_stream, cfg.margin);
  const double secs = Seconds(start);
  o.Require(e.accuracy >= 0.8, "held-out accuracy");
  o.Require(secs < 300.0, "runtime");
  o.detail << "held-out accuracy " << e.accuracy << " on " << e.count
           << " (chance 0.1), " << r.log.size() << " steps, " << secs << " s";
}

void ScorerFidelity(Outcome& o) {
  const std::string data = ORDSUP_TEST_DATA;
  const auto gold = ReadGridsTsv(data + "/flower_gold.tsv");
  const CategoryScores same =
      Score(gold, ReadGridsTsv(data + "/flower_exact.tsv"));
  for (double v : {same.cat1, same.cat2, same.cat3, same.avg_cat, same.status,
                   same.location}) {
    o.Require(v == 1.0, "identical column");
  }
  const CategoryScores base =
      Score(gold, ReadGridsTsv(data + "/flower_baseline.tsv"));
  o.Require(std::abs(base.location - 5.0 / 7.0) < 1e-12, "location 5/7");
  o.Require(std::abs(base.status - 4.0 / 6.0) < 1e-12, "status 4/6");
  o.Require(base.cat1 == 0.0 && base.cat2 == 0.0, "cat1 = cat2 = 0");
  o.detail << "identical: all 1.0; baseline: location " << base.location
           << ", status " << base.status << ", cat1 " << base.cat1 << ", cat2 "
           << base.cat2;
}

int Shell(const std::string& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir + "' && '" + ORDSUP_CLI_PATH + "' " +
                          args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void PipelineDeterminism(Outcome& o) {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "ordsup_acceptance";
  fs::remove_all(root);
  const std::vector<std::string> steps{
      "synth --count 600 --n-steps 6 --seed 11 --out raw.jsonl",
      "ingest --in raw.jsonl --out clean.jsonl --prepend-ingredients "
      "--min-steps 4 --n-steps 7",
      "permset --n-steps 7 --size 20 --seed 11 --out set.json",
      "gen --task permclass --in clean.jsonl --permset set.json --seed 11 "
      "--out examples.jsonl",
      "train --task perm_class --examples examples.jsonl --permset set.json "
      "--seed 11 --lr 0.01 --warmup 5 --out-model model.json --out-log "
      "log.jsonl"};
  std::vector<std::string> dirs;
  for (const char* run : {"run_a", "run_b"}) {
    const fs::path d = root / run;
    fs::create_directories(d);
    dirs.push_back(d.string());
    for (const auto& s : steps) {
      const int rc = Shell(d.string(), s);
      o.Require(rc == 0, std::string(run) + ": " + s);
    }
  }
  if (o.pass) {
    for (const char* f : {"clean.jsonl", "set.json", "examples.jsonl",
                          "examples.jsonl.meta.json", "model.json",
                          "log.jsonl"}) {
      o.Require(ReadFile(dirs[0] + "/" + f) == ReadFile(dirs[1] + "/" + f),
                std::string(f) + " differs");
    }
    const std::string ex = ReadFile(dirs[0] + "/examples.jsonl");
    o.detail << Lines(ex) << " examples, checkpoint fnv1a64 " << std::hex
             << Fnv1a64(ReadFile(dirs[0] + "/model.json")) << std::dec
             << "; examples, checkpoint, log and set byte-identical";
  }
  fs::remove_all(root);
}

void SkipClipConstraints(Outcome& o) {
  std::vector<Recipe> recipes;
  for (int i = 0; i < 12500; ++i) {
    Recipe r;
    r.id = std::to_string(i);
    r.title = r.id;
    r.source = "acceptance";
    // Every fifth recipe has 6 steps: 4 context steps leave only 2 targets.
    const int n = i % 5 == 0 ? 6 : 8 + i % 8;
    for (int k = 1; k <= n; ++k) r.steps.push_back("step " + std::to_string(k));
    recipes.push_back(std::move(r));
  }
  const SkipClipBatch batch = GenSkipClip(recipes, 4, 4, 13);
  o.Require(batch.examples.size() == 10000, "10,000 examples");
  o.Require(batch.skipped == 2500, "skipped count");
  long violations = 0;
  for (const auto& e : batch.examples) {
    bool ok = e.targets.size() == 4 && e.context_steps.size() == 4 &&
              e.targets.front().t > 4;
    for (std::size_t i = 1; i < e.targets.size(); ++i) {
      ok = ok && e.targets[i].t > e.targets[i - 1].t;
    }
    violations += !ok;
  }
  o.Require(violations == 0, "ordering constraint");
  o.detail << batch.examples.size() << " examples, " << violations
           << " violations, " << batch.skipped << " infeasible skipped";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>>
      criteria{{"embedding fidelity", EmbeddingFidelity},
               {"codec exhaustive round-trip", CodecRoundTrip},
               {"distance identities", DistanceIdentities},
               {"greedy set quality", GreedySetQuality},
               {"loss oracles", LossOracles},
               {"gradient checks", GradientChecks},
               {"desk-scale learnability", Learnability},
               {"scorer fidelity", ScorerFidelity},
               {"pipeline determinism", PipelineDeterminism},
               {"skip-clip constraints", SkipClipConstraints}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". "
              << criteria[i].first << ": " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
