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

// Command-line entry point.
//
//   ordsup ingest    --in corpus.jsonl --out clean.jsonl [--prepend-ingredients]
//   ordsup permset   --n-steps 6 --size 100 --seed 1 --out set.json
//   ordsup gen       --task permclass --in clean.jsonl --permset set.json
//                    --seed 1 --out examples.jsonl
//   ordsup train     --task perm_class --examples examples.jsonl
//                    --permset set.json --seed 1 --out-model m.json
//                    --out-log log.jsonl
//   ordsup gradcheck --loss hinge --seed 1
//   ordsup score     --gold gold.tsv --pred pred.tsv
//
// Machine-readable summaries go to stdout, diagnostics to stderr. Exit codes:
// 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordsup/corpus.h"
#include "ordsup/entity_tracking.h"
#include "ordsup/grad_check.h"
#include "ordsup/io.h"
#include "ordsup/permutation_set.h"
#include "ordsup/synthetic.h"
#include "ordsup/task_generation.h"
#include "ordsup/trainer.h"

namespace {

using nlohmann::ordered_json;
using namespace ordsup;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

void PrintSummary(const ordered_json& j) { std::cout << j.dump() << '\n'; }

void WriteSidecar(const std::string& out, const ordered_json& meta) {
  WriteFileAtomic(out + ".meta.json", meta.dump(2) + "\n");
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
  std::string in;
  std::string out;
  std::string source;
  int min_steps = 4;
  bool prepend = false;
  std::optional<int> n_steps;
  std::string stats_out;
};

int RunIngest(const IngestOptions& o) {
  if (o.min_steps < 0) throw InvalidArgument("--min-steps must be >= 0");
  if (o.n_steps && *o.n_steps < 2) throw InvalidArgument("--n-steps must be >= 2");
  RecipeReader reader(o.in, o.source);
  AtomicWriter writer(o.out);
  StatsAccumulator stats;
  long read = 0, dropped_min = 0, dropped_subset = 0, written = 0;
  while (auto r = reader.Next()) {
    ++read;
    Recipe recipe = o.prepend ? PrependIngredientStep(std::move(*r))
                              : std::move(*r);
    if (!PassesMinSteps(recipe, o.min_steps)) {
      ++dropped_min;
      continue;
    }
    if (o.n_steps && !HasStepCount(recipe, *o.n_steps)) {
      ++dropped_subset;
      continue;
    }
    writer.stream() << RecipeToLine(recipe) << '\n';
    stats.Add(recipe);
    ++written;
  }
  for (const auto& e : reader.errors()) {
    std::cerr << o.in << ":" << e.line << ": skipped: " << e.message << '\n';
  }
  writer.Commit();

  ordered_json args;
  args["in"] = o.in;
  args["out"] = o.out;
  args["source"] = o.source;
  args["min_steps"] = o.min_steps;
  args["prepend_ingredients"] = o.prepend;
  args["n_steps"] = o.n_steps ? ordered_json(*o.n_steps) : ordered_json();
  const auto meta = MakeMetadata("ingest", args);
  WriteSidecar(o.out, meta);
  if (!o.stats_out.empty()) {
    auto sj = StatsToJson(stats.stats());
    sj["meta"] = meta;
    WriteFileAtomic(o.stats_out, sj.dump(2) + "\n");
  }

  ordered_json summary;
  summary["read"] = read;
  summary["malformed"] = reader.skipped();
  summary["dropped_min_steps"] = dropped_min;
  summary["dropped_step_count"] = dropped_subset;
  summary["written"] = written;
  summary["stats"] = StatsToJson(stats.stats());
  PrintSummary(summary);
  return kExitOk;
}

// --------------------------------------------------------------- permset

struct PermsetOptions {
  int n_steps = 6;
  int size = 100;
  uint64_t seed = 0;
  int64_t pool = kDefaultPoolSize;
  std::string out;
};

int RunPermset(const PermsetOptions& o) {
  const PermutationSet set =
      GenerateMaxHammingSet(o.n_steps, o.size, o.seed, o.pool);
  ordered_json args;
  args["n_steps"] = o.n_steps;
  args["size"] = o.size;
  args["seed"] = o.seed;
  args["pool"] = o.pool;
  args["out"] = o.out;
  WritePermutationSet(o.out, set, MakeMetadata("permset", args));

  ordered_json summary;
  summary["n_steps"] = set.n_steps;
  summary["set_size"] = set.size();
  summary["min_pairwise_hamming"] = MinPairwiseHamming(set.permutations);
  summary["fingerprint"] = Fingerprint(set);
  PrintSummary(summary);
  return kExitOk;
}

// ------------------------------------------------------------------- gen

struct GenOptions {
  std::string task;
  std::string in;
  std::string permset;
  int k = kDefaultContextSteps;
  int m = kDefaultTargetSteps;
  uint64_t seed = 0;
  int copies = 1;
  std::string out;
};

int RunGen(const GenOptions& o) {
  const bool skipclip = o.task == "skipclip";
  std::optional<EmbeddingKind> kind;
  if (o.task == "embreg-lehmer") kind = EmbeddingKind::kLehmer;
  if (o.task == "embreg-hamming") kind = EmbeddingKind::kHamming;
  if (o.copies < 1) throw InvalidArgument("--copies must be >= 1");
  if (skipclip && (o.k < 1 || o.m < 2)) {
    throw InvalidArgument("--K must be >= 1 and --M >= 2");
  }

  PermutationSet set;
  std::string ref;
  if (!skipclip) {
    if (o.permset.empty()) {
      throw InvalidArgument("--permset is required for task " + o.task);
    }
    set = ReadPermutationSet(o.permset);
    ref = Fingerprint(set);
  }

  RecipeReader reader(o.in);
  AtomicWriter writer(o.out);
  long records = 0, written = 0, mismatched = 0, infeasible = 0;
  while (auto r = reader.Next()) {
    const uint64_t record = static_cast<uint64_t>(records++);
    for (int c = 0; c < o.copies; ++c) {
      const uint64_t pos = record * static_cast<uint64_t>(o.copies) + c;
      if (skipclip) {
        auto e = MakeSkipClipExample(*r, o.k, o.m, o.seed, pos);
        if (!e) {
          ++infeasible;
          std::cerr << "recipe " << r->id << ": " << r->step_count()
                    << " steps cannot hold K=" << o.k << " and M=" << o.m
                    << ", skipped\n";
          break;
        }
        writer.stream() << ToJson(*e).dump() << '\n';
      } else {
        try {
          if (kind) {
            writer.stream()
                << ToJson(MakeEmbRegExample(*r, set, *kind, o.seed, pos, ref))
                       .dump()
                << '\n';
          } else {
            writer.stream()
                << ToJson(MakePermClassExample(*r, set, o.seed, pos, ref))
                       .dump()
                << '\n';
          }
        } catch (const StepCountMismatch& e) {
          ++mismatched;
          std::cerr << e.what() << ", skipped\n";
          break;
        }
      }
      ++written;
    }
  }
  for (const auto& e : reader.errors()) {
    std::cerr << o.in << ":" << e.line << ": skipped: " << e.message << '\n';
  }
  writer.Commit();

  ordered_json args;
  args["task"] = o.task;
  args["in"] = o.in;
  args["permset"] = o.permset;
  args["K"] = o.k;
  args["M"] = o.m;
  args["seed"] = o.seed;
  args["copies"] = o.copies;
  args["out"] = o.out;
  auto meta = MakeMetadata("gen", args);
  if (!skipclip) meta["permset_ref"] = ref;
  WriteSidecar(o.out, meta);

  ordered_json summary;
  summary["records"] = records;
  summary["written"] = written;
  summary["skipped_step_count"] = mismatched;
  summary["skipped_infeasible"] = infeasible;
  summary["malformed"] = reader.skipped();
  PrintSummary(summary);
  return kExitOk;
}

// ----------------------------------------------------------------- train

struct TrainOptions {
  std::string task;
  std::string examples;
  std::string config;
  std::string permset;
  uint64_t seed = 0;
  std::optional<double> lr;
  std::optional<int> epochs;
  std::optional<int> batch_size;
  std::optional<int> warmup;
  std::optional<double> weight_decay;
  std::optional<double> margin;
  std::string out_model;
  std::string out_log;
};

int RunTrain(const TrainOptions& o) {
  const TaskKind task = ParseTaskKind(o.task);
  TrainConfig cfg;
  if (!o.config.empty()) {
    try {
      cfg = ConfigFromJson(nlohmann::json::parse(ReadFile(o.config)));
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaMismatch(o.config + ": " + e.what());
    }
  }
  cfg.seed = o.seed;
  if (o.lr) cfg.learning_rate = *o.lr;
  if (o.epochs) cfg.epochs = *o.epochs;
  if (o.batch_size) cfg.batch_size = *o.batch_size;
  if (o.warmup) cfg.warmup_steps = *o.warmup;
  if (o.weight_decay) cfg.weight_decay = *o.weight_decay;
  if (o.margin) cfg.margin = *o.margin;
  cfg.Validate();

  int num_classes = 0;
  std::string ref;
  if (task == TaskKind::kPermClass) {
    if (o.permset.empty()) {
      throw InvalidArgument("--permset is required for perm_class training");
    }
    const PermutationSet set = ReadPermutationSet(o.permset);
    num_classes = set.size();
    ref = Fingerprint(set);
  } else if (task == TaskKind::kEmbReg && !o.permset.empty()) {
    ref = Fingerprint(ReadPermutationSet(o.permset));
  }

  JsonlExampleStream stream(o.examples, task, ref);
  const TrainResult result = Train(task, stream, cfg, num_classes);

  ordered_json args;
  args["task"] = std::string(TaskKindName(task));
  args["examples"] = o.examples;
  args["config"] = o.config;
  args["permset"] = o.permset;
  args["out_model"] = o.out_model;
  args["out_log"] = o.out_log;
  const auto meta = MakeMetadata("train", args);
  WriteCheckpoint(o.out_model, result.model, cfg, meta);
  if (!o.out_log.empty()) {
    WriteMetricsLog(o.out_log, result.log);
    WriteSidecar(o.out_log, meta);
  }

  ordered_json summary;
  summary["task"] = std::string(TaskKindName(task));
  summary["steps"] = result.log.size();
  summary["first_loss"] = result.log.front().loss;
  summary["last_loss"] = result.log.back().loss;
  summary["config"] = ConfigToJson(cfg);
  PrintSummary(summary);
  return kExitOk;
}

// ------------------------------------------------------------------ eval

struct EvalOptions {
  std::string model;
  std::string examples;
  std::string permset;
  double margin = 0.1;
};

int RunEval(const EvalOptions& o) {
  const Model model = ReadCheckpoint(o.model);
  std::string ref;
  if (!o.permset.empty()) ref = Fingerprint(ReadPermutationSet(o.permset));
  JsonlExampleStream stream(o.examples, model.task, ref);
  const EvalResult r = Evaluate(model, stream, o.margin);
  ordered_json summary;
  summary["task"] = std::string(TaskKindName(model.task));
  summary["count"] = r.count;
  summary["mean_loss"] = r.mean_loss;
  summary["accuracy"] = r.accuracy >= 0 ? ordered_json(r.accuracy)
                                        : ordered_json();
  PrintSummary(summary);
  return kExitOk;
}

// ------------------------------------------------------------- gradcheck

struct GradCheckOptions {
  std::string loss;
  int trials = 100;
  double eps = kDefaultGradCheckEps;
  double tol = 1e-4;
  uint64_t seed = 0;
};

int RunGradCheck(const GradCheckOptions& o) {
  const LossKind kind = ParseLossKind(o.loss);
  const GradCheckResult r = GradCheck(kind, o.trials, o.seed, o.eps);
  ordered_json summary;
  summary["loss"] = std::string(LossKindName(kind));
  summary["trials"] = r.trials;
  summary["eps"] = o.eps;
  summary["resampled"] = r.resampled;
  summary["max_rel_error"] = r.max_rel_error;
  summary["pass"] = r.max_rel_error < o.tol;
  PrintSummary(summary);
  if (r.max_rel_error >= o.tol) {
    std::cerr << "max relative error " << r.max_rel_error
              << " exceeds tolerance " << o.tol << '\n';
    return kExitData;
  }
  return kExitOk;
}

// ----------------------------------------------------------------- score

struct ScoreOptions {
  std::string gold;
  std::string pred;
  std::string format = "tsv";
};

int RunScore(const ScoreOptions& o) {
  auto read = [&](const std::string& path) {
    return o.format == "jsonl" ? ReadGridsJsonl(path) : ReadGridsTsv(path);
  };
  const auto gold = read(o.gold);
  const auto pred = read(o.pred);
  PrintSummary(ScoresToJson(Score(gold, pred)));
  return kExitOk;
}

// ----------------------------------------------------------------- synth

struct SynthOptions {
  int count = 2000;
  int n_steps = 6;
  uint64_t seed = 0;
  std::string out;
};

int RunSynth(const SynthOptions& o) {
  const auto recipes = MakeSyntheticRecipes(o.count, o.n_steps, o.seed);
  AtomicWriter writer(o.out);
  for (const auto& r : recipes) writer.stream() << RecipeToLine(r) << '\n';
  writer.Commit();
  ordered_json args;
  args["count"] = o.count;
  args["n_steps"] = o.n_steps;
  args["seed"] = o.seed;
  args["out"] = o.out;
  WriteSidecar(o.out, MakeMetadata("synth", args));
  ordered_json summary;
  summary["written"] = recipes.size();
  PrintSummary(summary);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-as-supervision pre-training toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "Validate, augment and filter a recipe JSONL corpus");
  ingest_cmd->add_option("--in", ingest.in, "Input recipe JSONL")->required();
  ingest_cmd->add_option("--out", ingest.out, "Output recipe JSONL")->required();
  ingest_cmd->add_option("--source", ingest.source,
                         "Source tag overriding each record's \"source\"");
  ingest_cmd->add_option("--min-steps", ingest.min_steps,
                         "Keep recipes with strictly more steps than this")
      ->capture_default_str();
  ingest_cmd->add_flag("--prepend-ingredients", ingest.prepend,
                       "Insert the ingredient sentence as the first step");
  ingest_cmd->add_option("--n-steps", ingest.n_steps,
                         "Keep only recipes with exactly this many steps");
  ingest_cmd->add_option("--stats-out", ingest.stats_out,
                         "Write corpus statistics JSON here");

  PermsetOptions permset;
  auto* permset_cmd = app.add_subcommand(
      "permset", "Generate a greedy max-Hamming permutation set");
  permset_cmd->add_option("--n-steps", permset.n_steps)->capture_default_str();
  permset_cmd->add_option("--size", permset.size)->capture_default_str();
  permset_cmd->add_option("--seed", permset.seed)->required();
  permset_cmd->add_option("--pool", permset.pool,
                          "Candidates per iteration when n-steps > 8")
      ->capture_default_str();
  permset_cmd->add_option("--out", permset.out)->required();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate training examples");
  gen_cmd->add_option("--task", gen.task)
      ->required()
      ->check(CLI::IsMember(
          {"permclass", "embreg-lehmer", "embreg-hamming", "skipclip"}));
  gen_cmd->add_option("--in", gen.in, "Recipe JSONL")->required();
  gen_cmd->add_option("--permset", gen.permset, "Permutation-set JSON");
  gen_cmd->add_option("--K", gen.k, "Context steps (skipclip)")
      ->capture_default_str();
  gen_cmd->add_option("--M", gen.m, "Target steps (skipclip)")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--copies", gen.copies, "Examples per recipe")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out)->required();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train the reference model");
  train_cmd->add_option("--task", train.task)
      ->required()
      ->check(CLI::IsMember({"perm_class", "permclass", "emb_reg", "embreg",
                             "skip_clip", "skipclip"}));
  train_cmd->add_option("--examples", train.examples)->required();
  train_cmd->add_option("--config", train.config, "TrainConfig JSON");
  train_cmd->add_option("--permset", train.permset,
                        "Permutation set the labels index into");
  train_cmd->add_option("--seed", train.seed)->required();
  train_cmd->add_option("--lr", train.lr);
  train_cmd->add_option("--epochs", train.epochs);
  train_cmd->add_option("--batch-size", train.batch_size);
  train_cmd->add_option("--warmup", train.warmup);
  train_cmd->add_option("--weight-decay", train.weight_decay);
  train_cmd->add_option("--margin", train.margin);
  train_cmd->add_option("--out-model", train.out_model)->required();
  train_cmd->add_option("--out-log", train.out_log);

  EvalOptions eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Evaluate a checkpoint on example JSONL");
  eval_cmd->add_option("--model", eval.model)->required();
  eval_cmd->add_option("--examples", eval.examples)->required();
  eval_cmd->add_option("--permset", eval.permset);
  eval_cmd->add_option("--margin", eval.margin)->capture_default_str();

  GradCheckOptions gradcheck;
  auto* gradcheck_cmd = app.add_subcommand(
      "gradcheck", "Compare analytic and finite-difference gradients");
  gradcheck_cmd->add_option("--loss", gradcheck.loss)
      ->required()
      ->check(CLI::IsMember({"mse", "ce", "cross_entropy", "hinge"}));
  gradcheck_cmd->add_option("--trials", gradcheck.trials)
      ->capture_default_str();
  gradcheck_cmd->add_option("--eps", gradcheck.eps)->capture_default_str();
  gradcheck_cmd->add_option("--tol", gradcheck.tol)->capture_default_str();
  gradcheck_cmd->add_option("--seed", gradcheck.seed)->required();

  ScoreOptions score;
  auto* score_cmd =
      app.add_subcommand("score", "Score entity-tracking predictions");
  score_cmd->add_option("--gold", score.gold)->required();
  score_cmd->add_option("--pred", score.pred)->required();
  score_cmd->add_option("--format", score.format)
      ->check(CLI::IsMember({"tsv", "jsonl"}))
      ->capture_default_str();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Write a synthetic recipe corpus with position markers");
  synth_cmd->add_option("--count", synth.count)->capture_default_str();
  synth_cmd->add_option("--n-steps", synth.n_steps)->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed)->required();
  synth_cmd->add_option("--out", synth.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest_cmd) return RunIngest(ingest);
    if (*permset_cmd) return RunPermset(permset);
    if (*gen_cmd) return RunGen(gen);
    if (*train_cmd) return RunTrain(train);
    if (*eval_cmd) return RunEval(eval);
    if (*gradcheck_cmd) return RunGradCheck(gradcheck);
    if (*score_cmd) return RunScore(score);
    if (*synth_cmd) return RunSynth(synth);
  } catch (const ordsup::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
