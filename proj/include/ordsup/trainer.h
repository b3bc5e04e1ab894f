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

// Desk-scale reference trainer for the three pre-training tasks.
//
// Model layout:
//   perm_class  logits = W [enc(s_1); ...; enc(s_N)] + b, cross-entropy
//   emb_reg     pred   = W [enc(s_1); ...; enc(s_N)] + b, MSE to the code
//   skip_clip   hinge rank loss over cos(enc(context), enc(target_i))
// where enc is the hashed-feature encoder. Per-slot encodings are
// concatenated so the head sees step order. The projection and W are
// trained with plain SGD, linear warmup and decoupled weight decay; the head
// starts at zero.

#ifndef ORDSUP_TRAINER_H_
#define ORDSUP_TRAINER_H_

#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ordsup/encoder.h"
#include "ordsup/task_generation.h"

namespace ordsup {

enum class TaskKind { kPermClass, kEmbReg, kSkipClip };

std::string_view TaskKindName(TaskKind task);
TaskKind ParseTaskKind(std::string_view name);

struct TrainConfig {
  int batch_size = 32;
  double learning_rate = 5e-5;
  double weight_decay = 0.01;
  int warmup_steps = 500;
  double margin = 0.1;
  int epochs = 1;
  uint64_t seed = 0;
  int feature_dim = kDefaultFeatureDim;
  int embed_dim = kDefaultEmbedDim;

  // Throws InvalidArgument on a non-positive size or a negative rate.
  void Validate() const;
};

nlohmann::ordered_json ConfigToJson(const TrainConfig& cfg);
// Fields present in `j` override those of `base`.
TrainConfig ConfigFromJson(const nlohmann::json& j, TrainConfig base = {});

using Example = std::variant<PermClassExample, EmbRegExample, SkipClipExample>;

TaskKind TaskOf(const Example& e);

// Resettable example source; training makes one pass per epoch.
class ExampleStream {
 public:
  virtual ~ExampleStream() = default;
  virtual void Reset() = 0;
  virtual std::optional<Example> Next() = 0;
};

class VectorExampleStream : public ExampleStream {
 public:
  explicit VectorExampleStream(std::vector<Example> examples)
      : examples_(std::move(examples)) {}
  void Reset() override { pos_ = 0; }
  std::optional<Example> Next() override {
    if (pos_ >= examples_.size()) return std::nullopt;
    return examples_[pos_++];
  }

 private:
  std::vector<Example> examples_;
  std::size_t pos_ = 0;
};

// Reads example JSONL for one task. Any malformed record is fatal
// (SchemaMismatch with its line number). When `expected_permset_ref` is
// non-empty every record must carry that reference.
class JsonlExampleStream : public ExampleStream {
 public:
  JsonlExampleStream(std::string path, TaskKind task,
                     std::string expected_permset_ref = "");
  void Reset() override;
  std::optional<Example> Next() override;

 private:
  std::string path_;
  TaskKind task_;
  std::string expected_ref_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

struct Model {
  TaskKind task = TaskKind::kPermClass;
  EncoderModel encoder;
  int n_steps = 0;     // input slots for the linear head
  int output_dim = 0;  // 0 for skip_clip
  std::vector<double> head_weight;  // output_dim x (n_steps * embed_dim)
  std::vector<double> head_bias;    // output_dim

  int head_input_dim() const { return n_steps * encoder.embed_dim; }

  friend bool operator==(const Model& a, const Model& b) {
    return a.task == b.task && a.n_steps == b.n_steps &&
           a.output_dim == b.output_dim &&
           a.encoder.feature_dim == b.encoder.feature_dim &&
           a.encoder.embed_dim == b.encoder.embed_dim &&
           a.encoder.projection == b.encoder.projection &&
           a.head_weight == b.head_weight && a.head_bias == b.head_bias;
  }
};

// Random projection from cfg.seed, zero head.
Model InitModel(TaskKind task, int n_steps, int output_dim,
                const TrainConfig& cfg);

struct Gradients {
  std::vector<double> projection;
  std::vector<double> head_weight;
  std::vector<double> head_bias;
};

// Mean loss over `batch`; when `grads` is non-null it receives the gradient
// of that mean w.r.t. every parameter. Throws SchemaMismatch when an example
// does not fit the model, LabelOutOfRange on a bad label.
double BatchLossAndGrad(const Model& model, std::span<const Example> batch,
                        double margin, Gradients* grads);

// Raw head outputs (logits or regression values) for one example.
std::vector<double> Forward(const Model& model,
                            const std::vector<std::string>& steps);

struct StepLog {
  long step = 0;
  double loss = 0.0;
  double lr = 0.0;
};

// Linear warmup from lr/warmup to lr over `warmup_steps`, constant after.
double LearningRateAt(const TrainConfig& cfg, long step);

struct TrainResult {
  Model model;
  std::vector<StepLog> log;
};

// `num_classes` is the permutation-set size for perm_class and ignored
// otherwise. Deterministic for a given config and stream. Throws
// NonFiniteLoss with the failing step.
TrainResult Train(TaskKind task, ExampleStream& examples,
                  const TrainConfig& cfg, int num_classes = 0);

struct EvalResult {
  long count = 0;
  double mean_loss = 0.0;
  // perm_class: argmax == label. skip_clip: fraction of ordered target pairs
  // scored in recipe order. emb_reg: unused (-1).
  double accuracy = -1.0;
};
EvalResult Evaluate(const Model& model, ExampleStream& examples,
                    double margin);

nlohmann::ordered_json ModelToJson(const Model& model, const TrainConfig& cfg,
                                   const nlohmann::ordered_json& meta = nullptr);
Model ModelFromJson(const nlohmann::json& j);
void WriteCheckpoint(const std::string& path, const Model& model,
                     const TrainConfig& cfg,
                     const nlohmann::ordered_json& meta = nullptr);
Model ReadCheckpoint(const std::string& path);

// {"step", "loss", "lr"} per line.
void WriteMetricsLog(const std::string& path, const std::vector<StepLog>& log);

}  // namespace ordsup

#endif  // ORDSUP_TRAINER_H_
