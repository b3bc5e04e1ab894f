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

#include "ordsup/trainer.h"

#include <algorithm>
#include <cmath>

#include "ordsup/io.h"
#include "ordsup/losses.h"

namespace ordsup {

namespace {

std::string JoinSteps(const std::vector<std::string>& steps) {
  std::string s;
  for (const auto& step : steps) {
    if (!s.empty()) s += ' ';
    s += step;
  }
  return s;
}

// dP[row(f)] += f.weight * upstream
void AccumulateProjection(const SparseFeatures& f,
                          std::span<const double> upstream, double scale,
                          int embed_dim, std::vector<double>& d_projection) {
  for (std::size_t k = 0; k < f.index.size(); ++k) {
    const double w = f.weight[k] * scale;
    double* row =
        d_projection.data() + static_cast<std::size_t>(f.index[k]) * embed_dim;
    for (int j = 0; j < embed_dim; ++j) row[j] += w * upstream[j];
  }
}

// W x + b for the linear head.
std::vector<double> HeadForward(const Model& m, std::span<const double> x) {
  const int in = m.head_input_dim();
  std::vector<double> out(m.head_bias);
  for (int o = 0; o < m.output_dim; ++o) {
    const double* w = m.head_weight.data() + static_cast<std::size_t>(o) * in;
    double s = 0.0;
    for (int k = 0; k < in; ++k) s += w[k] * x[k];
    out[o] += s;
  }
  return out;
}

void CheckSlots(const Model& m, const std::vector<std::string>& steps,
                const std::string& id) {
  if (static_cast<int>(steps.size()) != m.n_steps) {
    throw SchemaMismatch("example " + id + " has " +
                         std::to_string(steps.size()) +
                         " steps, model expects " + std::to_string(m.n_steps));
  }
}

struct HeadTarget {
  const std::vector<std::string>* steps;
  const std::string* id;
  int label = -1;                // perm_class
  std::vector<double> target;    // emb_reg
};

double HeadExampleLoss(const Model& m, const HeadTarget& ex, double scale,
                       Gradients* grads) {
  CheckSlots(m, *ex.steps, *ex.id);
  const int d = m.encoder.embed_dim;
  const std::vector<double> x = EncodeBatch(m.encoder, *ex.steps);
  const std::vector<double> out = HeadForward(m, x);

  LossGrad lg;
  if (m.task == TaskKind::kPermClass) {
    lg = CrossEntropyLoss(out, ex.label);
  } else {
    if (static_cast<int>(ex.target.size()) != m.output_dim) {
      throw SchemaMismatch("example " + *ex.id + " target has " +
                           std::to_string(ex.target.size()) +
                           " entries, model expects " +
                           std::to_string(m.output_dim));
    }
    lg = MseLoss(out, ex.target);
  }
  if (!grads) return lg.loss;

  const int in = m.head_input_dim();
  std::vector<double> dx(in, 0.0);
  for (int o = 0; o < m.output_dim; ++o) {
    const double g = lg.grad[o] * scale;
    if (g == 0.0) continue;
    grads->head_bias[o] += g;
    double* gw = grads->head_weight.data() + static_cast<std::size_t>(o) * in;
    const double* w = m.head_weight.data() + static_cast<std::size_t>(o) * in;
    for (int k = 0; k < in; ++k) {
      gw[k] += g * x[k];
      dx[k] += g * w[k];
    }
  }
  for (int slot = 0; slot < m.n_steps; ++slot) {
    const SparseFeatures f =
        HashFeatures((*ex.steps)[slot], m.encoder.feature_dim);
    AccumulateProjection(f, std::span<const double>(dx).subspan(slot * d, d),
                         1.0, d, grads->projection);
  }
  return lg.loss;
}

double SkipClipExampleLoss(const Model& m, const SkipClipExample& ex,
                           double margin, double scale, Gradients* grads) {
  const int d = m.encoder.embed_dim;
  const SparseFeatures fc =
      HashFeatures(JoinSteps(ex.context_steps), m.encoder.feature_dim);
  const std::vector<double> h = m.encoder.Encode(fc);
  std::vector<SparseFeatures> ft;
  std::vector<std::vector<double>> z;
  for (const auto& t : ex.targets) {
    ft.push_back(HashFeatures(t.text, m.encoder.feature_dim));
    z.push_back(m.encoder.Encode(ft.back()));
  }
  const HingeRankResult r = HingeRankLoss(h, z, margin);
  if (!grads) return r.loss;
  AccumulateProjection(fc, r.grad_context, scale, d, grads->projection);
  for (std::size_t t = 0; t < ft.size(); ++t) {
    AccumulateProjection(ft[t], r.grad_targets[t], scale, d,
                         grads->projection);
  }
  return r.loss;
}

double ExampleLoss(const Model& m, const Example& e, double margin,
                   double scale, Gradients* grads) {
  if (TaskOf(e) != m.task) {
    throw SchemaMismatch(std::string("example of task ") +
                         std::string(TaskKindName(TaskOf(e))) +
                         " given to a " + std::string(TaskKindName(m.task)) +
                         " model");
  }
  if (const auto* pc = std::get_if<PermClassExample>(&e)) {
    HeadTarget t{&pc->permuted_steps, &pc->recipe_id, pc->label, {}};
    return HeadExampleLoss(m, t, scale, grads);
  }
  if (const auto* er = std::get_if<EmbRegExample>(&e)) {
    HeadTarget t{&er->permuted_steps, &er->recipe_id, -1,
                 std::vector<double>(er->target.begin(), er->target.end())};
    return HeadExampleLoss(m, t, scale, grads);
  }
  return SkipClipExampleLoss(m, std::get<SkipClipExample>(e), margin, scale,
                             grads);
}

void ApplySgd(std::vector<double>& params, const std::vector<double>& grad,
              double lr, double decay) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i] -= lr * grad[i] + lr * decay * params[i];
  }
}

int SlotsOf(const Example& e) {
  if (const auto* pc = std::get_if<PermClassExample>(&e)) {
    return static_cast<int>(pc->permuted_steps.size());
  }
  if (const auto* er = std::get_if<EmbRegExample>(&e)) {
    return static_cast<int>(er->permuted_steps.size());
  }
  return 0;
}

template <typename T>
T JsonField(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::string_view TaskKindName(TaskKind task) {
  switch (task) {
    case TaskKind::kPermClass:
      return "perm_class";
    case TaskKind::kEmbReg:
      return "emb_reg";
    case TaskKind::kSkipClip:
      return "skip_clip";
  }
  return "unknown";
}

TaskKind ParseTaskKind(std::string_view name) {
  if (name == "perm_class" || name == "permclass") return TaskKind::kPermClass;
  if (name == "emb_reg" || name == "embreg") return TaskKind::kEmbReg;
  if (name == "skip_clip" || name == "skipclip") return TaskKind::kSkipClip;
  throw InvalidArgument("unknown task \"" + std::string(name) + "\"");
}

void TrainConfig::Validate() const {
  if (batch_size < 1) throw InvalidArgument("batch_size must be positive");
  if (epochs < 1) throw InvalidArgument("epochs must be positive");
  if (feature_dim < 1 || embed_dim < 1) {
    throw InvalidArgument("feature_dim and embed_dim must be positive");
  }
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("learning_rate must be finite and non-negative");
  }
  if (!(weight_decay >= 0.0)) {
    throw InvalidArgument("weight_decay must be non-negative");
  }
  if (warmup_steps < 0) throw InvalidArgument("warmup_steps must be >= 0");
  if (!(margin >= 0.0)) throw InvalidArgument("margin must be non-negative");
}

nlohmann::ordered_json ConfigToJson(const TrainConfig& cfg) {
  nlohmann::ordered_json j;
  j["batch_size"] = cfg.batch_size;
  j["learning_rate"] = cfg.learning_rate;
  j["weight_decay"] = cfg.weight_decay;
  j["warmup_steps"] = cfg.warmup_steps;
  j["margin"] = cfg.margin;
  j["epochs"] = cfg.epochs;
  j["seed"] = cfg.seed;
  j["feature_dim"] = cfg.feature_dim;
  j["embed_dim"] = cfg.embed_dim;
  return j;
}

TrainConfig ConfigFromJson(const nlohmann::json& j, TrainConfig base) {
  if (!j.is_object()) throw SchemaMismatch("config is not a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "batch_size") {
        base.batch_size = value.get<int>();
      } else if (key == "learning_rate") {
        base.learning_rate = value.get<double>();
      } else if (key == "weight_decay") {
        base.weight_decay = value.get<double>();
      } else if (key == "warmup_steps") {
        base.warmup_steps = value.get<int>();
      } else if (key == "margin") {
        base.margin = value.get<double>();
      } else if (key == "epochs") {
        base.epochs = value.get<int>();
      } else if (key == "seed") {
        base.seed = value.get<uint64_t>();
      } else if (key == "feature_dim") {
        base.feature_dim = value.get<int>();
      } else if (key == "embed_dim") {
        base.embed_dim = value.get<int>();
      } else {
        throw SchemaMismatch("unknown config key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaMismatch(std::string("bad config value: ") + e.what());
  }
  return base;
}

TaskKind TaskOf(const Example& e) {
  if (std::holds_alternative<PermClassExample>(e)) return TaskKind::kPermClass;
  if (std::holds_alternative<EmbRegExample>(e)) return TaskKind::kEmbReg;
  return TaskKind::kSkipClip;
}

JsonlExampleStream::JsonlExampleStream(std::string path, TaskKind task,
                                       std::string expected_permset_ref)
    : path_(std::move(path)),
      task_(task),
      expected_ref_(std::move(expected_permset_ref)) {
  Reset();
}

void JsonlExampleStream::Reset() {
  in_.close();
  in_.clear();
  in_.open(path_, std::ios::binary);
  if (!in_) throw IoError("cannot open " + path_);
  line_no_ = 0;
}

std::optional<Example> JsonlExampleStream::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const std::string where = path_ + ":" + std::to_string(line_no_) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaMismatch(where + e.what());
    }
    try {
      Example ex;
      std::string ref;
      switch (task_) {
        case TaskKind::kPermClass: {
          auto pc = PermClassExampleFromJson(j);
          ref = pc.permset_ref;
          ex = std::move(pc);
          break;
        }
        case TaskKind::kEmbReg: {
          auto er = EmbRegExampleFromJson(j);
          ref = er.permset_ref;
          ex = std::move(er);
          break;
        }
        case TaskKind::kSkipClip:
          ex = SkipClipExampleFromJson(j);
          break;
      }
      if (!expected_ref_.empty() && task_ != TaskKind::kSkipClip &&
          ref != expected_ref_) {
        throw SchemaMismatch("permset_ref " + ref + " does not match " +
                             expected_ref_);
      }
      return ex;
    } catch (const SchemaMismatch& e) {
      throw SchemaMismatch(where + e.what());
    }
  }
  return std::nullopt;
}

Model InitModel(TaskKind task, int n_steps, int output_dim,
                const TrainConfig& cfg) {
  cfg.Validate();
  Model m;
  m.task = task;
  m.encoder = EncoderModel::Random(cfg.feature_dim, cfg.embed_dim, cfg.seed);
  if (task != TaskKind::kSkipClip) {
    if (n_steps < 1 || output_dim < 1) {
      throw InvalidArgument("head needs positive n_steps and output_dim");
    }
    m.n_steps = n_steps;
    m.output_dim = output_dim;
    m.head_weight.assign(
        static_cast<std::size_t>(output_dim) * m.head_input_dim(), 0.0);
    m.head_bias.assign(output_dim, 0.0);
  }
  return m;
}

double BatchLossAndGrad(const Model& model, std::span<const Example> batch,
                        double margin, Gradients* grads) {
  if (batch.empty()) return 0.0;
  if (grads) {
    grads->projection.assign(model.encoder.projection.size(), 0.0);
    grads->head_weight.assign(model.head_weight.size(), 0.0);
    grads->head_bias.assign(model.head_bias.size(), 0.0);
  }
  const double scale = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  for (const Example& e : batch) {
    total += ExampleLoss(model, e, margin, scale, grads);
  }
  return total * scale;
}

std::vector<double> Forward(const Model& model,
                            const std::vector<std::string>& steps) {
  if (model.task == TaskKind::kSkipClip) {
    throw InvalidArgument("skip_clip models have no head");
  }
  CheckSlots(model, steps, "<input>");
  return HeadForward(model, EncodeBatch(model.encoder, steps));
}

double LearningRateAt(const TrainConfig& cfg, long step) {
  if (cfg.warmup_steps <= 0 || step >= cfg.warmup_steps) {
    return cfg.learning_rate;
  }
  return cfg.learning_rate * static_cast<double>(step + 1) /
         static_cast<double>(cfg.warmup_steps);
}

TrainResult Train(TaskKind task, ExampleStream& examples,
                  const TrainConfig& cfg, int num_classes) {
  cfg.Validate();
  examples.Reset();
  const std::optional<Example> first = examples.Next();
  if (!first) throw SchemaMismatch("no training examples");

  int n_steps = 0;
  int output_dim = 0;
  if (task == TaskKind::kPermClass) {
    if (num_classes < 1) {
      throw InvalidArgument("perm_class training needs the set size");
    }
    n_steps = SlotsOf(*first);
    output_dim = num_classes;
  } else if (task == TaskKind::kEmbReg) {
    n_steps = SlotsOf(*first);
    if (const auto* er = std::get_if<EmbRegExample>(&*first)) {
      output_dim = static_cast<int>(er->target.size());
    }
  }
  if (TaskOf(*first) != task) {
    throw SchemaMismatch("examples do not match task " +
                         std::string(TaskKindName(task)));
  }

  TrainResult result;
  result.model = InitModel(task, n_steps, output_dim, cfg);
  Model& m = result.model;
  Gradients grads;
  long step = 0;
  std::vector<Example> batch;
  batch.reserve(cfg.batch_size);

  auto run_batch = [&] {
    const double lr = LearningRateAt(cfg, step);
    const double loss = BatchLossAndGrad(m, batch, cfg.margin, &grads);
    if (!std::isfinite(loss)) {
      throw NonFiniteLoss(step + 1, "non-finite loss at step " +
                                        std::to_string(step + 1));
    }
    ApplySgd(m.encoder.projection, grads.projection, lr, cfg.weight_decay);
    ApplySgd(m.head_weight, grads.head_weight, lr, cfg.weight_decay);
    ApplySgd(m.head_bias, grads.head_bias, lr, 0.0);
    ++step;
    result.log.push_back({step, loss, lr});
    batch.clear();
  };

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    examples.Reset();
    while (auto e = examples.Next()) {
      batch.push_back(std::move(*e));
      if (static_cast<int>(batch.size()) == cfg.batch_size) run_batch();
    }
    if (!batch.empty()) run_batch();
  }
  return result;
}

EvalResult Evaluate(const Model& model, ExampleStream& examples,
                    double margin) {
  EvalResult r;
  double loss = 0.0;
  long correct = 0;
  long pairs = 0;
  examples.Reset();
  while (auto e = examples.Next()) {
    ++r.count;
    loss += ExampleLoss(model, *e, margin, 1.0, nullptr);
    if (const auto* pc = std::get_if<PermClassExample>(&*e)) {
      const auto logits = Forward(model, pc->permuted_steps);
      const auto best = std::max_element(logits.begin(), logits.end());
      correct += (best - logits.begin()) == pc->label;
    } else if (const auto* sc = std::get_if<SkipClipExample>(&*e)) {
      const auto h = model.encoder.Encode(JoinSteps(sc->context_steps));
      std::vector<double> s;
      for (const auto& t : sc->targets) {
        s.push_back(CosineScore(h, model.encoder.Encode(t.text)));
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          ++pairs;
          correct += s[i] > s[j];
        }
      }
    }
  }
  if (r.count > 0) r.mean_loss = loss / static_cast<double>(r.count);
  if (model.task == TaskKind::kPermClass && r.count > 0) {
    r.accuracy = static_cast<double>(correct) / static_cast<double>(r.count);
  } else if (model.task == TaskKind::kSkipClip && pairs > 0) {
    r.accuracy = static_cast<double>(correct) / static_cast<double>(pairs);
  }
  return r;
}

nlohmann::ordered_json ModelToJson(const Model& model, const TrainConfig& cfg,
                                   const nlohmann::ordered_json& meta) {
  nlohmann::ordered_json j;
  j["task"] = std::string(TaskKindName(model.task));
  j["D"] = model.encoder.feature_dim;
  j["d"] = model.encoder.embed_dim;
  j["n_steps"] = model.n_steps;
  j["output_dim"] = model.output_dim;
  j["projection"] = model.encoder.projection;
  nlohmann::ordered_json head;
  head["weight"] = model.head_weight;
  head["bias"] = model.head_bias;
  j["head"] = std::move(head);
  j["config"] = ConfigToJson(cfg);
  if (!meta.is_null()) j["meta"] = meta;
  return j;
}

Model ModelFromJson(const nlohmann::json& j) {
  Model m;
  m.task = ParseTaskKind(JsonField<std::string>(j, "task"));
  m.encoder.feature_dim = JsonField<int>(j, "D");
  m.encoder.embed_dim = JsonField<int>(j, "d");
  m.n_steps = JsonField<int>(j, "n_steps");
  m.output_dim = JsonField<int>(j, "output_dim");
  m.encoder.projection = JsonField<std::vector<double>>(j, "projection");
  const auto head = JsonField<nlohmann::json>(j, "head");
  m.head_weight = JsonField<std::vector<double>>(head, "weight");
  m.head_bias = JsonField<std::vector<double>>(head, "bias");
  if (m.encoder.projection.size() !=
          static_cast<std::size_t>(m.encoder.feature_dim) *
              m.encoder.embed_dim ||
      m.head_weight.size() !=
          static_cast<std::size_t>(m.output_dim) * m.head_input_dim() ||
      m.head_bias.size() != static_cast<std::size_t>(m.output_dim)) {
    throw SchemaMismatch("checkpoint parameter shapes are inconsistent");
  }
  return m;
}

void WriteCheckpoint(const std::string& path, const Model& model,
                     const TrainConfig& cfg,
                     const nlohmann::ordered_json& meta) {
  WriteFileAtomic(path, ModelToJson(model, cfg, meta).dump() + "\n");
}

Model ReadCheckpoint(const std::string& path) {
  try {
    return ModelFromJson(nlohmann::json::parse(ReadFile(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaMismatch(path + ": " + e.what());
  }
}

void WriteMetricsLog(const std::string& path, const std::vector<StepLog>& log) {
  AtomicWriter w(path);
  for (const auto& s : log) {
    nlohmann::ordered_json j;
    j["step"] = s.step;
    j["loss"] = s.loss;
    j["lr"] = s.lr;
    w.stream() << j.dump() << '\n';
  }
  w.Commit();
}

}  // namespace ordsup
