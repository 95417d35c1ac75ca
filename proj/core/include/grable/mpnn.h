// Copyright 2026 The Grable Authors
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

#ifndef GRABLE_MPNN_H_
#define GRABLE_MPNN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grable/dense.h"
#include "grable/gml.h"
#include "grable/grable.h"
#include "grable/tasks.h"

namespace grable {

enum class Activation { kRelu, kClamp, kIdentity };

std::string_view ActivationName(Activation activation);
Activation ParseActivation(std::string_view name);

// How node records become encoder inputs x_v. The encoder input is the
// concatenation [one-hot kind | predicate bits | row hash | node hash].
struct Featurization {
  enum class KindMode { kType, kTypeAndColumn };
  KindMode kind_mode = KindMode::kTypeAndColumn;
  // Known kinds; a node whose kind is not listed gets an all-zero one-hot.
  std::vector<std::string> kinds;
  // Predicates loaded as 0/1 inputs.
  std::vector<PredicateDef> predicates;
  // Signed-hash dimension of a row node's own feature record (0 = off).
  std::size_t row_feature_dim = 0;
  // Fixed Gaussian vector per node, seeded by (hash_seed, node id).
  std::size_t hash_dim = 0;
  bool hash_row_nodes = false;
  std::uint64_t hash_seed = 0;

  std::size_t input_dim() const {
    return kinds.size() + predicates.size() + row_feature_dim + hash_dim;
  }
  std::string KindOf(const NodeRecord& node) const;
};

// Encoder inputs, one row per node.
Matrix EncodeInputs(const Featurization& featurization, const Grable& grable);

struct MpnnConfig {
  std::size_t layers = 2;
  std::size_t hidden = 64;
  double dropout = 0.0;
  double learning_rate = 1e-3;
  double weight_decay = 1e-4;
  std::size_t epochs = 75;
  std::uint64_t seed = 0;
  // Per-node hash dimension for value nodes (symmetry breaking).
  std::size_t hash_dim = 16;
  // Type-only featurization: kinds are bare node types, no hashes.
  bool type_only = false;
  std::size_t row_feature_dim = 0;

  void Validate() const;
};

MpnnConfig ParseMpnnConfigJson(std::string_view json_text);
std::string MpnnConfigToJson(const MpnnConfig& config);

struct MpnnLayer {
  // h' = act(h * self + sum_i m_i * message[i] + bias), m_i(v) = sum over
  // N_i(v) of h. Layers without message weights are local.
  Matrix self;
  std::map<std::string, Matrix> message;
  std::vector<double> bias;
  Activation activation = Activation::kRelu;

  std::size_t in_dim() const { return self.rows(); }
  std::size_t out_dim() const { return self.cols(); }
  bool is_local() const { return message.empty(); }
};

struct MpnnModel {
  Featurization featurization;
  // x_v * encoder = h^0_v; shape (input_dim, d0).
  Matrix encoder;
  std::vector<MpnnLayer> layers;
  std::vector<double> readout;
  double readout_bias = 0.0;
  double threshold = 0.0;

  std::size_t embedding_dim() const { return readout.size(); }
  // Relations any layer reads, sorted.
  std::vector<std::string> Relations() const;
  // Layers with at least one message weight.
  std::size_t MessagePassingDepth() const;
  std::size_t NumParameters() const;

  friend bool operator==(const MpnnModel&, const MpnnModel&);
};

// Visits every trainable parameter block in a fixed order. Used by the
// optimizer, gradient checks and the checkpoint format.
void ForEachParameter(MpnnModel& model,
                      const std::function<void(const std::string&, std::span<double>)>& fn);
std::vector<double> FlattenParameters(const MpnnModel& model);
void UnflattenParameters(std::span<const double> flat, MpnnModel& model);

struct ForwardResult {
  // h^0 .. h^k.
  std::vector<Matrix> embeddings;
  // Pre-activations z^1 .. z^k.
  std::vector<Matrix> pre_activations;
  // Aggregated messages per layer and relation (same order as layer.message).
  std::vector<std::vector<Matrix>> messages;
  // READ(h^k) per node.
  std::vector<double> scores;

  const Matrix& final_embeddings() const { return embeddings.back(); }
};

// Throws if a model relation is absent from the grable or an intermediate is
// non-finite (message names the layer).
ForwardResult Forward(const MpnnModel& model, const Grable& grable);

// Scores of row nodes in row order.
std::vector<double> RowScores(const MpnnModel& model, const Grable& grable);

// 1 iff score > threshold, over row nodes.
LabelVector Predict(const MpnnModel& model, const Grable& grable);

struct ClassWeights {
  double negative = 1.0;
  double positive = 1.0;
};

struct GradReport {
  double loss = 0.0;
  // Gradient with the model's shape.
  MpnnModel gradient;
};

// Mean weighted binary cross-entropy on row-node logits:
// (1/n) sum_r w_{y_r} [max(s,0) - s y + log(1 + exp(-|s|))].
double Loss(const MpnnModel& model, const Grable& grable, const LabelVector& labels,
            const ClassWeights& weights = {});

// Exact reverse-mode gradient of Loss.
GradReport Gradient(const MpnnModel& model, const Grable& grable,
                    const LabelVector& labels, const ClassWeights& weights = {});

struct FiniteDiffResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  // Coordinates whose ReLU pattern changes inside [θ-ε, θ+ε]; excluded.
  std::size_t flagged = 0;
};

// Central differences against Gradient; relative error uses the denominator
// max(|analytic|, |numeric|, 1e-8). epsilon must be positive.
FiniteDiffResult FiniteDiffCheck(const MpnnModel& model, const Grable& grable,
                                 const LabelVector& labels, double epsilon,
                                 const ClassWeights& weights = {});

// Fresh parameters for `grable`'s node kinds and relations.
MpnnModel InitModel(const MpnnConfig& config, const Grable& grable);

struct EpochRecord {
  std::size_t epoch = 0;
  double loss = 0.0;
  double val_auc = 0.0;
  double val_f1 = 0.0;
};

struct TrainResult {
  MpnnModel model;
  std::vector<EpochRecord> history;
  ClassWeights class_weights;
};

// Full-batch Adam with coupled weight decay on the class-weighted loss
// (w_pos = #neg / #pos on train). The returned model carries the
// F1-maximizing validation threshold. Throws on a non-finite loss.
TrainResult Train(const MpnnConfig& config, const Grable& train_graph,
                  const LabelVector& train_labels, const Grable& val_graph,
                  const LabelVector& val_labels);

std::string HistoryToCsv(const std::vector<EpochRecord>& history);

// Clamp network computing `formula` exactly: one coordinate per distinct
// subformula, atoms loaded by the encoder, ¬φ -> σ(1 - h_φ),
// φ∧ψ -> σ(h_φ + h_ψ - 1), <E>=N φ -> σ(sum h_φ - (N-1)), readout = root
// coordinate with threshold 1/2. Message-passing depth = modal depth.
MpnnModel CompileFormula(const Formula& formula, const PredicateSet& predicates,
                         const std::set<std::string>& relations,
                         std::size_t max_subformulas = 4096);

// Versioned JSON checkpoint.
std::string ModelToJson(const MpnnModel& model);
MpnnModel ModelFromJson(std::string_view json_text);

}  // namespace grable

#endif  // GRABLE_MPNN_H_
