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

#include <cmath>
#include <sstream>

#include "grable/error.h"
#include "grable/metrics.h"
#include "grable/mpnn.h"
#include "grable/rng.h"
#include "mpnn_internal.h"

namespace grable {
namespace {

struct Adam {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::vector<double> m;
  std::vector<double> v;
  std::size_t t = 0;

  void Step(std::vector<double>& theta, const std::vector<double>& grad, double lr) {
    if (m.empty()) {
      m.assign(theta.size(), 0.0);
      v.assign(theta.size(), 0.0);
    }
    ++t;
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = beta1 * m[i] + (1 - beta1) * grad[i];
      v[i] = beta2 * v[i] + (1 - beta2) * grad[i] * grad[i];
      theta[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
  }
};

std::vector<double> RowsOf(const Grable& g, const std::vector<double>& node_scores) {
  std::vector<double> out;
  out.reserve(g.num_rows());
  for (NodeId v : g.row_map()) out.push_back(node_scores[v]);
  return out;
}

bool BothClasses(const LabelVector& y) {
  bool pos = false, neg = false;
  for (auto l : y) (l ? pos : neg) = true;
  return pos && neg;
}

}  // namespace

TrainResult Train(const MpnnConfig& config, const Grable& train_graph,
                  const LabelVector& train_labels, const Grable& val_graph,
                  const LabelVector& val_labels) {
  config.Validate();
  if (train_labels.size() != train_graph.num_rows()) throw Error("train labels do not match rows");
  if (val_labels.size() != val_graph.num_rows()) throw Error("validation labels do not match rows");
  if (train_graph.RelationNames() != val_graph.RelationNames()) {
    throw Error("train and validation grables have different relations");
  }
  TrainResult result;
  result.model = InitModel(config, train_graph);
  std::size_t pos = 0;
  for (auto y : train_labels) pos += y != 0;
  const std::size_t neg = train_labels.size() - pos;
  result.class_weights.positive = pos > 0 ? static_cast<double>(neg) / static_cast<double>(pos) : 1.0;
  if (config.epochs == 0) return result;

  MpnnModel& model = result.model;
  const Matrix x_train = EncodeInputs(model.featurization, train_graph);
  const Matrix x_val = EncodeInputs(model.featurization, val_graph);
  std::vector<double> theta = FlattenParameters(model);
  Adam adam;
  Rng dropout_rng(Mix64(config.seed ^ 0x64726f70ULL));
  const bool validate = BothClasses(val_labels);
  std::vector<double> val_scores;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<Matrix> masks;
    if (config.dropout > 0) {
      const double keep = 1.0 - config.dropout;
      for (std::size_t l = 0; l + 1 < model.layers.size(); ++l) {
        Matrix mask(train_graph.num_nodes(), model.layers[l].out_dim());
        for (double& m : mask.data()) m = dropout_rng.Bernoulli(keep) ? 1.0 / keep : 0.0;
        masks.push_back(std::move(mask));
      }
    }
    const auto* mask_ptr = masks.empty() ? nullptr : &masks;
    ForwardResult fwd;
    std::vector<double> dscore;
    double loss;
    try {
      fwd = internal::ForwardWithMasks(model, train_graph, x_train, mask_ptr);
      loss = internal::WeightedBce(train_graph, fwd.scores, train_labels, result.class_weights,
                                   &dscore);
    } catch (const Error& e) {
      throw Error("training diverged at epoch " + std::to_string(epoch) + ": " + e.what());
    }
    if (!std::isfinite(loss)) {
      throw Error("training diverged at epoch " + std::to_string(epoch) + ": non-finite loss");
    }
    MpnnModel grad = internal::ZerosLike(model);
    internal::Backward(model, train_graph, x_train, fwd, dscore, mask_ptr, grad);
    std::vector<double> g = FlattenParameters(grad);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += config.weight_decay * theta[i];
    adam.Step(theta, g, config.learning_rate);
    UnflattenParameters(theta, model);

    EpochRecord rec;
    rec.epoch = epoch;
    rec.loss = loss;
    rec.val_auc = std::nan("");
    rec.val_f1 = std::nan("");
    try {
      val_scores = RowsOf(val_graph, internal::ForwardWithMasks(model, val_graph, x_val, nullptr).scores);
    } catch (const Error& e) {
      throw Error("training diverged at epoch " + std::to_string(epoch) + ": " + e.what());
    }
    if (validate) {
      rec.val_auc = RocAuc(val_scores, val_labels);
      rec.val_f1 = F1Score(Threshold(val_scores, SelectThreshold(val_scores, val_labels)), val_labels);
    }
    result.history.push_back(rec);
  }
  model.threshold = SelectThreshold(val_scores, val_labels);
  return result;
}

std::string HistoryToCsv(const std::vector<EpochRecord>& history) {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,loss,val_auc,val_f1\n";
  for (const auto& r : history) {
    out << r.epoch << ',' << r.loss << ',';
    if (std::isfinite(r.val_auc)) out << r.val_auc;
    out << ',';
    if (std::isfinite(r.val_f1)) out << r.val_f1;
    out << '\n';
  }
  return out.str();
}

}  // namespace grable
