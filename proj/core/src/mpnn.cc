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

#include "grable/mpnn.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "grable/error.h"
#include "grable/featurizer.h"
#include "grable/rng.h"
#include "json_util.h"
#include "mpnn_internal.h"

namespace grable {

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kRelu:
      return "relu";
    case Activation::kClamp:
      return "clamp";
    case Activation::kIdentity:
      return "identity";
  }
  return "relu";
}

Activation ParseActivation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "clamp") return Activation::kClamp;
  if (name == "identity") return Activation::kIdentity;
  throw Error("unknown activation '" + std::string(name) + "'");
}

std::string Featurization::KindOf(const NodeRecord& node) const {
  if (kind_mode == KindMode::kType || node.column.empty()) return node.type;
  return node.type + ":" + node.column;
}

Matrix EncodeInputs(const Featurization& f, const Grable& grable) {
  const std::size_t n = grable.num_nodes();
  Matrix x(n, f.input_dim());
  std::map<std::string, std::size_t> kind_index;
  for (std::size_t i = 0; i < f.kinds.size(); ++i) kind_index[f.kinds[i]] = i;
  const std::size_t pred_off = f.kinds.size();
  const std::size_t row_off = pred_off + f.predicates.size();
  const std::size_t hash_off = row_off + f.row_feature_dim;
  for (NodeId v = 0; v < n; ++v) {
    const NodeRecord& node = grable.node(v);
    auto row = x.row(v);
    if (auto it = kind_index.find(f.KindOf(node)); it != kind_index.end()) row[it->second] = 1.0;
    for (std::size_t p = 0; p < f.predicates.size(); ++p) {
      row[pred_off + p] = f.predicates[p].Evaluate(node) ? 1.0 : 0.0;
    }
    const bool is_row = node.type == node_type::kRow;
    if (is_row && f.row_feature_dim > 0) {
      for (std::size_t c = 0; c < node.local_schema.size(); ++c) {
        if (node.features[c].is_missing()) continue;
        const std::uint64_t h = HashCell(node.local_schema.column(c), node.features[c],
                                         f.hash_seed ^ 0x726f77ULL);
        row[row_off + (h >> 1) % f.row_feature_dim] += (h & 1) ? 1.0 : -1.0;
      }
    }
    if (f.hash_dim > 0 && (!is_row || f.hash_row_nodes)) {
      Rng rng(Mix64(f.hash_seed ^ Mix64(static_cast<std::uint64_t>(v) + 1)));
      for (std::size_t j = 0; j < f.hash_dim; ++j) row[hash_off + j] = rng.Normal();
    }
  }
  return x;
}

void MpnnConfig::Validate() const {
  if (layers < 1) throw Error("mpnn needs at least one layer");
  if (hidden < 1) throw Error("mpnn hidden dimension must be >= 1");
  if (!(dropout >= 0 && dropout < 1)) throw Error("dropout must lie in [0,1)");
  if (!(learning_rate >= 0 && learning_rate <= 1)) throw Error("learning_rate must lie in [0,1]");
  if (!(weight_decay >= 0 && weight_decay <= 1)) throw Error("weight_decay must lie in [0,1]");
}

MpnnConfig ParseMpnnConfigJson(std::string_view json_text) {
  using internal::Get;
  auto j = internal::ParseJson(json_text, "mpnn config");
  MpnnConfig c;
  c.layers = Get<std::size_t>(j, "layers", c.layers);
  c.hidden = Get<std::size_t>(j, "hidden", c.hidden);
  c.dropout = Get<double>(j, "dropout", c.dropout);
  c.learning_rate = Get<double>(j, "learning_rate", c.learning_rate);
  c.weight_decay = Get<double>(j, "weight_decay", c.weight_decay);
  c.epochs = Get<std::size_t>(j, "epochs", c.epochs);
  c.seed = Get<std::uint64_t>(j, "seed", c.seed);
  c.hash_dim = Get<std::size_t>(j, "hash_dim", c.hash_dim);
  c.type_only = Get<bool>(j, "type_only", c.type_only);
  c.row_feature_dim = Get<std::size_t>(j, "row_feature_dim", c.row_feature_dim);
  c.Validate();
  return c;
}

std::string MpnnConfigToJson(const MpnnConfig& c) {
  internal::Json j = {{"layers", c.layers},
                      {"hidden", c.hidden},
                      {"dropout", c.dropout},
                      {"learning_rate", c.learning_rate},
                      {"weight_decay", c.weight_decay},
                      {"epochs", c.epochs},
                      {"seed", c.seed},
                      {"hash_dim", c.hash_dim},
                      {"type_only", c.type_only},
                      {"row_feature_dim", c.row_feature_dim}};
  return j.dump(2);
}

std::vector<std::string> MpnnModel::Relations() const {
  std::set<std::string> names;
  for (const auto& l : layers) {
    for (const auto& [name, w] : l.message) names.insert(name);
  }
  return {names.begin(), names.end()};
}

std::size_t MpnnModel::MessagePassingDepth() const {
  return static_cast<std::size_t>(
      std::count_if(layers.begin(), layers.end(), [](const MpnnLayer& l) { return !l.is_local(); }));
}

std::size_t MpnnModel::NumParameters() const { return FlattenParameters(*this).size(); }

bool operator==(const MpnnModel& a, const MpnnModel& b) {
  if (a.layers.size() != b.layers.size()) return false;
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    const auto& x = a.layers[i];
    const auto& y = b.layers[i];
    if (!(x.self == y.self) || x.message != y.message || x.bias != y.bias ||
        x.activation != y.activation) {
      return false;
    }
  }
  const auto& f = a.featurization;
  const auto& g = b.featurization;
  if (f.kind_mode != g.kind_mode || f.kinds != g.kinds || f.row_feature_dim != g.row_feature_dim ||
      f.hash_dim != g.hash_dim || f.hash_row_nodes != g.hash_row_nodes ||
      f.hash_seed != g.hash_seed || f.predicates.size() != g.predicates.size()) {
    return false;
  }
  for (std::size_t i = 0; i < f.predicates.size(); ++i) {
    const auto& p = f.predicates[i];
    const auto& q = g.predicates[i];
    if (p.name != q.name || p.kind != q.kind || p.type != q.type || p.column != q.column ||
        !(p.value == q.value)) {
      return false;
    }
  }
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  return a.encoder == b.encoder && a.readout == b.readout &&
         same(a.readout_bias, b.readout_bias) && same(a.threshold, b.threshold);
}

void ForEachParameter(MpnnModel& model,
                      const std::function<void(const std::string&, std::span<double>)>& fn) {
  fn("encoder", model.encoder.data());
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    auto& l = model.layers[i];
    const std::string p = "layer" + std::to_string(i) + ".";
    fn(p + "self", l.self.data());
    for (auto& [name, w] : l.message) fn(p + "message." + name, w.data());
    fn(p + "bias", l.bias);
  }
  fn("readout", model.readout);
  fn("readout_bias", std::span<double>(&model.readout_bias, 1));
}

std::vector<double> FlattenParameters(const MpnnModel& model) {
  std::vector<double> flat;
  ForEachParameter(const_cast<MpnnModel&>(model), [&](const std::string&, std::span<double> p) {
    flat.insert(flat.end(), p.begin(), p.end());
  });
  return flat;
}

void UnflattenParameters(std::span<const double> flat, MpnnModel& model) {
  std::size_t pos = 0;
  ForEachParameter(model, [&](const std::string&, std::span<double> p) {
    if (pos + p.size() > flat.size()) throw Error("parameter vector too short");
    std::copy(flat.begin() + pos, flat.begin() + pos + p.size(), p.begin());
    pos += p.size();
  });
  if (pos != flat.size()) throw Error("parameter vector too long");
}

namespace internal {

std::vector<std::vector<const Relation*>> ResolveRelations(const MpnnModel& model,
                                                           const Grable& grable) {
  std::vector<std::vector<const Relation*>> out;
  for (const auto& l : model.layers) {
    auto& rels = out.emplace_back();
    for (const auto& [name, w] : l.message) {
      const Relation* r = grable.FindRelation(name);
      if (!r) throw Error("model relation '" + name + "' is absent from the grable");
      rels.push_back(r);
    }
  }
  return out;
}

namespace {

double Activate(Activation a, double z) {
  switch (a) {
    case Activation::kRelu:
      return z > 0 ? z : 0.0;
    case Activation::kClamp:
      return std::min(std::max(z, 0.0), 1.0);
    case Activation::kIdentity:
      return z;
  }
  return z;
}

double Derivative(Activation a, double z) {
  switch (a) {
    case Activation::kRelu:
      return z > 0 ? 1.0 : 0.0;
    case Activation::kClamp:
      return z > 0 && z < 1 ? 1.0 : 0.0;
    case Activation::kIdentity:
      return 1.0;
  }
  return 1.0;
}

// out(v) = sum over N(v) of h(u), ascending u.
void Aggregate(const Relation& rel, const Matrix& h, Matrix& out) {
  const std::size_t d = h.cols();
  for (std::size_t v = 0; v < h.rows(); ++v) {
    double* o = out.data().data() + v * d;
    for (NodeId u : rel.OutNeighbors(static_cast<NodeId>(v))) {
      const double* hu = h.data().data() + static_cast<std::size_t>(u) * d;
      for (std::size_t c = 0; c < d; ++c) o[c] += hu[c];
    }
  }
}

void CheckFinite(const Matrix& m, const std::string& where) {
  for (double x : m.data()) {
    if (!std::isfinite(x)) throw Error("non-finite value in " + where);
  }
}

}  // namespace

ForwardResult ForwardWithMasks(const MpnnModel& model, const Grable& grable,
                               const Matrix& inputs, const std::vector<Matrix>* masks) {
  const auto rels = ResolveRelations(model, grable);
  const std::size_t n = grable.num_nodes();
  if (inputs.cols() != model.encoder.rows()) throw Error("encoder input width mismatch");
  ForwardResult out;
  Matrix h0(n, model.encoder.cols());
  AddProduct(inputs, model.encoder, h0);
  CheckFinite(h0, "encoder");
  out.embeddings.push_back(std::move(h0));
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const MpnnLayer& layer = model.layers[l];
    const Matrix& h = out.embeddings.back();
    if (h.cols() != layer.in_dim()) throw Error("layer " + std::to_string(l + 1) + " width mismatch");
    Matrix z(n, layer.out_dim());
    for (std::size_t v = 0; v < n; ++v) {
      std::copy(layer.bias.begin(), layer.bias.end(), z.row(v).begin());
    }
    AddProduct(h, layer.self, z);
    auto& msgs = out.messages.emplace_back();
    std::size_t r = 0;
    for (const auto& [name, w] : layer.message) {
      Matrix m(n, h.cols());
      Aggregate(*rels[l][r++], h, m);
      AddProduct(m, w, z, true);
      msgs.push_back(std::move(m));
    }
    CheckFinite(z, "layer " + std::to_string(l + 1));
    Matrix next(n, layer.out_dim());
    for (std::size_t i = 0; i < z.size(); ++i) {
      next.data()[i] = Activate(layer.activation, z.data()[i]);
    }
    if (masks && l + 1 < model.layers.size()) {
      const Matrix& mask = (*masks)[l];
      for (std::size_t i = 0; i < next.size(); ++i) next.data()[i] *= mask.data()[i];
    }
    out.pre_activations.push_back(std::move(z));
    out.embeddings.push_back(std::move(next));
  }
  const Matrix& hk = out.embeddings.back();
  if (hk.cols() != model.readout.size()) throw Error("readout width mismatch");
  out.scores.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    double s = model.readout_bias;
    auto row = hk.row(v);
    for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * model.readout[c];
    out.scores[v] = s;
  }
  return out;
}

void Backward(const MpnnModel& model, const Grable& grable, const Matrix& inputs,
              const ForwardResult& fwd, const std::vector<double>& dscore,
              const std::vector<Matrix>* masks, MpnnModel& grad) {
  const auto rels = ResolveRelations(model, grable);
  const std::size_t n = grable.num_nodes();
  const Matrix& hk = fwd.embeddings.back();
  Matrix dh(n, hk.cols());
  for (std::size_t v = 0; v < n; ++v) {
    const double g = dscore[v];
    if (g == 0.0) continue;
    grad.readout_bias += g;
    Axpy(g, hk.row(v), grad.readout);
    Axpy(g, model.readout, dh.row(v));
  }
  for (std::size_t l = model.layers.size(); l-- > 0;) {
    const MpnnLayer& layer = model.layers[l];
    MpnnLayer& glayer = grad.layers[l];
    if (masks && l + 1 < model.layers.size()) {
      const Matrix& mask = (*masks)[l];
      for (std::size_t i = 0; i < dh.size(); ++i) dh.data()[i] *= mask.data()[i];
    }
    const Matrix& z = fwd.pre_activations[l];
    Matrix dz(n, layer.out_dim());
    for (std::size_t i = 0; i < dz.size(); ++i) {
      dz.data()[i] = dh.data()[i] * Derivative(layer.activation, z.data()[i]);
    }
    const Matrix& h = fwd.embeddings[l];
    AddTransposedProduct(h, dz, glayer.self);
    for (std::size_t v = 0; v < n; ++v) Axpy(1.0, dz.row(v), glayer.bias);
    Matrix dprev(n, layer.in_dim());
    AddProduct(dz, layer.self.Transposed(), dprev, true);
    std::size_t r = 0;
    for (const auto& [name, w] : layer.message) {
      const Relation& rel = *rels[l][r];
      AddTransposedProduct(fwd.messages[l][r], dz, glayer.message.at(name));
      ++r;
      const Matrix wt = w.Transposed();
      // dm(v) = dz(v) * w^T, scattered back to every u in N(v).
      std::vector<double> dm(layer.in_dim());
      for (std::size_t v = 0; v < n; ++v) {
        auto nb = rel.OutNeighbors(static_cast<NodeId>(v));
        if (nb.empty()) continue;
        std::fill(dm.begin(), dm.end(), 0.0);
        auto dzv = dz.row(v);
        for (std::size_t k = 0; k < dzv.size(); ++k) {
          if (dzv[k] == 0.0) continue;
          Axpy(dzv[k], wt.row(k), dm);
        }
        for (NodeId u : nb) Axpy(1.0, dm, dprev.row(u));
      }
    }
    dh = std::move(dprev);
  }
  AddTransposedProduct(inputs, dh, grad.encoder);
}

double WeightedBce(const Grable& grable, const std::vector<double>& scores,
                   const LabelVector& labels, const ClassWeights& weights,
                   std::vector<double>* dscore) {
  if (labels.size() != grable.num_rows()) {
    throw Error("label count " + std::to_string(labels.size()) + " != row count " +
                std::to_string(grable.num_rows()));
  }
  if (dscore) dscore->assign(grable.num_nodes(), 0.0);
  if (labels.empty()) return 0.0;
  const double inv_n = 1.0 / static_cast<double>(labels.size());
  double loss = 0.0;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const NodeId v = grable.row_node(r);
    const double s = scores[v];
    const double y = labels[r] ? 1.0 : 0.0;
    const double w = labels[r] ? weights.positive : weights.negative;
    loss += w * (std::max(s, 0.0) - s * y + std::log1p(std::exp(-std::abs(s))));
    if (dscore) {
      const double p = s >= 0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
      (*dscore)[v] = w * (p - y) * inv_n;
    }
  }
  return loss * inv_n;
}

MpnnModel ZerosLike(const MpnnModel& model) {
  MpnnModel z = model;
  ForEachParameter(z, [](const std::string&, std::span<double> p) {
    std::fill(p.begin(), p.end(), 0.0);
  });
  return z;
}

}  // namespace internal

ForwardResult Forward(const MpnnModel& model, const Grable& grable) {
  return internal::ForwardWithMasks(model, grable, EncodeInputs(model.featurization, grable),
                                    nullptr);
}

std::vector<double> RowScores(const MpnnModel& model, const Grable& grable) {
  const auto fwd = Forward(model, grable);
  std::vector<double> out;
  out.reserve(grable.num_rows());
  for (NodeId v : grable.row_map()) out.push_back(fwd.scores[v]);
  return out;
}

LabelVector Predict(const MpnnModel& model, const Grable& grable) {
  LabelVector out;
  for (double s : RowScores(model, grable)) out.push_back(s > model.threshold);
  return out;
}

double Loss(const MpnnModel& model, const Grable& grable, const LabelVector& labels,
            const ClassWeights& weights) {
  return internal::WeightedBce(grable, Forward(model, grable).scores, labels, weights, nullptr);
}

GradReport Gradient(const MpnnModel& model, const Grable& grable, const LabelVector& labels,
                    const ClassWeights& weights) {
  const Matrix x = EncodeInputs(model.featurization, grable);
  const auto fwd = internal::ForwardWithMasks(model, grable, x, nullptr);
  std::vector<double> dscore;
  GradReport report;
  report.loss = internal::WeightedBce(grable, fwd.scores, labels, weights, &dscore);
  report.gradient = internal::ZerosLike(model);
  internal::Backward(model, grable, x, fwd, dscore, nullptr, report.gradient);
  return report;
}

namespace {

// Sign pattern of every kinked pre-activation.
std::vector<std::int8_t> KinkPattern(const MpnnModel& model, const ForwardResult& fwd) {
  std::vector<std::int8_t> out;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const Activation a = model.layers[l].activation;
    if (a == Activation::kIdentity) continue;
    for (double z : fwd.pre_activations[l].data()) {
      std::int8_t s = z > 0 ? 1 : 0;
      if (a == Activation::kClamp && z >= 1) s = 2;
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

FiniteDiffResult FiniteDiffCheck(const MpnnModel& model, const Grable& grable,
                                 const LabelVector& labels, double epsilon,
                                 const ClassWeights& weights) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) throw Error("epsilon must be positive");
  const Matrix x = EncodeInputs(model.featurization, grable);
  const auto base_fwd = internal::ForwardWithMasks(model, grable, x, nullptr);
  const auto base_pattern = KinkPattern(model, base_fwd);
  const std::vector<double> analytic = FlattenParameters(Gradient(model, grable, labels, weights).gradient);
  std::vector<double> theta = FlattenParameters(model);
  MpnnModel probe = model;
  FiniteDiffResult result;
  auto eval = [&](bool& kinked) {
    UnflattenParameters(theta, probe);
    const auto fwd = internal::ForwardWithMasks(probe, grable, x, nullptr);
    kinked = kinked || KinkPattern(probe, fwd) != base_pattern;
    return internal::WeightedBce(grable, fwd.scores, labels, weights, nullptr);
  };
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double saved = theta[i];
    bool kinked = false;
    theta[i] = saved + epsilon;
    const double up = eval(kinked);
    theta[i] = saved - epsilon;
    const double down = eval(kinked);
    theta[i] = saved;
    if (kinked) {
      ++result.flagged;
      continue;
    }
    const double numeric = (up - down) / (2 * epsilon);
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-8});
    result.max_relative_error =
        std::max(result.max_relative_error, std::abs(analytic[i] - numeric) / denom);
    ++result.checked;
  }
  return result;
}

MpnnModel InitModel(const MpnnConfig& config, const Grable& grable) {
  config.Validate();
  MpnnModel m;
  Featurization& f = m.featurization;
  f.kind_mode = config.type_only ? Featurization::KindMode::kType
                                 : Featurization::KindMode::kTypeAndColumn;
  std::set<std::string> kinds;
  for (const auto& node : grable.nodes()) kinds.insert(f.KindOf(node));
  f.kinds.assign(kinds.begin(), kinds.end());
  f.hash_dim = config.type_only ? 0 : config.hash_dim;
  f.row_feature_dim = config.type_only ? 0 : config.row_feature_dim;
  f.hash_seed = Mix64(config.seed ^ 0x68617368ULL);

  Rng rng(Mix64(config.seed));
  const std::size_t d = config.hidden;
  auto uniform = [&](Matrix& w, std::size_t fan_in) {
    const double a = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(fan_in, 1)));
    for (double& x : w.data()) x = rng.Uniform(-a, a);
  };
  m.encoder = Matrix(f.input_dim(), d);
  const std::size_t other_inputs = f.input_dim() - f.kinds.size();
  for (std::size_t r = 0; r < f.input_dim(); ++r) {
    const double a = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(other_inputs, 1)));
    for (double& x : m.encoder.row(r)) x = r < f.kinds.size() ? rng.Normal() : rng.Uniform(-a, a);
  }
  const auto relations = grable.RelationNames();
  for (std::size_t l = 0; l < config.layers; ++l) {
    MpnnLayer layer;
    layer.activation = Activation::kRelu;
    layer.self = Matrix(d, d);
    uniform(layer.self, d);
    for (const auto& r : relations) {
      Matrix w(d, d);
      uniform(w, d);
      layer.message.emplace(r, std::move(w));
    }
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    layer.bias.resize(d);
    for (double& b : layer.bias) b = rng.Uniform(-a, a);
    m.layers.push_back(std::move(layer));
  }
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  m.readout.resize(d);
  for (double& w : m.readout) w = rng.Uniform(-a, a);
  m.readout_bias = 0.0;
  m.threshold = 0.0;
  return m;
}

}  // namespace grable
