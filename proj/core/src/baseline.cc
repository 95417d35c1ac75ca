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

#include "grable/baseline.h"

#include <cmath>

#include "grable/error.h"
#include "grable/featurizer.h"

namespace grable {

RowLocalModel::Features RowLocalModel::Extract(const Table& table, std::size_t row) const {
  Features f;
  std::size_t next_numeric = 0;
  for (std::size_t c = 0; c < schema_.size(); ++c) {
    const std::string& name = schema_.column(c);
    if (config_.exclude_columns.count(name)) continue;
    const auto src = table.schema().Require(name);
    const Value& v = table.at(row, src);
    if (next_numeric < numeric_columns_.size() && numeric_columns_[next_numeric] == c) {
      const std::size_t k = next_numeric++;
      auto x = v.AsNumber();
      if (x) f.numeric.emplace_back(k, (*x - numeric_mean_[k]) / numeric_scale_[k]);
      continue;
    }
    if (v.is_missing()) continue;
    f.buckets.push_back(static_cast<std::uint32_t>(HashCell(name, v, config_.seed) % config_.buckets));
  }
  return f;
}

RowLocalModel RowLocalModel::Fit(const RowLocalConfig& config, const Table& train,
                                 const LabelVector& labels) {
  if (labels.size() != train.num_rows()) throw Error("labels do not match rows");
  if (config.buckets == 0) throw Error("baseline needs at least one bucket");
  RowLocalModel m;
  m.config_ = config;
  m.schema_ = train.schema();
  for (std::size_t c = 0; c < train.num_columns(); ++c) {
    if (config.exclude_columns.count(train.schema().column(c))) continue;
    bool real = false, other = false;
    for (std::size_t i = 0; i < train.num_rows(); ++i) {
      const Value& v = train.at(i, c);
      if (v.is_missing()) continue;
      (v.kind() == ValueKind::kReal ? real : other) = true;
    }
    if (!real || other) continue;
    double sum = 0, sq = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < train.num_rows(); ++i) {
      if (auto x = train.at(i, c).AsNumber()) {
        sum += *x;
        sq += *x * *x;
        ++n;
      }
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(sq / static_cast<double>(n) - mean * mean, 0.0);
    m.numeric_columns_.push_back(c);
    m.numeric_mean_.push_back(mean);
    m.numeric_scale_.push_back(var > 0 ? std::sqrt(var) : 1.0);
  }
  m.weights_.assign(config.buckets, 0.0);
  m.numeric_weights_.assign(m.numeric_columns_.size(), 0.0);

  std::vector<Features> feats;
  feats.reserve(train.num_rows());
  for (std::size_t i = 0; i < train.num_rows(); ++i) feats.push_back(m.Extract(train, i));
  std::size_t pos = 0;
  for (auto y : labels) pos += y != 0;
  const double w_pos = pos > 0 ? static_cast<double>(labels.size() - pos) / static_cast<double>(pos) : 1.0;

  // Full-batch Adam on class-weighted logistic loss.
  const std::size_t dim = m.weights_.size() + m.numeric_weights_.size() + 1;
  std::vector<double> mom(dim, 0.0), vel(dim, 0.0), grad(dim);
  const double inv_n = labels.empty() ? 0.0 : 1.0 / static_cast<double>(labels.size());
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < feats.size(); ++i) {
      double s = m.bias_;
      for (auto b : feats[i].buckets) s += m.weights_[b];
      for (auto [k, x] : feats[i].numeric) s += m.numeric_weights_[k] * x;
      const double p = 1.0 / (1.0 + std::exp(-s));
      const double y = labels[i] ? 1.0 : 0.0;
      const double g = (labels[i] ? w_pos : 1.0) * (p - y) * inv_n;
      for (auto b : feats[i].buckets) grad[b] += g;
      for (auto [k, x] : feats[i].numeric) grad[m.weights_.size() + k] += g * x;
      grad[dim - 1] += g;
    }
    const double c1 = 1.0 - std::pow(0.9, static_cast<double>(epoch));
    const double c2 = 1.0 - std::pow(0.999, static_cast<double>(epoch));
    for (std::size_t j = 0; j < dim; ++j) {
      double* w = j < m.weights_.size()       ? &m.weights_[j]
                  : j + 1 < dim               ? &m.numeric_weights_[j - m.weights_.size()]
                                              : &m.bias_;
      const double gj = grad[j] + config.weight_decay * *w;
      mom[j] = 0.9 * mom[j] + 0.1 * gj;
      vel[j] = 0.999 * vel[j] + 0.001 * gj * gj;
      *w -= config.learning_rate * (mom[j] / c1) / (std::sqrt(vel[j] / c2) + 1e-8);
    }
  }
  return m;
}

std::vector<double> RowLocalModel::Scores(const Table& table) const {
  std::vector<double> out;
  out.reserve(table.num_rows());
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    const Features f = Extract(table, i);
    double s = bias_;
    for (auto b : f.buckets) s += weights_[b];
    for (auto [k, x] : f.numeric) s += numeric_weights_[k] * x;
    out.push_back(s);
  }
  return out;
}

LabelVector RowLocalModel::Predict(const Table& table) const {
  LabelVector out;
  for (double s : Scores(table)) out.push_back(s > threshold_);
  return out;
}

}  // namespace grable
