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

#include <algorithm>
#include <map>

#include "grable/error.h"
#include "grable/mpnn.h"

namespace grable {

MpnnModel CompileFormula(const Formula& formula, const PredicateSet& predicates,
                         const std::set<std::string>& relations,
                         std::size_t max_subformulas) {
  const std::vector<Formula> subs = Subformulas(formula);
  if (subs.size() > max_subformulas) {
    throw Error("formula has " + std::to_string(subs.size()) +
                " subformulas, over the budget of " + std::to_string(max_subformulas));
  }
  Signature sig;
  sig.relations = relations;
  for (const auto& p : predicates.predicates()) sig.predicates.insert(p.name);
  Resolve(formula, sig);

  const std::size_t d = subs.size();
  std::map<std::string, std::size_t> coord;
  for (std::size_t i = 0; i < d; ++i) coord[ToString(subs[i])] = i;
  auto at = [&](const Formula& f) { return coord.at(ToString(f)); };

  // Modal depth and Boolean height (gates stacked above the last diamond or
  // atom) of every subformula.
  std::vector<int> depth(d), height(d);
  int max_height = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const Formula& f = subs[i];
    switch (f->op()) {
      case FormulaNode::Op::kAtom:
        depth[i] = 0;
        height[i] = 0;
        break;
      case FormulaNode::Op::kDiamond:
        depth[i] = 1 + depth[at(f->left())];
        height[i] = 0;
        break;
      case FormulaNode::Op::kNot:
        depth[i] = depth[at(f->left())];
        height[i] = 1 + height[at(f->left())];
        break;
      case FormulaNode::Op::kAnd: {
        const std::size_t a = at(f->left()), b = at(f->right());
        depth[i] = std::max(depth[a], depth[b]);
        // A child of lower depth is ready before this depth starts.
        const int ha = depth[a] == depth[i] ? height[a] : 0;
        const int hb = depth[b] == depth[i] ? height[b] : 0;
        height[i] = 1 + std::max(ha, hb);
        break;
      }
    }
    max_height = std::max(max_height, height[i]);
  }
  const int max_depth = ModalDepth(formula);

  MpnnModel m;
  Featurization& feat = m.featurization;
  feat.kind_mode = Featurization::KindMode::kType;
  std::map<std::string, std::size_t> pred_index;
  for (const auto& f : subs) {
    if (f->op() == FormulaNode::Op::kAtom && !pred_index.count(f->name())) {
      pred_index[f->name()] = feat.predicates.size();
      feat.predicates.push_back(*predicates.Find(f->name()));
    }
  }
  m.encoder = Matrix(feat.input_dim(), d);
  std::vector<bool> ready(d, false);
  for (std::size_t i = 0; i < d; ++i) {
    if (subs[i]->op() == FormulaNode::Op::kAtom) {
      m.encoder(pred_index.at(subs[i]->name()), i) = 1.0;
      ready[i] = true;
    }
  }

  auto new_layer = [&]() {
    MpnnLayer layer;
    layer.activation = Activation::kClamp;
    layer.self = Matrix(d, d);
    layer.bias.assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      if (ready[i]) layer.self(i, i) = 1.0;
    }
    return layer;
  };

  for (int r = 0; r <= max_depth; ++r) {
    if (r > 0) {
      MpnnLayer layer = new_layer();
      std::vector<std::size_t> done;
      for (std::size_t i = 0; i < d; ++i) {
        const Formula& f = subs[i];
        if (f->op() != FormulaNode::Op::kDiamond || depth[i] != r) continue;
        auto [it, fresh] = layer.message.try_emplace(f->name(), d, d);
        it->second(at(f->left()), i) += 1.0;
        layer.bias[i] = -static_cast<double>(f->count() - 1);
        done.push_back(i);
      }
      for (std::size_t i : done) ready[i] = true;
      m.layers.push_back(std::move(layer));
    }
    for (int h = 1; h <= max_height; ++h) {
      MpnnLayer layer = new_layer();
      std::vector<std::size_t> done;
      for (std::size_t i = 0; i < d; ++i) {
        const Formula& f = subs[i];
        if (depth[i] != r || height[i] != h) continue;
        if (f->op() == FormulaNode::Op::kNot) {
          layer.self(at(f->left()), i) -= 1.0;
          layer.bias[i] = 1.0;
        } else {
          layer.self(at(f->left()), i) += 1.0;
          layer.self(at(f->right()), i) += 1.0;
          layer.bias[i] = -1.0;
        }
        done.push_back(i);
      }
      if (done.empty()) continue;
      for (std::size_t i : done) ready[i] = true;
      m.layers.push_back(std::move(layer));
    }
  }
  m.readout.assign(d, 0.0);
  m.readout[at(formula)] = 1.0;
  m.readout_bias = 0.0;
  m.threshold = 0.5;
  return m;
}

}  // namespace grable
