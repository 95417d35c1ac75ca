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

#ifndef GRABLE_SRC_MPNN_INTERNAL_H_
#define GRABLE_SRC_MPNN_INTERNAL_H_

#include <vector>

#include "grable/mpnn.h"

namespace grable::internal {

// Relations of each layer resolved against a grable, in layer.message order.
std::vector<std::vector<const Relation*>> ResolveRelations(const MpnnModel& model,
                                                           const Grable& grable);

// Forward pass. `masks`, if given, holds one dropout multiplier matrix per
// hidden layer output except the last (already scaled by 1/(1-p)).
ForwardResult ForwardWithMasks(const MpnnModel& model, const Grable& grable,
                               const Matrix& inputs, const std::vector<Matrix>* masks);

// Gradient of sum_v dscore[v] * score[v] with respect to every parameter.
void Backward(const MpnnModel& model, const Grable& grable, const Matrix& inputs,
              const ForwardResult& fwd, const std::vector<double>& dscore,
              const std::vector<Matrix>* masks, MpnnModel& grad);

// Mean weighted BCE over row nodes and its derivative per node score.
double WeightedBce(const Grable& grable, const std::vector<double>& scores,
                   const LabelVector& labels, const ClassWeights& weights,
                   std::vector<double>* dscore);

// Zero-valued model with the same shapes.
MpnnModel ZerosLike(const MpnnModel& model);

}  // namespace grable::internal

#endif  // GRABLE_SRC_MPNN_INTERNAL_H_
