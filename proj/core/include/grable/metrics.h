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

#ifndef GRABLE_METRICS_H_
#define GRABLE_METRICS_H_

#include <span>

#include "grable/tasks.h"

namespace grable {

// Mann-Whitney formulation with midranks for ties. Throws if either class is
// absent.
double RocAuc(std::span<const double> scores, const LabelVector& labels);

// 2PR/(P+R); 0 when there are no true positives.
double F1Score(const LabelVector& predictions, const LabelVector& labels);

LabelVector Threshold(std::span<const double> scores, double threshold);

// Scans midpoints between consecutive distinct scores plus one value just
// above the maximum; returns the F1-maximizing threshold, preferring the
// highest on ties.
double SelectThreshold(std::span<const double> scores, const LabelVector& labels);

}  // namespace grable

#endif  // GRABLE_METRICS_H_
