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

#include "grable/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "grable/error.h"

namespace grable {
namespace {

void CheckSizes(std::size_t a, std::size_t b) {
  if (a != b) throw Error("scores and labels differ in length");
}

}  // namespace

double RocAuc(std::span<const double> scores, const LabelVector& labels) {
  CheckSizes(scores.size(), labels.size());
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (double s : scores) {
    if (std::isnan(s)) throw Error("NaN score");
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double pos = 0;
  double rank_sum = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1 .. j share the midrank.
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]]) {
        pos += 1;
        rank_sum += midrank;
      }
    }
    i = j;
  }
  const double neg = static_cast<double>(n) - pos;
  if (pos == 0 || neg == 0) throw Error("ROC-AUC needs both classes");
  return (rank_sum - pos * (pos + 1) / 2) / (pos * neg);
}

double F1Score(const LabelVector& predictions, const LabelVector& labels) {
  CheckSizes(predictions.size(), labels.size());
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predictions[i] != 0;
    const bool y = labels[i] != 0;
    tp += p && y;
    fp += p && !y;
    fn += !p && y;
  }
  if (tp == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

LabelVector Threshold(std::span<const double> scores, double threshold) {
  LabelVector out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] > threshold;
  return out;
}

double SelectThreshold(std::span<const double> scores, const LabelVector& labels) {
  CheckSizes(scores.size(), labels.size());
  if (scores.empty()) return 0.0;
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::uint64_t total_pos = 0;
  for (auto y : labels) total_pos += y != 0;

  // Candidates ascending: below the minimum, midpoints, above the maximum.
  // At each candidate the predicted positives are the rows above it.
  std::uint64_t tp = total_pos;
  std::uint64_t fp = labels.size() - total_pos;
  double best_t = std::nextafter(scores[order.front()], -std::numeric_limits<double>::infinity());
  std::uint64_t best_num = 2 * tp;
  std::uint64_t best_den = 2 * tp + fp;  // fn = 0
  auto consider = [&](double t) {
    const std::uint64_t fn = total_pos - tp;
    const std::uint64_t num = 2 * tp;
    const std::uint64_t den = 2 * tp + fp + fn;
    // num/den >= best_num/best_den, with 0/0 read as 0.
    const unsigned __int128 lhs = static_cast<unsigned __int128>(num) * (best_den ? best_den : 1);
    const unsigned __int128 rhs = static_cast<unsigned __int128>(best_num) * (den ? den : 1);
    if (lhs >= rhs) {
      best_t = t;
      best_num = num;
      best_den = den;
    }
  };
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    const double v = scores[order[i]];
    while (j < order.size() && scores[order[j]] == v) {
      if (labels[order[j]]) {
        --tp;
      } else {
        --fp;
      }
      ++j;
    }
    double t;
    if (j < order.size()) {
      const double next = scores[order[j]];
      t = v + (next - v) / 2;
      if (!(t >= v && t < next)) t = v;
    } else {
      t = std::nextafter(v, std::numeric_limits<double>::infinity());
    }
    consider(t);
    i = j;
  }
  return best_t;
}

}  // namespace grable
