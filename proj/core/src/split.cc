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

#include "grable/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "grable/error.h"
#include "grable/rng.h"

namespace grable {
namespace {

void CheckFractions(const SplitFractions& f) {
  double sum = 0;
  for (double x : f) {
    if (!(x >= 0) || !std::isfinite(x)) throw Error("split fractions must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("split fractions must sum to 1");
}

TableSplit Cut(const Table& table, const std::vector<std::size_t>& order,
               const SplitFractions& fractions) {
  auto sizes = SplitSizes(order.size(), fractions);
  TableSplit out;
  auto first = order.begin();
  out.train_rows.assign(first, first + sizes[0]);
  out.validation_rows.assign(first + sizes[0], first + sizes[0] + sizes[1]);
  out.test_rows.assign(first + sizes[0] + sizes[1], order.end());
  out.train = table.Select(out.train_rows);
  out.validation = table.Select(out.validation_rows);
  out.test = table.Select(out.test_rows);
  return out;
}

}  // namespace

std::array<std::size_t, 3> SplitSizes(std::size_t n, const SplitFractions& fractions) {
  CheckFractions(fractions);
  auto a = static_cast<std::size_t>(std::llround(fractions[0] * n));
  auto b = static_cast<std::size_t>(std::llround(fractions[1] * n));
  a = std::min(a, n);
  b = std::min(b, n - a);
  return {a, b, n - a - b};
}

TableSplit SplitTemporal(const Table& table, const std::string& time_column,
                         const SplitFractions& fractions) {
  CheckFractions(fractions);
  const std::size_t col = table.schema().Require(time_column);
  std::vector<std::int64_t> times(table.num_rows());
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    const Value& v = table.at(i, col);
    if (v.kind() != ValueKind::kTimestamp) {
      throw Error("row " + std::to_string(i) + ": column '" + time_column +
                  "' is not a timestamp" + (v.is_missing() ? " (missing)" : ""));
    }
    times[i] = v.timestamp();
  }
  std::vector<std::size_t> order(table.num_rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  return Cut(table, order, fractions);
}

TableSplit SplitRandom(const Table& table, const SplitFractions& fractions,
                       std::uint64_t seed) {
  CheckFractions(fractions);
  std::vector<std::size_t> order(table.num_rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(std::span<std::size_t>(order));
  return Cut(table, order, fractions);
}

}  // namespace grable
