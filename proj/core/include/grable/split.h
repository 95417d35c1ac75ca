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

#ifndef GRABLE_SPLIT_H_
#define GRABLE_SPLIT_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "grable/table.h"

namespace grable {

using SplitFractions = std::array<double, 3>;

struct TableSplit {
  Table train;
  Table validation;
  Table test;
  // Source row index of every row in the corresponding split.
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> validation_rows;
  std::vector<std::size_t> test_rows;
};

// Split sizes for n rows: round(f0*n), round(f1*n), remainder.
std::array<std::size_t, 3> SplitSizes(std::size_t n, const SplitFractions& fractions);

// Sorts rows by time ascending (ties by original index) and cuts the sorted
// sequence into train, validation, test.
TableSplit SplitTemporal(const Table& table, const std::string& time_column,
                         const SplitFractions& fractions);

// Seeded shuffle, then cut by fractions.
TableSplit SplitRandom(const Table& table, const SplitFractions& fractions,
                       std::uint64_t seed);

}  // namespace grable

#endif  // GRABLE_SPLIT_H_
