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

#ifndef GRABLE_TASKS_H_
#define GRABLE_TASKS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "grable/table.h"
#include "grable/value.h"

namespace grable {

// Per-row binary targets aligned with table row indices.
using LabelVector = std::vector<std::uint8_t>;

enum class CountMode { kGreater, kEqual };

// Row's value in `column` occurs exactly once in the table.
struct UniqueTask {
  std::string column;
};

// Row's value in `column` occurs more than k times (kGreater) or exactly k
// times (kEqual). The row itself counts.
struct CountTask {
  std::string column;
  int k = 1;
  CountMode mode = CountMode::kGreater;
};

// Another row shares the row's c1 value and has c2 == anchor.
struct DoubleTask {
  std::string c1;
  std::string c2;
  Value anchor;
};

// Another row shares both the c1 and the c2 value.
struct DiamondTask {
  std::string c1;
  std::string c2;
};

using TaskKind = std::variant<UniqueTask, CountTask, DoubleTask, DiamondTask>;

std::string TaskName(const TaskKind& task);

// JSON form: {"type": "unique"|"count"|"double"|"diamond", "column": ...,
// "k": ..., "mode": "gt"|"eq", "c1": ..., "c2": ..., "anchor": ...}.
TaskKind ParseTaskJson(std::string_view json_text);
std::string TaskToJson(const TaskKind& task);
// Columns referenced by the task, in declaration order.
std::vector<std::string> TaskColumns(const TaskKind& task);
// Throws if a referenced column is absent, k < 1, c1 == c2 or the anchor is
// missing.
void ValidateTask(const TaskKind& task, const Schema& schema);

LabelVector LabelUnique(const Table& table, const std::string& column);
LabelVector LabelCount(const Table& table, const std::string& column, int k,
                       CountMode mode);
LabelVector LabelDouble(const Table& table, const std::string& c1,
                        const std::string& c2, const Value& anchor);
LabelVector LabelDiamond(const Table& table, const std::string& c1,
                         const std::string& c2);

LabelVector Label(const Table& table, const TaskKind& task);

// Proportion of positive labels; 0 for an empty vector.
double Prevalence(const LabelVector& labels);

// A pair T ⊆ T' whose shared row `row` changes label, demonstrating that the
// task is not row-local. The row has the same index in both tables.
struct ExtensionFlip {
  Table base;
  Table extended;
  std::size_t row = 0;
};

ExtensionFlip ExtensionFlipWitness(const TaskKind& task);

struct LabeledTable {
  Table table;
  LabelVector labels;
};

// Copy of `table` with an integer "label" column (or `label_column`) appended.
Table AppendLabelColumn(const Table& table, const LabelVector& labels,
                        const std::string& label_column = "label");

}  // namespace grable

#endif  // GRABLE_TASKS_H_
