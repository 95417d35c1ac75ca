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

#include "grable/tasks.h"

#include <unordered_map>

#include "grable/error.h"
#include "grable/rng.h"
#include "json_util.h"

namespace grable {
namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Value, Value>& p) const {
    return Mix64(p.first.Hash() * 31 + p.second.Hash());
  }
};

std::size_t TaskColumn(const Table& table, const std::string& column) {
  const std::size_t c = table.schema().Require(column);
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    if (table.at(i, c).is_missing()) {
      throw Error("row " + std::to_string(i) + ": missing value in task column '" +
                  column + "'");
    }
  }
  return c;
}

std::vector<std::size_t> Frequencies(const Table& table, std::size_t c) {
  std::unordered_map<Value, std::size_t, ValueHash> count;
  for (std::size_t i = 0; i < table.num_rows(); ++i) ++count[table.at(i, c)];
  std::vector<std::size_t> out(table.num_rows());
  for (std::size_t i = 0; i < table.num_rows(); ++i) out[i] = count[table.at(i, c)];
  return out;
}

// A value of the same kind as `v` that differs from it.
Value OtherValue(const Value& v) {
  switch (v.kind()) {
    case ValueKind::kText:
      return Value::Text(v.text() + "'");
    case ValueKind::kInteger:
      return Value::Integer(v.integer() + 1);
    case ValueKind::kReal:
      return Value::Real(v.real() + 1.0);
    case ValueKind::kTimestamp:
      return Value::Time(v.timestamp() + 1);
    case ValueKind::kMissing:
      break;
  }
  return Value::Text("other");
}

}  // namespace

std::string TaskName(const TaskKind& task) {
  switch (task.index()) {
    case 0:
      return "unique";
    case 1:
      return std::get<CountTask>(task).mode == CountMode::kGreater ? "count_gt"
                                                                    : "count_eq";
    case 2:
      return "double";
    default:
      return "diamond";
  }
}

TaskKind ParseTaskJson(std::string_view json_text) {
  return internal::TaskFromJsonObject(internal::ParseJson(json_text, "task"));
}

std::string TaskToJson(const TaskKind& task) {
  return internal::TaskToJsonObject(task).dump();
}

std::vector<std::string> TaskColumns(const TaskKind& task) {
  return std::visit(
      [](const auto& t) -> std::vector<std::string> {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, UniqueTask> || std::is_same_v<T, CountTask>) {
          return {t.column};
        } else {
          return {t.c1, t.c2};
        }
      },
      task);
}

void ValidateTask(const TaskKind& task, const Schema& schema) {
  for (const auto& c : TaskColumns(task)) {
    if (c.empty()) throw Error("task column name is empty");
    if (!schema.empty()) schema.Require(c);
  }
  if (auto* t = std::get_if<CountTask>(&task); t && t->k < 1) {
    throw Error("count task needs k >= 1");
  }
  if (auto* t = std::get_if<DoubleTask>(&task)) {
    if (t->c1 == t->c2) throw Error("double task needs c1 != c2");
    if (t->anchor.is_missing()) throw Error("double task needs an anchor value");
  }
  if (auto* t = std::get_if<DiamondTask>(&task); t && t->c1 == t->c2) {
    throw Error("diamond task needs c1 != c2");
  }
}

LabelVector LabelUnique(const Table& table, const std::string& column) {
  auto freq = Frequencies(table, TaskColumn(table, column));
  LabelVector y(freq.size());
  for (std::size_t i = 0; i < freq.size(); ++i) y[i] = freq[i] == 1;
  return y;
}

LabelVector LabelCount(const Table& table, const std::string& column, int k,
                       CountMode mode) {
  if (k < 1) throw Error("count task needs k >= 1");
  auto freq = Frequencies(table, TaskColumn(table, column));
  const auto kk = static_cast<std::size_t>(k);
  LabelVector y(freq.size());
  for (std::size_t i = 0; i < freq.size(); ++i) {
    y[i] = mode == CountMode::kGreater ? freq[i] > kk : freq[i] == kk;
  }
  return y;
}

LabelVector LabelDouble(const Table& table, const std::string& c1,
                        const std::string& c2, const Value& anchor) {
  const std::size_t a = TaskColumn(table, c1);
  const std::size_t b = TaskColumn(table, c2);
  std::unordered_map<Value, std::size_t, ValueHash> anchored;
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    if (SameValue(table.at(i, b), anchor)) ++anchored[table.at(i, a)];
  }
  LabelVector y(table.num_rows());
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    auto it = anchored.find(table.at(i, a));
    const std::size_t m = it == anchored.end() ? 0 : it->second;
    y[i] = SameValue(table.at(i, b), anchor) ? m >= 2 : m >= 1;
  }
  return y;
}

LabelVector LabelDiamond(const Table& table, const std::string& c1,
                         const std::string& c2) {
  const std::size_t a = TaskColumn(table, c1);
  const std::size_t b = TaskColumn(table, c2);
  std::unordered_map<std::pair<Value, Value>, std::size_t, PairHash> count;
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    ++count[{table.at(i, a), table.at(i, b)}];
  }
  LabelVector y(table.num_rows());
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    y[i] = count[{table.at(i, a), table.at(i, b)}] >= 2;
  }
  return y;
}

LabelVector Label(const Table& table, const TaskKind& task) {
  ValidateTask(task, table.schema());
  return std::visit(
      [&](const auto& t) -> LabelVector {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, UniqueTask>) {
          return LabelUnique(table, t.column);
        } else if constexpr (std::is_same_v<T, CountTask>) {
          return LabelCount(table, t.column, t.k, t.mode);
        } else if constexpr (std::is_same_v<T, DoubleTask>) {
          return LabelDouble(table, t.c1, t.c2, t.anchor);
        } else {
          return LabelDiamond(table, t.c1, t.c2);
        }
      },
      task);
}

double Prevalence(const LabelVector& labels) {
  if (labels.empty()) return 0;
  std::size_t pos = 0;
  for (auto y : labels) pos += y != 0;
  return static_cast<double>(pos) / static_cast<double>(labels.size());
}

ExtensionFlip ExtensionFlipWitness(const TaskKind& task) {
  ValidateTask(task, Schema());
  Schema schema(TaskColumns(task));
  ExtensionFlip out{Table(schema), Table(schema), 0};
  auto both = [&](Row r) {
    out.base.AddRow(r);
    out.extended.AddRow(std::move(r));
  };
  const Value v = Value::Text("v");
  const Value w = Value::Text("w");
  if (std::holds_alternative<UniqueTask>(task)) {
    both({v});
    out.extended.AddRow({v});
  } else if (auto* t = std::get_if<CountTask>(&task)) {
    both({v});
    // gt: k sharing rows push the frequency to k+1. eq: reach exactly k, or
    // step past it when the lone row already has frequency k = 1.
    int extra = t->mode == CountMode::kGreater ? t->k : (t->k == 1 ? 1 : t->k - 1);
    for (int i = 0; i < extra; ++i) out.extended.AddRow({v});
  } else if (auto* t = std::get_if<DoubleTask>(&task)) {
    both({v, OtherValue(t->anchor)});
    out.extended.AddRow({v, t->anchor});
  } else {
    both({v, w});
    out.extended.AddRow({v, w});
  }
  return out;
}

Table AppendLabelColumn(const Table& table, const LabelVector& labels,
                        const std::string& label_column) {
  if (labels.size() != table.num_rows()) {
    throw Error("label count " + std::to_string(labels.size()) + " != row count " +
                std::to_string(table.num_rows()));
  }
  auto columns = table.schema().columns();
  columns.push_back(label_column);
  Table out{Schema(std::move(columns))};
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    Row r(table.row(i).begin(), table.row(i).end());
    r.push_back(Value::Integer(labels[i]));
    out.AddRow(std::move(r));
  }
  return out;
}

}  // namespace grable
