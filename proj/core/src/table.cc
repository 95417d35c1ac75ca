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

#include "grable/table.h"

#include "grable/error.h"

namespace grable {

Schema::Schema(std::vector<std::string> columns) : columns_(std::move(columns)) {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (!index_.emplace(columns_[i], i).second) {
      throw Error("duplicate column name '" + columns_[i] + "'");
    }
  }
}

std::optional<std::size_t> Schema::IndexOf(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Schema::Require(const std::string& name) const {
  if (auto i = IndexOf(name)) return *i;
  throw Error("column '" + name + "' not in schema");
}

Table::Table(Schema schema, std::vector<Row> rows) : schema_(std::move(schema)) {
  rows_.reserve(rows.size());
  for (auto& r : rows) AddRow(std::move(r));
}

void Table::AddRow(Row row) {
  if (row.size() != schema_.size()) {
    throw Error("row arity " + std::to_string(row.size()) +
                " does not match schema arity " + std::to_string(schema_.size()));
  }
  rows_.push_back(std::move(row));
}

Table Table::Select(std::span<const std::size_t> indices) const {
  Table out(schema_);
  out.rows_.reserve(indices.size());
  for (std::size_t i : indices) out.rows_.push_back(rows_.at(i));
  return out;
}

std::vector<Value> Table::ColumnValues(std::size_t column) const {
  std::vector<Value> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[column]);
  return out;
}

}  // namespace grable
