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

#ifndef GRABLE_TABLE_H_
#define GRABLE_TABLE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "grable/value.h"

namespace grable {

// Ordered, duplicate-free column names.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<std::string> columns);

  std::size_t size() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  const std::string& column(std::size_t i) const { return columns_[i]; }
  const std::vector<std::string>& columns() const { return columns_; }

  std::optional<std::size_t> IndexOf(const std::string& name) const;
  // Like IndexOf but throws grable::Error naming the missing column.
  std::size_t Require(const std::string& name) const;
  bool Contains(const std::string& name) const { return IndexOf(name).has_value(); }

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.columns_ == b.columns_;
  }

 private:
  std::vector<std::string> columns_;
  std::unordered_map<std::string, std::size_t> index_;
};

// One value per schema column, in schema order.
using Row = std::vector<Value>;

// A multiset of rows over one schema. Row i has stable index i.
class Table {
 public:
  Table() = default;
  explicit Table(Schema schema) : schema_(std::move(schema)) {}
  Table(Schema schema, std::vector<Row> rows);

  const Schema& schema() const { return schema_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_columns() const { return schema_.size(); }
  bool empty() const { return rows_.empty(); }

  std::span<const Value> row(std::size_t i) const { return rows_[i]; }
  const std::vector<Row>& rows() const { return rows_; }
  const Value& at(std::size_t row, std::size_t column) const {
    return rows_[row][column];
  }

  // Throws if the row arity does not match the schema.
  void AddRow(Row row);

  // New table holding rows `indices` in the given order.
  Table Select(std::span<const std::size_t> indices) const;

  // Values of one column, row order.
  std::vector<Value> ColumnValues(std::size_t column) const;

  friend bool operator==(const Table& a, const Table& b) {
    return a.schema_ == b.schema_ && a.rows_ == b.rows_;
  }

 private:
  Schema schema_;
  std::vector<Row> rows_;
};

}  // namespace grable

#endif  // GRABLE_TABLE_H_
