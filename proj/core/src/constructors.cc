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

#include "grable/constructors.h"

#include <unordered_map>

#include "grable/error.h"

namespace grable {
namespace {

const Schema& ValueSchema() {
  static const Schema kSchema({"value"});
  return kSchema;
}

std::vector<NodeId> AddRowNodes(const Table& table, GrableBuilder& b) {
  std::vector<NodeId> rows;
  rows.reserve(table.num_rows());
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    auto r = table.row(i);
    rows.push_back(b.AddNode(node_type::kRow, "", table.schema(), Row(r.begin(), r.end())));
  }
  return rows;
}

void AddIncidence(const Table& table, const std::set<std::string>& exclude,
                  const std::vector<NodeId>& rows, GrableBuilder& b) {
  for (std::size_t c = 0; c < table.num_columns(); ++c) {
    const std::string& column = table.schema().column(c);
    if (exclude.count(column)) continue;
    const std::string rel = IncidenceRelation(column);
    b.DeclareRelation(rel, true);
    std::unordered_map<Value, NodeId, ValueHash> nodes;
    for (std::size_t i = 0; i < table.num_rows(); ++i) {
      const Value& v = table.at(i, c);
      if (v.is_missing()) continue;
      auto it = nodes.find(v);
      if (it == nodes.end()) {
        it = nodes.emplace(v, b.AddNode(node_type::kValue, column, ValueSchema(), {v})).first;
      }
      b.AddEdge(rel, rows[i], it->second);
    }
  }
}

std::string JoinColumns(const std::set<std::string>& columns) {
  std::string out;
  for (const auto& c : columns) out += (out.empty() ? "" : ",") + c;
  return out;
}

}  // namespace

std::string IncidenceRelation(const std::string& column) { return "E_" + column; }

std::string PairRelation(const std::string& c1, const std::string& c2) {
  return "E_" + PairColumn(c1, c2);
}

std::string PairColumn(const std::string& c1, const std::string& c2) {
  return c1 + "+" + c2;
}

Grable BuildTrivial(const Table& table) {
  GrableBuilder b;
  b.SetRowMap(AddRowNodes(table, b));
  return std::move(b).Build({"trivial", {}});
}

Grable BuildIncidence(const Table& table, const std::set<std::string>& exclude_columns) {
  GrableBuilder b;
  auto rows = AddRowNodes(table, b);
  AddIncidence(table, exclude_columns, rows, b);
  b.SetRowMap(std::move(rows));
  return std::move(b).Build({"incidence", {{"exclude", JoinColumns(exclude_columns)}}});
}

Grable BuildExtendedIncidence(const Table& table, const std::string& ci,
                              const std::string& cj,
                              const std::set<std::string>& exclude_columns) {
  const std::size_t a = table.schema().Require(ci);
  const std::size_t bcol = table.schema().Require(cj);
  if (a == bcol) throw Error("extended incidence needs two distinct columns");
  GrableBuilder b;
  auto rows = AddRowNodes(table, b);
  AddIncidence(table, exclude_columns, rows, b);
  const std::string rel = PairRelation(ci, cj);
  const std::string tag = PairColumn(ci, cj);
  static const Schema kPairSchema({"first", "second"});
  b.DeclareRelation(rel, true);
  struct PairHash {
    std::size_t operator()(const std::pair<Value, Value>& p) const {
      return p.first.Hash() * 1000003u ^ p.second.Hash();
    }
  };
  std::unordered_map<std::pair<Value, Value>, NodeId, PairHash> pairs;
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    const Value& x = table.at(i, a);
    const Value& y = table.at(i, bcol);
    if (x.is_missing() || y.is_missing()) continue;
    auto it = pairs.find({x, y});
    if (it == pairs.end()) {
      it = pairs.emplace(std::pair{x, y},
                         b.AddNode(node_type::kPair, tag, kPairSchema, {x, y}))
               .first;
    }
    b.AddEdge(rel, rows[i], it->second);
  }
  b.SetRowMap(std::move(rows));
  return std::move(b).Build({"extended_incidence",
                             {{"ci", ci}, {"cj", cj},
                              {"exclude", JoinColumns(exclude_columns)}}});
}

Grable BuildCarte(const Table& table, const Featurizer& featurizer) {
  GrableBuilder b;
  for (std::size_t c = 0; c < table.num_columns(); ++c) {
    b.DeclareRelation(IncidenceRelation(table.schema().column(c)), false);
  }
  std::vector<NodeId> rows;
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    auto r = table.row(i);
    const NodeId row = b.AddNode(node_type::kRow, "", table.schema(), Row(r.begin(), r.end()));
    rows.push_back(row);
    for (std::size_t c = 0; c < table.num_columns(); ++c) {
      if (r[c].is_missing()) continue;
      const std::string& column = table.schema().column(c);
      const NodeId cell = b.AddNode(node_type::kCell, column, ValueSchema(), {r[c]},
                                    featurizer.Embed(column, r[c]));
      b.AddEdge(IncidenceRelation(column), row, cell);
    }
  }
  b.SetRowMap(std::move(rows));
  return std::move(b).Build({"carte", {{"featurizer", featurizer.name()}}});
}

Grable BuildTarte(const Table& table, const Featurizer& featurizer) {
  GrableBuilder b;
  b.DeclareRelation(relation::kAttention, true);
  b.DeclareRelation(relation::kRow, false);
  std::vector<NodeId> rows;
  const std::size_t m = table.num_columns();
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    auto r = table.row(i);
    const NodeId row = b.AddNode(node_type::kRow, "", table.schema(), Row(r.begin(), r.end()));
    rows.push_back(row);
    std::vector<NodeId> tokens;
    for (std::size_t c = 0; c < m; ++c) {
      const std::string& column = table.schema().column(c);
      tokens.push_back(b.AddNode(node_type::kToken, column, ValueSchema(), {r[c]},
                                 featurizer.Embed(column, r[c])));
      b.AddEdge(relation::kRow, row, tokens.back());
    }
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x + 1; y < m; ++y) b.AddEdge(relation::kAttention, tokens[x], tokens[y]);
    }
  }
  b.SetRowMap(std::move(rows));
  return std::move(b).Build({"tarte", {{"featurizer", featurizer.name()}}});
}

Grable BuildTabPfn(const Table& table, const Featurizer& featurizer) {
  GrableBuilder b;
  b.DeclareRelation(relation::kRow, true);
  b.DeclareRelation(relation::kColumn, true);
  const std::size_t m = table.num_columns();
  std::vector<NodeId> rows;
  std::vector<std::vector<NodeId>> cells_by_column(m);
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    auto r = table.row(i);
    const NodeId row = b.AddNode(node_type::kRow, "", table.schema(), Row(r.begin(), r.end()));
    rows.push_back(row);
    std::vector<NodeId> cells;
    for (std::size_t c = 0; c < m; ++c) {
      const std::string& column = table.schema().column(c);
      cells.push_back(b.AddNode(node_type::kCell, column, ValueSchema(), {r[c]},
                                featurizer.Embed(column, r[c])));
      b.AddEdge(relation::kRow, row, cells.back());
      cells_by_column[c].push_back(cells.back());
    }
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x + 1; y < m; ++y) b.AddEdge(relation::kRow, cells[x], cells[y]);
    }
  }
  for (const auto& column : cells_by_column) {
    for (std::size_t x = 0; x < column.size(); ++x) {
      for (std::size_t y = x + 1; y < column.size(); ++y) {
        b.AddEdge(relation::kColumn, column[x], column[y]);
      }
    }
  }
  b.SetRowMap(std::move(rows));
  return std::move(b).Build({"tabpfn", {{"featurizer", featurizer.name()}}});
}

}  // namespace grable
