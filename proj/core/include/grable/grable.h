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

#ifndef GRABLE_GRABLE_H_
#define GRABLE_GRABLE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grable/table.h"

namespace grable {

using NodeId = std::uint32_t;

namespace node_type {
inline constexpr char kRow[] = "row";
inline constexpr char kValue[] = "value";
inline constexpr char kPair[] = "pair";
inline constexpr char kCell[] = "cell";
inline constexpr char kToken[] = "token";
}  // namespace node_type

struct NodeRecord {
  NodeId id = 0;
  std::string type;
  // Column tag for value, cell and token nodes; "c1+c2" for pair nodes.
  std::string column;
  Schema local_schema;
  Row features;
  // Featurizer output, empty when the constructor does not embed.
  std::vector<double> embedding;
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A typed edge relation with sorted out- and in-adjacency.
class Relation {
 public:
  Relation() = default;
  Relation(std::string name, bool symmetric, std::size_t num_nodes,
           std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  bool symmetric() const { return symmetric_; }
  // Distinct directed edges, sorted.
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  // N(v) = {u : (v, u) in E}, ascending.
  std::span<const NodeId> OutNeighbors(NodeId v) const {
    return {out_targets_.data() + out_offsets_[v],
            out_offsets_[v + 1] - out_offsets_[v]};
  }
  // {u : (u, v) in E}, ascending.
  std::span<const NodeId> InNeighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v],
            in_offsets_[v + 1] - in_offsets_[v]};
  }

 private:
  std::string name_;
  bool symmetric_ = false;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
};

struct Provenance {
  std::string constructor;
  std::map<std::string, std::string> parameters;
};

// Typed heterogeneous graph lifted from a table. Immutable once built.
class Grable {
 public:
  Grable() = default;
  // Validates the invariants: node ids are 0..n-1 in order, edge endpoints
  // exist, symmetric relations are closed under reversal and row_map is a
  // bijection onto the nodes of type "row".
  Grable(std::vector<NodeRecord> nodes, std::vector<Relation> relations,
         std::vector<NodeId> row_map, Provenance provenance);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_rows() const { return row_map_.size(); }
  std::size_t num_edges() const;

  const NodeRecord& node(NodeId id) const { return nodes_[id]; }
  const std::vector<NodeRecord>& nodes() const { return nodes_; }

  // Relations sorted by name.
  const std::vector<Relation>& relations() const { return relations_; }
  const Relation* FindRelation(const std::string& name) const;
  // Throws if absent.
  const Relation& relation(const std::string& name) const;
  std::vector<std::string> RelationNames() const;

  const std::vector<NodeId>& row_map() const { return row_map_; }
  NodeId row_node(std::size_t row) const { return row_map_[row]; }
  bool IsRowNode(NodeId id) const;

  const Provenance& provenance() const { return provenance_; }

  // Sorted distinct node types present.
  std::vector<std::string> NodeTypes() const;

 private:
  std::vector<NodeRecord> nodes_;
  std::vector<Relation> relations_;
  std::vector<NodeId> row_map_;
  Provenance provenance_;
};

// Incrementally assembles a Grable.
class GrableBuilder {
 public:
  NodeId AddNode(std::string type, std::string column, Schema local_schema,
                 Row features, std::vector<double> embedding = {});
  // Declares a relation so that it exists even when it ends up empty.
  void DeclareRelation(const std::string& name, bool symmetric);
  // Adds (from, to) and, for symmetric relations, (to, from).
  void AddEdge(const std::string& relation, NodeId from, NodeId to);
  void SetRowMap(std::vector<NodeId> row_map) { row_map_ = std::move(row_map); }

  Grable Build(Provenance provenance) &&;

  std::size_t num_nodes() const { return nodes_.size(); }

 private:
  struct PendingRelation {
    bool symmetric = false;
    std::vector<Edge> edges;
  };
  std::vector<NodeRecord> nodes_;
  std::map<std::string, PendingRelation> relations_;
  std::vector<NodeId> row_map_;
};

// Row-node features reassembled into a table (row order = row_map order).
// The schema is the first row node's local schema.
Table RowFeatureTable(const Grable& grable);

// Node-disjoint union; nodes of `b` are shifted by a.num_nodes(). Relations
// with equal names are merged. The row map is a's rows followed by b's.
Grable DisjointUnion(const Grable& a, const Grable& b);

// Same graph with node i renamed to permutation[i].
Grable RelabelNodes(const Grable& grable, std::span<const NodeId> permutation);

}  // namespace grable

#endif  // GRABLE_GRABLE_H_
