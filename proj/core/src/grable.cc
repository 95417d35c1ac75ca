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

#include "grable/grable.h"

#include <algorithm>
#include <set>

#include "grable/error.h"

namespace grable {
namespace {

void BuildCsr(std::size_t n, const std::vector<Edge>& edges, bool by_target,
              std::vector<std::size_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++offsets[(by_target ? e.to : e.from) + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  targets.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  // Edges are sorted by (from, to), so out-lists come out ascending; in-lists
  // are filled in ascending `from` order for the same reason.
  for (const Edge& e : edges) {
    const NodeId key = by_target ? e.to : e.from;
    targets[cursor[key]++] = by_target ? e.from : e.to;
  }
}

}  // namespace

Relation::Relation(std::string name, bool symmetric, std::size_t num_nodes,
                   std::vector<Edge> edges)
    : name_(std::move(name)), symmetric_(symmetric), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    if (e.from >= num_nodes || e.to >= num_nodes) {
      throw Error("relation '" + name_ + "': edge (" + std::to_string(e.from) + ", " +
                  std::to_string(e.to) + ") has an endpoint outside the graph");
    }
  }
  BuildCsr(num_nodes, edges_, false, out_offsets_, out_targets_);
  BuildCsr(num_nodes, edges_, true, in_offsets_, in_sources_);
}

Grable::Grable(std::vector<NodeRecord> nodes, std::vector<Relation> relations,
               std::vector<NodeId> row_map, Provenance provenance)
    : nodes_(std::move(nodes)),
      relations_(std::move(relations)),
      row_map_(std::move(row_map)),
      provenance_(std::move(provenance)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != i) throw Error("node ids must be 0..n-1 in order");
    if (nodes_[i].features.size() != nodes_[i].local_schema.size()) {
      throw Error("node " + std::to_string(i) + ": features do not match its local schema");
    }
  }
  std::sort(relations_.begin(), relations_.end(),
            [](const Relation& a, const Relation& b) { return a.name() < b.name(); });
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    const Relation& r = relations_[i];
    if (i > 0 && relations_[i - 1].name() == r.name()) {
      throw Error("duplicate relation '" + r.name() + "'");
    }
    if (!r.edges().empty() && r.edges().back().from >= nodes_.size()) {
      throw Error("relation '" + r.name() + "' references a missing node");
    }
    for (const Edge& e : r.edges()) {
      if (e.to >= nodes_.size()) {
        throw Error("relation '" + r.name() + "' references a missing node");
      }
      if (r.symmetric() &&
          !std::binary_search(r.edges().begin(), r.edges().end(), Edge{e.to, e.from})) {
        throw Error("symmetric relation '" + r.name() + "' lacks a reverse edge");
      }
    }
  }
  std::vector<bool> seen(nodes_.size(), false);
  std::size_t row_nodes = 0;
  for (const auto& n : nodes_) row_nodes += n.type == node_type::kRow;
  for (NodeId v : row_map_) {
    if (v >= nodes_.size() || nodes_[v].type != node_type::kRow || seen[v]) {
      throw Error("row map is not a bijection onto row nodes");
    }
    seen[v] = true;
  }
  if (row_nodes != row_map_.size()) throw Error("row map does not cover every row node");
}

std::size_t Grable::num_edges() const {
  std::size_t total = 0;
  for (const auto& r : relations_) total += r.num_edges();
  return total;
}

const Relation* Grable::FindRelation(const std::string& name) const {
  auto it = std::lower_bound(
      relations_.begin(), relations_.end(), name,
      [](const Relation& r, const std::string& n) { return r.name() < n; });
  return it != relations_.end() && it->name() == name ? &*it : nullptr;
}

const Relation& Grable::relation(const std::string& name) const {
  const Relation* r = FindRelation(name);
  if (!r) throw Error("unknown relation '" + name + "'");
  return *r;
}

std::vector<std::string> Grable::RelationNames() const {
  std::vector<std::string> names;
  for (const auto& r : relations_) names.push_back(r.name());
  return names;
}

bool Grable::IsRowNode(NodeId id) const {
  return id < nodes_.size() && nodes_[id].type == node_type::kRow;
}

std::vector<std::string> Grable::NodeTypes() const {
  std::set<std::string> types;
  for (const auto& n : nodes_) types.insert(n.type);
  return {types.begin(), types.end()};
}

NodeId GrableBuilder::AddNode(std::string type, std::string column, Schema local_schema,
                              Row features, std::vector<double> embedding) {
  NodeRecord n;
  n.id = static_cast<NodeId>(nodes_.size());
  n.type = std::move(type);
  n.column = std::move(column);
  n.local_schema = std::move(local_schema);
  n.features = std::move(features);
  n.embedding = std::move(embedding);
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

void GrableBuilder::DeclareRelation(const std::string& name, bool symmetric) {
  auto [it, fresh] = relations_.try_emplace(name);
  if (fresh) it->second.symmetric = symmetric;
}

void GrableBuilder::AddEdge(const std::string& relation, NodeId from, NodeId to) {
  auto it = relations_.find(relation);
  if (it == relations_.end()) throw Error("relation '" + relation + "' not declared");
  it->second.edges.push_back({from, to});
  if (it->second.symmetric) it->second.edges.push_back({to, from});
}

Grable GrableBuilder::Build(Provenance provenance) && {
  std::vector<Relation> rels;
  for (auto& [name, pending] : relations_) {
    rels.emplace_back(name, pending.symmetric, nodes_.size(), std::move(pending.edges));
  }
  return Grable(std::move(nodes_), std::move(rels), std::move(row_map_),
                std::move(provenance));
}

Table RowFeatureTable(const Grable& grable) {
  if (grable.num_rows() == 0) return Table();
  Table out(grable.node(grable.row_node(0)).local_schema);
  for (NodeId v : grable.row_map()) out.AddRow(grable.node(v).features);
  return out;
}

Grable DisjointUnion(const Grable& a, const Grable& b) {
  const auto shift = static_cast<NodeId>(a.num_nodes());
  std::vector<NodeRecord> nodes = a.nodes();
  for (NodeRecord n : b.nodes()) {
    n.id += shift;
    nodes.push_back(std::move(n));
  }
  std::map<std::string, std::pair<bool, std::vector<Edge>>> merged;
  for (const auto& r : a.relations()) {
    auto& m = merged[r.name()];
    m.first = r.symmetric();
    m.second = r.edges();
  }
  for (const auto& r : b.relations()) {
    auto [it, fresh] = merged.try_emplace(r.name());
    it->second.first = fresh ? r.symmetric() : it->second.first && r.symmetric();
    for (Edge e : r.edges()) it->second.second.push_back({e.from + shift, e.to + shift});
  }
  std::vector<Relation> rels;
  for (auto& [name, m] : merged) {
    rels.emplace_back(name, m.first, nodes.size(), std::move(m.second));
  }
  std::vector<NodeId> row_map = a.row_map();
  for (NodeId v : b.row_map()) row_map.push_back(v + shift);
  Provenance p{"union", {{"left", a.provenance().constructor},
                         {"right", b.provenance().constructor}}};
  return Grable(std::move(nodes), std::move(rels), std::move(row_map), std::move(p));
}

Grable RelabelNodes(const Grable& grable, std::span<const NodeId> permutation) {
  const std::size_t n = grable.num_nodes();
  if (permutation.size() != n) throw Error("permutation size mismatch");
  std::vector<NodeRecord> nodes(n);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId p = permutation[i];
    if (p >= n || hit[p]) throw Error("not a permutation");
    hit[p] = true;
    nodes[p] = grable.node(static_cast<NodeId>(i));
    nodes[p].id = p;
  }
  std::vector<Relation> rels;
  for (const auto& r : grable.relations()) {
    std::vector<Edge> edges;
    for (Edge e : r.edges()) edges.push_back({permutation[e.from], permutation[e.to]});
    rels.emplace_back(r.name(), r.symmetric(), n, std::move(edges));
  }
  std::vector<NodeId> row_map;
  for (NodeId v : grable.row_map()) row_map.push_back(permutation[v]);
  return Grable(std::move(nodes), std::move(rels), std::move(row_map), grable.provenance());
}

}  // namespace grable
