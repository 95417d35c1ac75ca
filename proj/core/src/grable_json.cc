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

#include "grable/grable_json.h"

#include "grable/error.h"
#include "json_util.h"

namespace grable {

using internal::Json;

std::string GrableToJson(const Grable& grable, int indent) {
  Json nodes = Json::array();
  for (const auto& n : grable.nodes()) {
    Json features = Json::array();
    for (const auto& v : n.features) features.push_back(internal::ValueToJson(v));
    Json node = {{"id", n.id},
                 {"type", n.type},
                 {"column", n.column},
                 {"schema", n.local_schema.columns()},
                 {"features", features}};
    if (!n.embedding.empty()) node["embedding"] = n.embedding;
    nodes.push_back(std::move(node));
  }
  Json relations = Json::array();
  for (const auto& r : grable.relations()) {
    Json edges = Json::array();
    for (const Edge& e : r.edges()) edges.push_back({e.from, e.to});
    relations.push_back({{"name", r.name()}, {"symmetric", r.symmetric()}, {"edges", edges}});
  }
  Json j = {{"format", "grable/1"},
            {"provenance",
             {{"constructor", grable.provenance().constructor},
              {"parameters", grable.provenance().parameters}}},
            {"nodes", nodes},
            {"relations", relations},
            {"row_map", grable.row_map()}};
  return j.dump(indent);
}

Grable GrableFromJson(std::string_view json_text) {
  Json j = internal::ParseJson(json_text, "grable");
  try {
    if (j.value("format", "") != "grable/1") throw Error("not a grable/1 document");
    std::vector<NodeRecord> nodes;
    for (const auto& jn : j.at("nodes")) {
      NodeRecord n;
      n.id = jn.at("id").get<NodeId>();
      n.type = jn.at("type").get<std::string>();
      n.column = jn.value("column", "");
      n.local_schema = Schema(jn.at("schema").get<std::vector<std::string>>());
      for (const auto& v : jn.at("features")) n.features.push_back(internal::ValueFromJson(v));
      if (jn.contains("embedding")) n.embedding = jn["embedding"].get<std::vector<double>>();
      nodes.push_back(std::move(n));
    }
    std::vector<Relation> relations;
    for (const auto& jr : j.at("relations")) {
      std::vector<Edge> edges;
      for (const auto& e : jr.at("edges")) edges.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
      relations.emplace_back(jr.at("name").get<std::string>(), jr.value("symmetric", false),
                             nodes.size(), std::move(edges));
    }
    Provenance p;
    if (j.contains("provenance")) {
      p.constructor = j["provenance"].value("constructor", "");
      if (j["provenance"].contains("parameters")) {
        p.parameters = j["provenance"]["parameters"].get<std::map<std::string, std::string>>();
      }
    }
    return Grable(std::move(nodes), std::move(relations),
                  j.at("row_map").get<std::vector<NodeId>>(), std::move(p));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("grable: ") + e.what());
  }
}

}  // namespace grable
