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

#include "json_util.h"

#include <cmath>

namespace grable::internal {

Json ValueToJson(const Value& value) {
  switch (value.kind()) {
    case ValueKind::kMissing:
      return nullptr;
    case ValueKind::kText:
      return value.text();
    case ValueKind::kInteger:
      return value.integer();
    case ValueKind::kReal:
      if (!std::isfinite(value.real())) return {{"real", value.ToString()}};
      return value.real();
    case ValueKind::kTimestamp:
      return {{"timestamp", value.timestamp()}};
  }
  return nullptr;
}

Value ValueFromJson(const Json& json) {
  if (json.is_null()) return Value();
  if (json.is_string()) return Value::Text(json.get<std::string>());
  if (json.is_number_integer()) return Value::Integer(json.get<std::int64_t>());
  if (json.is_number_float()) return Value::Real(json.get<double>());
  if (json.is_object() && json.contains("timestamp")) {
    return Value::Time(json.at("timestamp").get<std::int64_t>());
  }
  if (json.is_object() && json.contains("real")) {
    auto v = ParseValue(json.at("real").get<std::string>(), ValueKind::kReal);
    if (v) return *v;
  }
  throw Error("unsupported JSON value: " + json.dump());
}

Json TaskToJsonObject(const TaskKind& task) {
  return std::visit(
      [](const auto& t) -> Json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, UniqueTask>) {
          return {{"type", "unique"}, {"column", t.column}};
        } else if constexpr (std::is_same_v<T, CountTask>) {
          return {{"type", "count"},
                  {"column", t.column},
                  {"k", t.k},
                  {"mode", t.mode == CountMode::kGreater ? "gt" : "eq"}};
        } else if constexpr (std::is_same_v<T, DoubleTask>) {
          return {{"type", "double"},
                  {"c1", t.c1},
                  {"c2", t.c2},
                  {"anchor", ValueToJson(t.anchor)}};
        } else {
          return {{"type", "diamond"}, {"c1", t.c1}, {"c2", t.c2}};
        }
      },
      task);
}

TaskKind TaskFromJsonObject(const Json& json) {
  if (!json.is_object()) throw Error("task must be a JSON object");
  const auto type = Require<std::string>(json, "type");
  if (type == "unique") return UniqueTask{Require<std::string>(json, "column")};
  if (type == "count") {
    CountTask t;
    t.column = Require<std::string>(json, "column");
    t.k = Get<int>(json, "k", 1);
    if (t.k < 1) throw Error("count k must be >= 1, got " + std::to_string(t.k));
    const auto mode = Get<std::string>(json, "mode", "gt");
    if (mode == "gt") {
      t.mode = CountMode::kGreater;
    } else if (mode == "eq") {
      t.mode = CountMode::kEqual;
    } else {
      throw Error("count mode must be 'gt' or 'eq', got '" + mode + "'");
    }
    return t;
  }
  if (type == "double") {
    DoubleTask t;
    t.c1 = Require<std::string>(json, "c1");
    t.c2 = Require<std::string>(json, "c2");
    if (!json.contains("anchor")) throw Error("missing field 'anchor'");
    t.anchor = ValueFromJson(json.at("anchor"));
    return t;
  }
  if (type == "diamond") {
    return DiamondTask{Require<std::string>(json, "c1"), Require<std::string>(json, "c2")};
  }
  throw Error("unknown task type '" + type + "'");
}

Json PredicateToJson(const PredicateDef& p) {
  if (p.kind == PredicateDef::Kind::kNodeType) {
    return {{"name", p.name}, {"kind", "type"}, {"type", p.type}};
  }
  return {{"name", p.name},
          {"kind", "feature"},
          {"column", p.column},
          {"value", ValueToJson(p.value)}};
}

PredicateDef PredicateFromJson(const Json& json) {
  const auto kind = Require<std::string>(json, "kind");
  const auto name = Require<std::string>(json, "name");
  if (kind == "type") return TypePredicate(name, Require<std::string>(json, "type"));
  if (kind == "feature") {
    return FeaturePredicate(name, Require<std::string>(json, "column"),
                            ValueFromJson(json.at("value")));
  }
  throw Error("unknown predicate kind '" + kind + "'");
}

Json ParseJson(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(what + ": " + e.what());
  }
}

}  // namespace grable::internal
