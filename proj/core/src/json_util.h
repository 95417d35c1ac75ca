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

#ifndef GRABLE_SRC_JSON_UTIL_H_
#define GRABLE_SRC_JSON_UTIL_H_

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "grable/error.h"
#include "grable/gml.h"
#include "grable/tasks.h"
#include "grable/value.h"

namespace grable::internal {

using Json = nlohmann::json;

Json ValueToJson(const Value& value);
Value ValueFromJson(const Json& json);

Json TaskToJsonObject(const TaskKind& task);
TaskKind TaskFromJsonObject(const Json& json);

Json PredicateToJson(const PredicateDef& predicate);
PredicateDef PredicateFromJson(const Json& json);

// Parses text, rethrowing library errors as grable::Error with `what`.
Json ParseJson(std::string_view text, const std::string& what);

template <typename T>
T Get(const Json& json, const char* key, T fallback) {
  auto it = json.find(key);
  if (it == json.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T Require(const Json& json, const char* key) {
  auto it = json.find(key);
  if (it == json.end()) throw Error(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace grable::internal

#endif  // GRABLE_SRC_JSON_UTIL_H_
