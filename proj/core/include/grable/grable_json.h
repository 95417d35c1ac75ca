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

#ifndef GRABLE_GRABLE_JSON_H_
#define GRABLE_GRABLE_JSON_H_

#include <string>
#include <string_view>

#include "grable/grable.h"

namespace grable {

// {"format": "grable/1", "provenance": {...}, "nodes": [...],
//  "relations": [{"name", "symmetric", "edges": [[u, v], ...]}],
//  "row_map": [...]}
// Values are encoded as null (missing), string (text), integer, float
// (real) or {"timestamp": seconds}.
std::string GrableToJson(const Grable& grable, int indent = -1);
Grable GrableFromJson(std::string_view json_text);

}  // namespace grable

#endif  // GRABLE_GRABLE_JSON_H_
