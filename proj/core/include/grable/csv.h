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

#ifndef GRABLE_CSV_H_
#define GRABLE_CSV_H_

#include <map>
#include <string>
#include <string_view>

#include "grable/table.h"
#include "grable/value.h"

namespace grable {

// Per-column value kinds. Columns without a hint are parsed as text.
using TypeHints = std::map<std::string, ValueKind>;

// Parses comma-delimited UTF-8 text with a header row. Fields may be quoted
// with double quotes; a doubled quote inside a quoted field is a literal
// quote. An unquoted empty cell is missing; a quoted empty cell is the empty
// text value. Throws ParseError carrying the 1-based line number.
Table ParseTable(std::string_view csv_text, const TypeHints& type_hints = {});

// Inverse of ParseTable for tables whose text cells are never empty-missing
// ambiguous. Timestamps are written as integer seconds.
std::string WriteTable(const Table& table);

// Reads a {"column": "kind"} JSON object.
TypeHints ParseTypeHintsJson(std::string_view json_text);

Table ReadTableFile(const std::string& path, const TypeHints& type_hints = {});
void WriteTableFile(const Table& table, const std::string& path);

}  // namespace grable

#endif  // GRABLE_CSV_H_
