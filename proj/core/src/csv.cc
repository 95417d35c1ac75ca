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

#include "grable/csv.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "grable/error.h"
#include "json_util.h"

namespace grable {
namespace {

struct Field {
  std::string text;
  bool quoted = false;
};

// Streams RFC 4180 records, tracking the line each record starts on.
class CsvReader {
 public:
  explicit CsvReader(std::string_view text) : text_(text) {
    // UTF-8 byte order mark.
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  // False at end of input. Blank lines are skipped.
  bool Next(std::vector<Field>& fields, std::size_t& line) {
    fields.clear();
    while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) return false;
    line = line_;
    Field field;
    bool in_quotes = false;
    bool after_quote = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (in_quotes) {
        if (c == '"') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
            field.text.push_back('"');
            pos_ += 2;
            continue;
          }
          in_quotes = false;
          after_quote = true;
          ++pos_;
          continue;
        }
        if (c == '\n') ++line_;
        field.text.push_back(c);
        ++pos_;
        continue;
      }
      if (c == ',') {
        fields.push_back(std::move(field));
        field = Field();
        after_quote = false;
        ++pos_;
        continue;
      }
      if (c == '\r' || c == '\n') {
        if (c == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') ++pos_;
        ++pos_;
        ++line_;
        fields.push_back(std::move(field));
        return true;
      }
      if (c == '"' && field.text.empty() && !field.quoted) {
        in_quotes = true;
        field.quoted = true;
        ++pos_;
        continue;
      }
      if (after_quote) {
        throw ParseError("unexpected character after closing quote", line);
      }
      field.text.push_back(c);
      ++pos_;
    }
    if (in_quotes) throw ParseError("unterminated quoted field", line);
    fields.push_back(std::move(field));
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool NeedsQuoting(const std::string& s) {
  return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Table ParseTable(std::string_view csv_text, const TypeHints& type_hints) {
  CsvReader reader(csv_text);
  std::vector<Field> fields;
  std::size_t line = 1;
  if (!reader.Next(fields, line)) throw ParseError("missing header row", 1);

  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (auto& f : fields) {
    if (!seen.insert(f.text).second) {
      throw ParseError("duplicate header '" + f.text + "'", line);
    }
    names.push_back(f.text);
  }
  Schema schema(names);
  for (const auto& [column, kind] : type_hints) {
    if (!schema.Contains(column)) {
      throw ParseError("type hint for unknown column '" + column + "'", line);
    }
  }
  std::vector<ValueKind> kinds(names.size(), ValueKind::kText);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (auto it = type_hints.find(names[i]); it != type_hints.end()) kinds[i] = it->second;
  }

  Table table(schema);
  while (reader.Next(fields, line)) {
    if (fields.size() != names.size()) {
      throw ParseError("expected " + std::to_string(names.size()) + " cells, found " +
                           std::to_string(fields.size()),
                       line);
    }
    Row row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const Field& f = fields[i];
      if (f.text.empty()) {
        row.push_back(f.quoted && kinds[i] == ValueKind::kText ? Value::Text("")
                                                               : Value());
        continue;
      }
      auto v = ParseValue(f.text, kinds[i]);
      if (!v) {
        throw ParseError("cannot parse '" + f.text + "' as " +
                             std::string(ValueKindName(kinds[i])) + " in column '" +
                             names[i] + "'",
                         line);
      }
      row.push_back(std::move(*v));
    }
    table.AddRow(std::move(row));
  }
  return table;
}

std::string WriteTable(const Table& table) {
  std::string out;
  const auto& schema = table.schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (i) out.push_back(',');
    out += NeedsQuoting(schema.column(i)) ? Quote(schema.column(i)) : schema.column(i);
  }
  out.push_back('\n');
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      const Value& v = row[i];
      if (v.kind() == ValueKind::kText && v.text().empty()) {
        out += "\"\"";
        continue;
      }
      std::string s = v.ToString();
      out += NeedsQuoting(s) ? Quote(s) : s;
    }
    out.push_back('\n');
  }
  return out;
}

TypeHints ParseTypeHintsJson(std::string_view json_text) {
  auto json = internal::ParseJson(json_text, "type hints");
  if (!json.is_object()) throw Error("type hints must be a JSON object");
  TypeHints hints;
  for (auto it = json.begin(); it != json.end(); ++it) {
    hints[it.key()] = ParseValueKind(it.value().get<std::string>());
  }
  return hints;
}

Table ReadTableFile(const std::string& path, const TypeHints& type_hints) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseTable(ss.str(), type_hints);
}

void WriteTableFile(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << WriteTable(table);
}

}  // namespace grable
