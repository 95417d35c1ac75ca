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

#include "grable/value.h"

#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "grable/error.h"
#include "grable/rng.h"

namespace grable {

std::string_view ValueKindName(ValueKind kind) {
  switch (kind) {
    case ValueKind::kMissing: return "missing";
    case ValueKind::kText: return "text";
    case ValueKind::kInteger: return "integer";
    case ValueKind::kReal: return "real";
    case ValueKind::kTimestamp: return "timestamp";
  }
  return "unknown";
}

ValueKind ParseValueKind(std::string_view name) {
  if (name == "text" || name == "string") return ValueKind::kText;
  if (name == "integer" || name == "int") return ValueKind::kInteger;
  if (name == "real" || name == "float" || name == "double") return ValueKind::kReal;
  if (name == "timestamp" || name == "time") return ValueKind::kTimestamp;
  throw Error("unknown value kind '" + std::string(name) + "'");
}

std::optional<double> Value::AsNumber() const {
  switch (kind()) {
    case ValueKind::kInteger: return static_cast<double>(integer());
    case ValueKind::kReal: return real();
    case ValueKind::kTimestamp: return static_cast<double>(timestamp());
    default: return std::nullopt;
  }
}

namespace {

std::string FormatReal(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, end);
}

}  // namespace

std::string Value::ToString() const {
  switch (kind()) {
    case ValueKind::kMissing: return "";
    case ValueKind::kText: return text();
    case ValueKind::kInteger: return std::to_string(integer());
    case ValueKind::kReal: return FormatReal(real());
    case ValueKind::kTimestamp: return std::to_string(timestamp());
  }
  return "";
}

std::string Value::DebugString() const {
  switch (kind()) {
    case ValueKind::kMissing: return "missing";
    case ValueKind::kText: return "text:" + text();
    case ValueKind::kInteger: return "int:" + std::to_string(integer());
    case ValueKind::kReal: return "real:" + FormatReal(real());
    case ValueKind::kTimestamp: return "ts:" + std::to_string(timestamp());
  }
  return "?";
}

// FNV-1a, so hashes do not depend on the standard library build.
std::uint64_t HashBytes(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::size_t Value::Hash() const {
  std::uint64_t h = static_cast<std::uint64_t>(kind()) * 0x100000001b3ULL;
  switch (kind()) {
    case ValueKind::kMissing: break;
    case ValueKind::kText: h ^= HashBytes(text()); break;
    case ValueKind::kInteger: h ^= static_cast<std::uint64_t>(integer()); break;
    case ValueKind::kReal: h ^= std::bit_cast<std::uint64_t>(real()); break;
    case ValueKind::kTimestamp: h ^= static_cast<std::uint64_t>(timestamp()); break;
  }
  return static_cast<std::size_t>(Mix64(h));
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ValueKind::kMissing: return true;
    case ValueKind::kText: return a.text() == b.text();
    case ValueKind::kInteger: return a.integer() == b.integer();
    case ValueKind::kReal:
      return std::bit_cast<std::uint64_t>(a.real()) ==
             std::bit_cast<std::uint64_t>(b.real());
    case ValueKind::kTimestamp: return a.timestamp() == b.timestamp();
  }
  return false;
}

bool ValueLess(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case ValueKind::kMissing: return false;
    case ValueKind::kText: return a.text() < b.text();
    case ValueKind::kInteger: return a.integer() < b.integer();
    case ValueKind::kReal:
      return std::bit_cast<std::uint64_t>(a.real()) <
             std::bit_cast<std::uint64_t>(b.real());
    case ValueKind::kTimestamp: return a.timestamp() < b.timestamp();
  }
  return false;
}

namespace {

template <typename T>
std::optional<T> ParseNumber(std::string_view s) {
  T out{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

std::optional<std::int64_t> ParseDateTime(std::string_view s) {
  // YYYY-MM-DD[ T]HH:MM[:SS]
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  std::string buf(s);
  char sep = 0;
  int n = std::sscanf(buf.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d", &y, &mo, &d, &sep,
                      &h, &mi, &sec);
  if (n == 3 && buf.size() == 10) {
    h = mi = sec = 0;
  } else if (n < 6 || (sep != ' ' && sep != 'T')) {
    return std::nullopt;
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;
  const auto days = sys_days(ymd).time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + sec;
}

}  // namespace

std::optional<Value> ParseValue(std::string_view cell, ValueKind kind) {
  switch (kind) {
    case ValueKind::kMissing: return Value();
    case ValueKind::kText: return Value::Text(std::string(cell));
    case ValueKind::kInteger: {
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      if (auto v = ParseNumber<std::int64_t>(cell)) return Value::Integer(*v);
      return std::nullopt;
    }
    case ValueKind::kReal: {
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      if (auto v = ParseNumber<double>(cell)) return Value::Real(*v);
      return std::nullopt;
    }
    case ValueKind::kTimestamp: {
      if (auto v = ParseNumber<std::int64_t>(cell)) return Value::Time(*v);
      if (auto v = ParseDateTime(cell)) return Value::Time(*v);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace grable
