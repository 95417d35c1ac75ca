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

#ifndef GRABLE_VALUE_H_
#define GRABLE_VALUE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace grable {

enum class ValueKind { kMissing, kText, kInteger, kReal, kTimestamp };

std::string_view ValueKindName(ValueKind kind);
// Accepts "text", "integer", "real", "timestamp". Throws grable::Error.
ValueKind ParseValueKind(std::string_view name);

// Seconds since the Unix epoch.
struct Timestamp {
  std::int64_t seconds = 0;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

// Tagged scalar cell value.
//
// operator== is structural: same kind and same payload, reals compared
// bitwise, and missing == missing. Labelers and constructors must use
// SameValue(), under which missing matches nothing.
class Value {
 public:
  Value() = default;

  static Value Text(std::string text) { return Value(Storage(std::move(text))); }
  static Value Integer(std::int64_t v) { return Value(Storage(v)); }
  static Value Real(double v) { return Value(Storage(v)); }
  static Value Time(std::int64_t seconds) {
    return Value(Storage(Timestamp{seconds}));
  }

  ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
  bool is_missing() const { return kind() == ValueKind::kMissing; }

  const std::string& text() const { return std::get<std::string>(data_); }
  std::int64_t integer() const { return std::get<std::int64_t>(data_); }
  double real() const { return std::get<double>(data_); }
  std::int64_t timestamp() const { return std::get<Timestamp>(data_).seconds; }

  // Numeric view of integer, real and timestamp values.
  std::optional<double> AsNumber() const;

  // CSV cell text. Missing renders as the empty string; reals use the
  // shortest representation that round-trips.
  std::string ToString() const;

  // Debug rendering that distinguishes kinds, e.g. "int:3", "text:a".
  std::string DebugString() const;

  std::size_t Hash() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  using Storage =
      std::variant<std::monostate, std::string, std::int64_t, double, Timestamp>;
  explicit Value(Storage data) : data_(std::move(data)) {}

  Storage data_;
};

// Identity used for value nodes and labels: never true if either is missing.
inline bool SameValue(const Value& a, const Value& b) {
  return !a.is_missing() && !b.is_missing() && a == b;
}

// Strict weak order over values (kind first, then payload; reals by bits).
bool ValueLess(const Value& a, const Value& b);

// Stable 64-bit FNV-1a hash of a byte string.
std::uint64_t HashBytes(std::string_view bytes);

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.Hash(); }
};

// Parses `cell` as `kind`. Empty cells are handled by the caller.
// Timestamps accept integer seconds or "YYYY-MM-DD[ T]HH:MM[:SS]" (UTC).
std::optional<Value> ParseValue(std::string_view cell, ValueKind kind);

}  // namespace grable

#endif  // GRABLE_VALUE_H_
