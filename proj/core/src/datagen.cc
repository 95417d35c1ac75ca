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

#include "grable/datagen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <unordered_map>

#include "grable/error.h"
#include "grable/rng.h"
#include "json_util.h"

namespace grable {
namespace {

using internal::Json;

// Bounded Zipf sampler over ids 0..n-1 with a per-id occurrence cap.
class CappedZipf {
 public:
  CappedZipf(std::size_t n, double exponent, std::size_t cap,
             std::vector<std::size_t> rank_to_id)
      : cap_(cap), rank_to_id_(std::move(rank_to_id)), counts_(n, 0), cdf_(n) {
    double total = 0;
    for (std::size_t r = 0; r < n; ++r) {
      total += std::pow(static_cast<double>(r + 1), -exponent);
      cdf_[r] = total;
    }
    for (double& c : cdf_) c /= total;
  }

  void Count(std::size_t id) { ++counts_[id]; }

  std::size_t Draw(Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const double u = rng.Uniform();
      auto rank = static_cast<std::size_t>(
          std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
      rank = std::min(rank, cdf_.size() - 1);
      const std::size_t id = rank_to_id_[rank];
      if (Available(id)) return Take(id);
    }
    // Heavy head exhausted; fall back to a uniform pick among ids with room.
    std::size_t id = rng.Index(counts_.size());
    while (!Available(id)) id = (id + 1) % counts_.size();
    return Take(id);
  }

 private:
  bool Available(std::size_t id) const { return cap_ == 0 || counts_[id] < cap_; }
  std::size_t Take(std::size_t id) {
    ++counts_[id];
    return id;
  }

  std::size_t cap_;
  std::vector<std::size_t> rank_to_id_;
  std::vector<std::size_t> counts_;
  std::vector<double> cdf_;
};

std::vector<std::size_t> Permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.Shuffle(std::span<std::size_t>(p));
  return p;
}

std::string CardId(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "C%06zu", i);
  return buf;
}

// Values of the same kind as `column` in `reference` that do not occur there.
class FreshValues {
 public:
  FreshValues(const Table& reference, std::size_t column) {
    for (std::size_t i = 0; i < reference.num_rows(); ++i) {
      const Value& v = reference.at(i, column);
      if (v.is_missing()) continue;
      if (kind_ == ValueKind::kMissing) kind_ = v.kind();
      used_.insert(v.DebugString());
      if (auto x = v.AsNumber()) max_ = std::max(max_, *x);
    }
    if (kind_ == ValueKind::kMissing) kind_ = ValueKind::kText;
  }

  Value Next() {
    for (;;) {
      ++counter_;
      Value v;
      switch (kind_) {
        case ValueKind::kInteger:
          v = Value::Integer(static_cast<std::int64_t>(max_) + counter_);
          break;
        case ValueKind::kReal:
          v = Value::Real(std::floor(max_) + static_cast<double>(counter_));
          break;
        case ValueKind::kTimestamp:
          v = Value::Time(static_cast<std::int64_t>(max_) + counter_);
          break;
        default:
          v = Value::Text("S" + std::to_string(counter_));
      }
      if (used_.insert(v.DebugString()).second) return v;
    }
  }

 private:
  ValueKind kind_ = ValueKind::kMissing;
  std::set<std::string> used_;
  double max_ = 0;
  std::int64_t counter_ = 0;
};

// Reference rows grouped by their value in `column`, in first-seen order.
struct Groups {
  std::vector<Value> values;
  std::vector<std::vector<std::size_t>> rows;
};

Groups GroupBy(const Table& table, std::size_t column) {
  Groups g;
  std::unordered_map<Value, std::size_t, ValueHash> index;
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    const Value& v = table.at(i, column);
    if (v.is_missing()) throw Error("reference table has a missing task value");
    auto [it, fresh] = index.try_emplace(v, g.values.size());
    if (fresh) {
      g.values.push_back(v);
      g.rows.emplace_back();
    }
    g.rows[it->second].push_back(i);
  }
  return g;
}

// Emits `count` rows carrying `value` in `column`, the other cells copied
// from the template rows in rotation.
void EmitGroup(const Table& reference, const std::vector<std::size_t>& templates,
               std::size_t column, const Value& value, std::size_t count,
               std::vector<Row>& out) {
  for (std::size_t j = 0; j < count; ++j) {
    auto src = reference.row(templates[j % templates.size()]);
    Row r(src.begin(), src.end());
    r[column] = value;
    out.push_back(std::move(r));
  }
}

std::vector<Row> StressUnique(const UniqueTask& t, const Table& ref) {
  const std::size_t c = ref.schema().Require(t.column);
  Groups g = GroupBy(ref, c);
  std::vector<Row> out;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    EmitGroup(ref, g.rows[i], c, g.values[i], g.rows[i].size() >= 2 ? 1 : 2, out);
  }
  return out;
}

std::vector<Row> StressCount(const CountTask& t, const Table& ref, Rng& rng) {
  const std::size_t c = ref.schema().Require(t.column);
  const auto k = static_cast<std::size_t>(t.k);
  Groups g = GroupBy(ref, c);
  std::vector<Row> out;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const std::size_t f = g.rows[i].size();
    std::size_t m;
    if (t.mode == CountMode::kGreater) {
      m = f > k ? 1 + rng.Index(k) : k + 1;
    } else {
      m = f == k ? k + 1 : k;
    }
    EmitGroup(ref, g.rows[i], c, g.values[i], m, out);
  }
  return out;
}

std::vector<Row> StressDouble(const DoubleTask& t, const Table& ref, Rng& rng) {
  const std::size_t a = ref.schema().Require(t.c1);
  const std::size_t b = ref.schema().Require(t.c2);
  Value other;
  for (std::size_t i = 0; i < ref.num_rows() && other.is_missing(); ++i) {
    const Value& v = ref.at(i, b);
    if (!v.is_missing() && !SameValue(v, t.anchor)) other = v;
  }
  if (other.is_missing()) {
    FreshValues fresh(ref, b);
    other = fresh.Next();
  }
  // One unit = four c1 groups of two rows each:
  //   [anchor, other] -> (0, 1)   twice
  //   [anchor, anchor] -> (1, 1)
  //   [other, other]   -> (0, 0)
  // Each c2 value then has two positives and two negatives per unit, and
  // each template row appears once as a positive and once as a negative.
  const std::size_t units = std::max<std::size_t>(26, (ref.num_rows() + 7) / 8);
  std::vector<std::size_t> order = Permutation(ref.num_rows(), rng);
  FreshValues fresh(ref, a);
  std::vector<Row> out;
  std::size_t next = 0;
  auto emit = [&](const Value& g, const Value& c2, std::size_t tmpl) {
    auto src = ref.row(order[tmpl % order.size()]);
    Row r(src.begin(), src.end());
    r[a] = g;
    r[b] = c2;
    out.push_back(std::move(r));
  };
  for (std::size_t u = 0; u < units; ++u, next += 4) {
    const Value g1 = fresh.Next(), g2 = fresh.Next(), g3 = fresh.Next(),
                g4 = fresh.Next();
    // Positives use templates next..next+3 in order, as do negatives.
    emit(g1, t.anchor, next + 0);  // neg
    emit(g1, other, next + 0);     // pos
    emit(g2, t.anchor, next + 1);  // neg
    emit(g2, other, next + 1);     // pos
    emit(g3, t.anchor, next + 2);  // pos
    emit(g3, t.anchor, next + 3);  // pos
    emit(g4, other, next + 2);     // neg
    emit(g4, other, next + 3);     // neg
  }
  return out;
}

std::vector<Row> StressDiamond(const DiamondTask& t, const Table& ref) {
  const std::size_t a = ref.schema().Require(t.c1);
  const std::size_t b = ref.schema().Require(t.c2);
  Groups g = GroupBy(ref, a);
  FreshValues fresh(ref, b);
  std::vector<Row> out;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    // Two rows on a duplicated pair, two rows on singleton pairs.
    const std::size_t units =
        std::max<std::size_t>(1, (g.rows[i].size() + 2) / 4);
    for (std::size_t u = 0; u < units; ++u) {
      const Value dup = fresh.Next();
      const Value s1 = fresh.Next();
      const Value s2 = fresh.Next();
      std::size_t base = 4 * u;
      for (const Value* c2 : {&dup, &dup, &s1, &s2}) {
        auto src = ref.row(g.rows[i][base++ % g.rows[i].size()]);
        Row r(src.begin(), src.end());
        r[b] = *c2;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& DefaultCities() {
  static const std::vector<std::string> kCities = {
      "Amsterdam", "Athens",  "Barcelona", "Berlin", "Brussels",
      "Budapest",  "Copenhagen", "Dublin", "Helsinki", "Lisbon",
      "London",    "Madrid",  "Milan",     "Munich", "Oslo",
      "Paris",     "Prague",  "Rome",      "Stockholm", "Vienna"};
  return kCities;
}

void GenConfig::Validate() const {
  if (n_rows == 0) throw Error("n_rows must be positive");
  if (n_cards == 0) throw Error("n_cards must be positive");
  if (n_cards > n_rows) {
    throw Error("unsatisfiable coverage: n_cards (" + std::to_string(n_cards) +
                ") > n_rows (" + std::to_string(n_rows) + ")");
  }
  if (n_merchants == 0) throw Error("n_merchants must be positive");
  if (!(online_share >= 0 && online_share <= 1)) throw Error("online_share must lie in [0,1]");
  if (cities.empty()) throw Error("cities must be non-empty");
  if (!(powerlaw_exponent > 0) || !std::isfinite(powerlaw_exponent)) {
    throw Error("powerlaw_exponent must be positive");
  }
  if (powerlaw_cap > 0 &&
      (n_cards * powerlaw_cap < n_rows || n_merchants * powerlaw_cap < n_rows)) {
    throw Error("powerlaw_cap too small to place n_rows occurrences");
  }
}

GenConfig ParseGenConfigJson(std::string_view json_text) {
  using internal::Get;
  Json j = internal::ParseJson(json_text, "generator config");
  if (!j.is_object()) throw Error("generator config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "n_rows", "n_cards", "n_merchants", "online_share", "cities",
      "powerlaw_exponent", "powerlaw_cap", "seed", "population_seed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!kKnown.count(it.key())) throw Error("unknown generator field '" + it.key() + "'");
  }
  GenConfig c;
  c.n_rows = Get<std::size_t>(j, "n_rows", c.n_rows);
  c.n_cards = Get<std::size_t>(j, "n_cards", c.n_cards);
  c.n_merchants = Get<std::size_t>(j, "n_merchants", c.n_merchants);
  c.online_share = Get<double>(j, "online_share", c.online_share);
  c.cities = Get<std::vector<std::string>>(j, "cities", c.cities);
  c.powerlaw_exponent = Get<double>(j, "powerlaw_exponent", c.powerlaw_exponent);
  c.powerlaw_cap = Get<std::size_t>(j, "powerlaw_cap", c.powerlaw_cap);
  c.seed = Get<std::uint64_t>(j, "seed", c.seed);
  if (j.contains("population_seed") && !j["population_seed"].is_null()) {
    c.population_seed = j["population_seed"].get<std::uint64_t>();
  }
  c.Validate();
  return c;
}

std::string GenConfigToJson(const GenConfig& c) {
  Json j = {{"n_rows", c.n_rows},
            {"n_cards", c.n_cards},
            {"n_merchants", c.n_merchants},
            {"online_share", c.online_share},
            {"cities", c.cities},
            {"powerlaw_exponent", c.powerlaw_exponent},
            {"powerlaw_cap", c.powerlaw_cap},
            {"seed", c.seed}};
  if (c.population_seed) j["population_seed"] = *c.population_seed;
  return j.dump(2);
}

GenConfig SyntheticTrainConfig(std::uint64_t seed) {
  GenConfig c;
  c.seed = seed;
  return c;
}

GenConfig SyntheticValidationConfig(std::uint64_t seed) {
  GenConfig c;
  c.n_rows = 1000;
  c.n_cards = 350;
  c.n_merchants = 300;
  c.online_share = 0.12;
  c.seed = seed;
  return c;
}

GenConfig SyntheticTestConfig(std::uint64_t seed) {
  return SyntheticValidationConfig(seed);
}

Table GenerateTransactions(const GenConfig& config) {
  config.Validate();
  Rng population(Mix64(config.population_seed.value_or(config.seed) ^ 0x706f70ULL));
  Rng rng(Mix64(config.seed));

  std::vector<std::string> merchant_city(config.n_merchants);
  for (auto& city : merchant_city) {
    if (population.Bernoulli(config.online_share)) {
      city = "ONLINE";
    } else {
      city = config.cities[population.Index(config.cities.size())];
    }
  }
  CappedZipf cards(config.n_cards, config.powerlaw_exponent, config.powerlaw_cap,
                   Permutation(config.n_cards, population));
  CappedZipf merchants(config.n_merchants, config.powerlaw_exponent,
                       config.powerlaw_cap, Permutation(config.n_merchants, population));

  // Coverage: every card takes one uniformly chosen slot first.
  std::vector<std::size_t> card_of(config.n_rows);
  std::vector<std::size_t> slots = Permutation(config.n_rows, rng);
  std::vector<bool> covered(config.n_rows, false);
  for (std::size_t c = 0; c < config.n_cards; ++c) {
    card_of[slots[c]] = c;
    covered[slots[c]] = true;
    cards.Count(c);
  }
  for (std::size_t i = 0; i < config.n_rows; ++i) {
    if (!covered[i]) card_of[i] = cards.Draw(rng);
  }

  std::vector<Row> rows(config.n_rows);
  for (std::size_t i = 0; i < config.n_rows; ++i) {
    const std::size_t m = merchants.Draw(rng);
    rows[i] = {Value(), Value::Text(CardId(card_of[i] + 1)),
               Value::Integer(static_cast<std::int64_t>(m + 1)),
               Value::Text(merchant_city[m])};
  }
  rng.Shuffle(std::span<Row>(rows));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i][0] = Value::Integer(static_cast<std::int64_t>(i + 1));
  }
  return Table(Schema({"id", "card_id", "merchant_id", "merchant_city"}),
               std::move(rows));
}

StressSpec ParseStressSpecJson(std::string_view json_text) {
  Json j = internal::ParseJson(json_text, "stress spec");
  if (!j.is_object()) throw Error("stress spec must be a JSON object");
  StressSpec spec;
  if (j.contains("task") && !j["task"].is_null()) {
    spec.task = internal::TaskFromJsonObject(j["task"]);
  }
  spec.seed = internal::Get<std::uint64_t>(j, "seed", 0);
  spec.id_column = internal::Get<std::string>(j, "id_column", "id");
  if (!spec.task) throw Error("stress spec needs a task");
  return spec;
}

LabeledTable GenerateStressSet(const StressSpec& spec, const Table& reference) {
  if (!spec.task) throw Error("stress spec needs a task");
  ValidateTask(*spec.task, reference.schema());
  if (reference.empty()) throw Error("stress set needs a non-empty reference table");
  Rng rng(Mix64(spec.seed ^ 0x73747265ULL));
  std::vector<Row> rows = std::visit(
      [&](const auto& t) -> std::vector<Row> {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, UniqueTask>) {
          return StressUnique(t, reference);
        } else if constexpr (std::is_same_v<T, CountTask>) {
          return StressCount(t, reference, rng);
        } else if constexpr (std::is_same_v<T, DoubleTask>) {
          return StressDouble(t, reference, rng);
        } else {
          return StressDiamond(t, reference);
        }
      },
      *spec.task);
  rng.Shuffle(std::span<Row>(rows));
  if (auto id = reference.schema().IndexOf(spec.id_column)) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i][*id] = Value::Integer(static_cast<std::int64_t>(i + 1));
    }
  }
  LabeledTable out{Table(reference.schema(), std::move(rows)), {}};
  out.labels = Label(out.table, *spec.task);
  return out;
}

LabeledTable GenerateStressSet(const StressSpec& spec, const GenConfig& base) {
  return GenerateStressSet(spec, GenerateTransactions(base));
}

}  // namespace grable
