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

#ifndef GRABLE_DATAGEN_H_
#define GRABLE_DATAGEN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grable/table.h"
#include "grable/tasks.h"

namespace grable {

// Twenty European cities used when GenConfig::cities is left empty.
const std::vector<std::string>& DefaultCities();

struct GenConfig {
  std::size_t n_rows = 8000;
  std::size_t n_cards = 2500;
  std::size_t n_merchants = 3500;
  double online_share = 0.15;
  std::vector<std::string> cities = DefaultCities();
  // Zipf exponent over popularity ranks.
  double powerlaw_exponent = 1.2;
  // Maximum occurrences of any one card or merchant id; 0 disables the cap.
  std::size_t powerlaw_cap = 50;
  std::uint64_t seed = 0;
  // Seeds the merchant table and the id popularity ranking. Defaults to seed,
  // which makes independently seeded splits share no structure.
  std::optional<std::uint64_t> population_seed;

  // Throws grable::Error on violated invariants.
  void Validate() const;
};

GenConfig ParseGenConfigJson(std::string_view json_text);
std::string GenConfigToJson(const GenConfig& config);

// Train / validation / test sizes of the reference synthetic transactions.
GenConfig SyntheticTrainConfig(std::uint64_t seed);
GenConfig SyntheticValidationConfig(std::uint64_t seed);
GenConfig SyntheticTestConfig(std::uint64_t seed);

// Columns: id (integer, 1..n), card_id (text, C%06d), merchant_id (integer),
// merchant_city (text, ONLINE for online merchants).
Table GenerateTransactions(const GenConfig& config);

struct StressSpec {
  std::optional<TaskKind> task;
  std::uint64_t seed = 0;
  // Column reassigned 1..n after shuffling, if present in the schema.
  std::string id_column = "id";
};

StressSpec ParseStressSpecJson(std::string_view json_text);

// Builds a table on which the row-local shortcut of the task is
// uninformative relative to `reference` (normally the training table), and
// labels it with the ground-truth labeler.
LabeledTable GenerateStressSet(const StressSpec& spec, const Table& reference);
// Regenerates the reference from `base` and delegates.
LabeledTable GenerateStressSet(const StressSpec& spec, const GenConfig& base);

}  // namespace grable

#endif  // GRABLE_DATAGEN_H_
