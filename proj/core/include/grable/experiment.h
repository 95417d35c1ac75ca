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

#ifndef GRABLE_EXPERIMENT_H_
#define GRABLE_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "grable/baseline.h"
#include "grable/csv.h"
#include "grable/datagen.h"
#include "grable/grable.h"
#include "grable/mpnn.h"
#include "grable/tasks.h"

namespace grable {

enum class ConstructorKind { kTrivial, kIncidence, kExtendedIncidence, kNfa };
enum class PredictorKind { kMpnn, kCompiledGml, kRowLocal };

struct ConstructorSpec {
  ConstructorKind kind = ConstructorKind::kIncidence;
  std::set<std::string> exclude_columns = {"id"};
  // Column pair for extended incidence; defaults to the task's pair.
  std::string c1;
  std::string c2;
};

// Builds the grable of `table` for a task. Extended incidence takes its
// column pair from `spec` or, when empty, from a DOUBLE/DIAMOND task.
Grable BuildForTask(const ConstructorSpec& spec, const Table& table,
                    const TaskKind& task);

struct ExperimentConfig {
  // Either generator configs or CSV paths, per split.
  std::optional<GenConfig> train_gen;
  std::optional<GenConfig> val_gen;
  std::optional<GenConfig> test_gen;
  std::string train_csv;
  std::string val_csv;
  std::string test_csv;
  TypeHints type_hints;

  TaskKind task = UniqueTask{"card_id"};
  ConstructorSpec constructor;
  PredictorKind predictor = PredictorKind::kMpnn;
  MpnnConfig mpnn;
  RowLocalConfig row_local;
  std::vector<std::uint64_t> seeds = {0};
  // Stress set regenerated from the training generator config.
  std::optional<StressSpec> stress;
  std::string report_path;
  std::optional<double> assert_min_auc;
  std::optional<double> assert_min_f1;

  void Validate() const;
};

ExperimentConfig ParseExperimentConfigJson(std::string_view json_text);

struct SeedMetrics {
  std::uint64_t seed = 0;
  double test_auc = 0.0;
  double test_f1 = 0.0;
  double threshold = 0.0;
  double val_auc = 0.0;
  double val_f1 = 0.0;
  std::optional<double> stress_auc;
  std::optional<double> stress_f1;
  // Filled by PerturbAndRerun: metrics on each perturbed test set.
  std::vector<double> perturbed_auc;
  std::vector<double> perturbed_f1;
};

struct Summary {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Summary Summarize(std::vector<double> values);

struct Report {
  std::string task;
  std::string constructor;
  std::string predictor;
  std::vector<SeedMetrics> seeds;
  std::map<std::string, Summary> aggregate;
  std::string provenance_json;
  std::vector<std::string> notes;

  bool Passes(const ExperimentConfig& config) const;
  std::string ToJson() const;
  std::string ToCsv() const;
};

// Labels every split independently, builds one grable per split, trains or
// compiles the predictor per seed, evaluates test AUC/F1 at the validation
// threshold and, if configured, the stress set. Errors carry a stage tag.
Report RunExperiment(const ExperimentConfig& config);

// Trains once per seed, then evaluates on n test sets whose generator seed
// is test.seed + i; aggregates carry min/median/max across them.
Report PerturbAndRerun(const ExperimentConfig& config, std::size_t n);

}  // namespace grable

#endif  // GRABLE_EXPERIMENT_H_
