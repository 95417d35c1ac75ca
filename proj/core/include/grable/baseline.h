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

#ifndef GRABLE_BASELINE_H_
#define GRABLE_BASELINE_H_

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "grable/table.h"
#include "grable/tasks.h"

namespace grable {

struct RowLocalConfig {
  // Hashed one-hot buckets for (column, value) pairs.
  std::size_t buckets = 1 << 15;
  std::size_t epochs = 300;
  double learning_rate = 0.05;
  double weight_decay = 0.0;
  std::uint64_t seed = 0;
  std::set<std::string> exclude_columns = {"id"};
};

// Logistic regression over hashed one-hot cells of a row, with real-valued
// columns entering as standardized numbers. Row-local by construction.
class RowLocalModel {
 public:
  static RowLocalModel Fit(const RowLocalConfig& config, const Table& train,
                           const LabelVector& labels);

  std::vector<double> Scores(const Table& table) const;
  LabelVector Predict(const Table& table) const;

  void set_threshold(double t) { threshold_ = t; }
  double threshold() const { return threshold_; }

 private:
  struct Features {
    std::vector<std::uint32_t> buckets;
    std::vector<std::pair<std::size_t, double>> numeric;
  };
  Features Extract(const Table& table, std::size_t row) const;

  RowLocalConfig config_;
  Schema schema_;
  std::vector<std::size_t> numeric_columns_;
  std::vector<double> numeric_mean_;
  std::vector<double> numeric_scale_;
  std::vector<double> weights_;
  std::vector<double> numeric_weights_;
  double bias_ = 0.0;
  double threshold_ = 0.0;
};

}  // namespace grable

#endif  // GRABLE_BASELINE_H_
