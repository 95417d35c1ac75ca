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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "grable/error.h"
#include "grable/experiment.h"
#include "grable/metrics.h"
#include "grable/rng.h"

namespace grable {
namespace {

// P(s+ > s-) + 0.5 P(s+ = s-) over all positive/negative pairs.
double PairAuc(const std::vector<double>& s, const LabelVector& y) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!y[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j]) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
    }
  }
  return wins / pairs;
}

double CountF1(const LabelVector& p, const LabelVector& y) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    tp += p[i] && y[i];
    fp += p[i] && !y[i];
    fn += !p[i] && y[i];
  }
  if (tp == 0) return 0;
  double prec = tp / (tp + fp), rec = tp / (tp + fn);
  return 2 * prec * rec / (prec + rec);
}

struct Sample {
  std::vector<double> scores;
  LabelVector labels;
};

Sample RandomSample(Rng& rng, std::size_t n, int levels) {
  Sample s;
  for (std::size_t i = 0; i < n; ++i) {
    s.scores.push_back(static_cast<double>(rng.Index(levels)) / 4.0 - 1.0);
    s.labels.push_back(rng.Bernoulli(0.3));
  }
  s.labels[0] = 1;
  s.labels[1] = 0;
  return s;
}

TEST(AucTest, MatchesPairOracleWithTies) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    auto s = RandomSample(rng, 2 + rng.Index(60), 1 + static_cast<int>(rng.Index(8)));
    EXPECT_NEAR(RocAuc(s.scores, s.labels), PairAuc(s.scores, s.labels), 1e-12);
  }
}

TEST(AucTest, InvariantUnderMonotoneMaps) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    auto s = RandomSample(rng, 40, 10);
    std::vector<double> mapped;
    for (double x : s.scores) mapped.push_back(std::exp(3 * x) + 7);
    EXPECT_DOUBLE_EQ(RocAuc(s.scores, s.labels), RocAuc(mapped, s.labels));
  }
}

TEST(AucTest, EdgeCases) {
  EXPECT_EQ(RocAuc(std::vector<double>{0.1, 0.9}, {0, 1}), 1.0);
  EXPECT_EQ(RocAuc(std::vector<double>{0.9, 0.1}, {0, 1}), 0.0);
  EXPECT_EQ(RocAuc(std::vector<double>{0.5, 0.5}, {0, 1}), 0.5);
  EXPECT_THROW(RocAuc(std::vector<double>{0.1, 0.2}, {1, 1}), Error);
  EXPECT_THROW(RocAuc(std::vector<double>{0.1}, {1, 0}), Error);
}

TEST(F1Test, Cases) {
  EXPECT_EQ(F1Score({1, 0, 1}, {1, 0, 1}), 1.0);
  EXPECT_EQ(F1Score({0, 0, 0}, {1, 0, 1}), 0.0);
  EXPECT_EQ(F1Score({0, 0}, {0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(F1Score({1, 1, 0, 0}, {1, 0, 1, 0}), 0.5);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    LabelVector p(30), y(30);
    for (std::size_t j = 0; j < 30; ++j) {
      p[j] = rng.Bernoulli(0.5);
      y[j] = rng.Bernoulli(0.5);
    }
    EXPECT_NEAR(F1Score(p, y), CountF1(p, y), 1e-12);
  }
}

TEST(ThresholdTest, StrictComparison) {
  EXPECT_EQ(Threshold(std::vector<double>{0.2, 0.5, 0.7}, 0.5), (LabelVector{0, 0, 1}));
}

TEST(ThresholdTest, SelectMatchesExhaustiveScan) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto s = RandomSample(rng, 2 + rng.Index(50), 1 + static_cast<int>(rng.Index(10)));
    double best = -1;
    for (double t : s.scores) {
      best = std::max(best, CountF1(Threshold(s.scores, t), s.labels));
    }
    // Every row positive.
    const double below = *std::min_element(s.scores.begin(), s.scores.end()) - 1;
    best = std::max(best, CountF1(Threshold(s.scores, below), s.labels));
    const double chosen = SelectThreshold(s.scores, s.labels);
    EXPECT_NEAR(CountF1(Threshold(s.scores, chosen), s.labels), best, 1e-12);
  }
}

TEST(ThresholdTest, SeparableGivesPerfectF1) {
  std::vector<double> s = {0.1, 0.2, 0.8, 0.9};
  LabelVector y = {0, 0, 1, 1};
  double t = SelectThreshold(s, y);
  EXPECT_GT(t, 0.2);
  EXPECT_LT(t, 0.8);
}

TEST(SummaryTest, Values) {
  auto s = Summarize({3, 1, 2});
  EXPECT_EQ(s.median, 2);
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.max, 3);
  EXPECT_DOUBLE_EQ(s.mean, 2);
  EXPECT_EQ(Summarize({1, 4}).median, 2.5);
}

GenConfig Small(std::uint64_t seed) {
  GenConfig c;
  c.n_rows = 600;
  c.n_cards = 250;
  c.n_merchants = 300;
  c.seed = seed;
  return c;
}

ExperimentConfig CompiledUnique() {
  ExperimentConfig c;
  c.train_gen = Small(1);
  c.val_gen = Small(2);
  c.test_gen = Small(3);
  c.task = UniqueTask{"card_id"};
  c.predictor = PredictorKind::kCompiledGml;
  c.stress = StressSpec{UniqueTask{"card_id"}, 7};
  return c;
}

TEST(ExperimentTest, CompiledIsExactInAndOutOfDistribution) {
  auto r = RunExperiment(CompiledUnique());
  ASSERT_EQ(r.seeds.size(), 1u);
  EXPECT_EQ(r.seeds[0].test_auc, 1.0);
  EXPECT_EQ(r.seeds[0].test_f1, 1.0);
  ASSERT_TRUE(r.seeds[0].stress_f1.has_value());
  EXPECT_EQ(*r.seeds[0].stress_f1, r.seeds[0].test_f1);
}

TEST(ExperimentTest, PerturbAndRerun) {
  auto c = CompiledUnique();
  EXPECT_THROW(PerturbAndRerun(c, 0), Error);
  auto once = PerturbAndRerun(c, 1);
  auto plain = RunExperiment(c);
  ASSERT_EQ(once.seeds[0].perturbed_auc.size(), 1u);
  EXPECT_EQ(once.seeds[0].perturbed_auc[0], plain.seeds[0].test_auc);
  EXPECT_EQ(once.seeds[0].perturbed_f1[0], plain.seeds[0].test_f1);
}

TEST(ExperimentTest, ConfigRoundTripAndValidation) {
  auto c = ParseExperimentConfigJson(R"({
    "train": {"n_rows": 200, "n_cards": 80, "n_merchants": 90, "seed": 1},
    "validation": {"n_rows": 200, "n_cards": 80, "n_merchants": 90, "seed": 2},
    "test": {"n_rows": 200, "n_cards": 80, "n_merchants": 90, "seed": 3},
    "task": {"type": "unique", "column": "card_id"},
    "predictor": "compiled_gml"
  })");
  EXPECT_EQ(c.predictor, PredictorKind::kCompiledGml);
  auto r = RunExperiment(c);
  EXPECT_EQ(r.seeds[0].test_auc, 1.0);
  EXPECT_FALSE(r.ToJson().empty());
  EXPECT_THROW(ParseExperimentConfigJson(R"({"task": {"type": "unique", "column": "card_id"}})"),
               Error);
}

}  // namespace
}  // namespace grable
