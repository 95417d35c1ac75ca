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

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "grable/bisim.h"
#include "grable/constructors.h"
#include "grable/error.h"
#include "grable/gml.h"
#include "grable/metrics.h"
#include "grable/mpnn.h"
#include "grable/rng.h"
#include "grable/tasks.h"
#include "test_util.h"

namespace grable {
namespace {

using testing::ElementsAre;

Table Column(std::vector<std::string> values) {
  Table t{Schema({"c"})};
  for (auto& v : values) t.AddRow({Value::Text(std::move(v))});
  return t;
}

MpnnConfig SmallConfig(std::uint64_t seed, std::size_t layers = 2, std::size_t hidden = 4) {
  MpnnConfig c;
  c.layers = layers;
  c.hidden = hidden;
  c.seed = seed;
  c.hash_dim = 3;
  c.row_feature_dim = 4;
  return c;
}

LabelVector RandomLabels(Rng& rng, std::size_t n) {
  LabelVector y(n);
  for (auto& v : y) v = rng.Bernoulli(0.4);
  return y;
}

TEST(MpnnConfigTest, ValidateAndJson) {
  MpnnConfig c;
  c.layers = 0;
  EXPECT_THROW(c.Validate(), Error);
  c = MpnnConfig{};
  c.dropout = 1.5;
  EXPECT_THROW(c.Validate(), Error);
  c = MpnnConfig{};
  c.layers = 3;
  c.hidden = 128;
  c.weight_decay = 1e-6;
  auto back = ParseMpnnConfigJson(MpnnConfigToJson(c));
  EXPECT_EQ(back.layers, 3u);
  EXPECT_EQ(back.hidden, 128u);
  EXPECT_EQ(back.weight_decay, 1e-6);
  EXPECT_THROW(ParseMpnnConfigJson(R"({"hidden": 0})"), Error);
}

TEST(ForwardTest, DuplicateRowsOnTrivialGrable) {
  Table t = Column({"a", "b", "a"});
  auto g = BuildTrivial(t);
  auto m = InitModel(SmallConfig(1), g);
  auto s = RowScores(m, g);
  EXPECT_EQ(s[0], s[2]);
  EXPECT_EQ(Predict(m, g)[0], Predict(m, g)[2]);
}

TEST(ForwardTest, ZeroModelGivesBiasConstant) {
  Rng rng(2);
  auto g = BuildIncidence(grable_testing::RandomTable(rng, 20, 3, 4));
  auto m = InitModel(SmallConfig(3), g);
  UnflattenParameters(std::vector<double>(m.NumParameters(), 0.0), m);
  m.readout_bias = 0.25;
  for (double s : Forward(m, g).scores) EXPECT_EQ(s, 0.25);
}

TEST(ForwardTest, EdgelessMessagesAreZero) {
  GrableBuilder b;
  std::vector<NodeId> rows;
  for (int i = 0; i < 4; ++i) rows.push_back(b.AddNode("row", "", Schema(), {}));
  b.DeclareRelation("E", true);
  b.SetRowMap(rows);
  auto g = std::move(b).Build({"test", {}});
  auto m = InitModel(SmallConfig(4), g);
  auto fwd = Forward(m, g);
  ASSERT_EQ(fwd.messages.size(), 2u);
  for (const auto& per_layer : fwd.messages) {
    ASSERT_EQ(per_layer.size(), 1u);
    for (const auto& msg : per_layer) {
      for (double x : msg.data()) EXPECT_EQ(x, 0.0);
    }
  }
}

TEST(ForwardTest, MissingRelationIsError) {
  Rng rng(4);
  Table t = grable_testing::RandomTable(rng, 10, 2, 3);
  auto m = InitModel(SmallConfig(4), BuildIncidence(t));
  EXPECT_THROW(Forward(m, BuildTrivial(t)), Error);
}

TEST(ForwardTest, NonFiniteNamesLayer) {
  Rng rng(5);
  auto g = BuildIncidence(grable_testing::RandomTable(rng, 10, 2, 3));
  auto m = InitModel(SmallConfig(5), g);
  m.layers[1].bias[0] = std::numeric_limits<double>::infinity();
  try {
    Forward(m, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("layer 2"), std::string::npos) << e.what();
  }
}

TEST(ForwardTest, InvariantUnderNodeRelabeling) {
  Rng rng(6);
  for (int i = 0; i < 10; ++i) {
    auto g = BuildIncidence(grable_testing::RandomSmallTable(rng));
    MpnnConfig c = SmallConfig(i);
    c.hash_dim = 0;  // per-node hashes follow node ids by design
    auto m = InitModel(c, g);
    std::vector<NodeId> perm(g.num_nodes());
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(std::span(perm));
    auto h = RelabelNodes(g, perm);
    auto sg = Forward(m, g).scores, sh = Forward(m, h).scores;
    for (NodeId v = 0; v < g.num_nodes(); ++v) EXPECT_NEAR(sg[v], sh[perm[v]], 1e-12);
  }
}

TEST(ForwardTest, DiamondWitnessTypeOnly) {
  for (std::size_t k = 1; k <= 4; ++k) {
    auto w = MakeDiamondWitness(k);
    auto g = BuildIncidence(w.g_table), h = BuildIncidence(w.h_table);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      MpnnConfig c = SmallConfig(seed, k, 8);
      c.type_only = true;
      auto m = InitModel(c, g);
      EXPECT_NEAR(RowScores(m, g)[w.g_row], RowScores(m, h)[w.h_row], 1e-7);
    }
  }
}

TEST(PredictTest, InfiniteThresholdIsAllZero) {
  Rng rng(7);
  auto g = BuildIncidence(grable_testing::RandomTable(rng, 15, 2, 3));
  auto m = InitModel(SmallConfig(7), g);
  m.threshold = std::numeric_limits<double>::infinity();
  for (auto p : Predict(m, g)) EXPECT_EQ(p, 0);
}

TEST(GradientTest, FiniteDifferences) {
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    auto t = grable_testing::RandomTable(rng, 3 + rng.Index(5), 2, 3);
    auto g = BuildIncidence(t);
    ASSERT_LE(g.num_nodes(), 20u);
    auto m = InitModel(SmallConfig(100 + i, 2, 4), g);
    auto y = RandomLabels(rng, t.num_rows());
    auto r = FiniteDiffCheck(m, g, y, 1e-4, {1.0, 2.5});
    EXPECT_LE(r.max_relative_error, 1e-4);
    EXPECT_GT(r.checked, r.flagged);
  }
}

TEST(GradientTest, LinearModelIsExactToRoundoff) {
  Rng rng(9);
  auto t = grable_testing::RandomTable(rng, 6, 2, 3);
  auto g = BuildIncidence(t);
  auto m = InitModel(SmallConfig(9, 2, 4), g);
  for (auto& layer : m.layers) layer.activation = Activation::kIdentity;
  auto r = FiniteDiffCheck(m, g, RandomLabels(rng, t.num_rows()), 1e-4);
  EXPECT_EQ(r.flagged, 0u);
  EXPECT_LE(r.max_relative_error, 1e-6);
}

TEST(GradientTest, EpsilonMustBePositive) {
  Rng rng(10);
  auto g = BuildIncidence(grable_testing::RandomTable(rng, 4, 2, 2));
  auto m = InitModel(SmallConfig(1), g);
  EXPECT_THROW(FiniteDiffCheck(m, g, LabelVector(4, 0), 0.0), Error);
}

TEST(GradientTest, SaturatedLogitsHaveTinyGradient) {
  Rng rng(11);
  auto g = BuildIncidence(grable_testing::RandomTable(rng, 8, 2, 3));
  auto m = InitModel(SmallConfig(2), g);
  auto scores = RowScores(m, g);
  LabelVector y(scores.size());
  // Push every logit far onto the side of its label through the bias.
  m.readout_bias = 60;
  std::fill(y.begin(), y.end(), 1);
  auto rep = Gradient(m, g, y);
  double norm = 0;
  for (double x : FlattenParameters(rep.gradient)) norm += x * x;
  EXPECT_LT(std::sqrt(norm), 1e-6);
}

TEST(GradientTest, UnitWeightsAreDefault) {
  Rng rng(12);
  auto t = grable_testing::RandomTable(rng, 8, 2, 3);
  auto g = BuildIncidence(t);
  auto m = InitModel(SmallConfig(3), g);
  auto y = RandomLabels(rng, t.num_rows());
  EXPECT_EQ(FlattenParameters(Gradient(m, g, y).gradient),
            FlattenParameters(Gradient(m, g, y, {1.0, 1.0}).gradient));
  EXPECT_THROW(Gradient(m, g, LabelVector(3, 0)), Error);
}

TEST(GradientTest, LossMatchesFormula) {
  Rng rng(13);
  auto t = grable_testing::RandomTable(rng, 8, 2, 3);
  auto g = BuildIncidence(t);
  auto m = InitModel(SmallConfig(4), g);
  auto y = RandomLabels(rng, t.num_rows());
  auto s = RowScores(m, g);
  ClassWeights w{0.7, 2.0};
  double expect = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double p = 1 / (1 + std::exp(-s[i]));
    expect += -(y[i] ? w.positive * std::log(p) : w.negative * std::log(1 - p));
  }
  expect /= static_cast<double>(s.size());
  EXPECT_NEAR(Loss(m, g, y, w), expect, 1e-12);
}

TEST(ParameterTest, FlattenRoundTrip) {
  Rng rng(14);
  auto g = BuildIncidence(grable_testing::RandomTable(rng, 8, 2, 3));
  auto m = InitModel(SmallConfig(5), g);
  auto flat = FlattenParameters(m);
  EXPECT_EQ(flat.size(), m.NumParameters());
  MpnnModel copy = m;
  for (double& x : flat) x *= 2;
  UnflattenParameters(flat, copy);
  EXPECT_EQ(FlattenParameters(copy), flat);
  EXPECT_THROW(UnflattenParameters(std::vector<double>(3), copy), Error);
}

TEST(TrainTest, ZeroEpochsReturnsInit) {
  Rng rng(15);
  auto t = grable_testing::RandomTable(rng, 30, 2, 4);
  auto g = BuildIncidence(t);
  auto y = LabelUnique(t, "c0");
  MpnnConfig c = SmallConfig(6);
  c.epochs = 0;
  auto r = Train(c, g, y, g, y);
  auto init = InitModel(c, g);
  EXPECT_EQ(FlattenParameters(r.model), FlattenParameters(init));
  EXPECT_TRUE(r.history.empty());
}

TEST(TrainTest, DeterministicAndLearnsSmallUnique) {
  Rng rng(16);
  auto tr = grable_testing::RandomTable(rng, 200, 2, 60);
  auto va = grable_testing::RandomTable(rng, 200, 2, 60);
  auto gtr = BuildIncidence(tr), gva = BuildIncidence(va);
  auto ytr = LabelUnique(tr, "c0"), yva = LabelUnique(va, "c0");
  MpnnConfig c;
  c.layers = 2;
  c.hidden = 16;
  c.epochs = 150;
  c.learning_rate = 1e-2;
  c.seed = 3;
  auto a = Train(c, gtr, ytr, gva, yva);
  auto b = Train(c, gtr, ytr, gva, yva);
  EXPECT_EQ(FlattenParameters(a.model), FlattenParameters(b.model));
  EXPECT_EQ(a.history.size(), 150u);
  EXPECT_GE(RocAuc(RowScores(a.model, gva), yva), 0.95);
  EXPECT_EQ(a.model.threshold, SelectThreshold(RowScores(a.model, gva), yva));
  const double pos = std::count(ytr.begin(), ytr.end(), 1);
  EXPECT_DOUBLE_EQ(a.class_weights.positive, (ytr.size() - pos) / pos);
  auto csv = HistoryToCsv(a.history);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epoch,loss,val_auc,val_f1");
}

TEST(TrainTest, DivergenceNamesEpoch) {
  Rng rng(17);
  auto t = grable_testing::RandomTable(rng, 30, 2, 4);
  auto g = BuildIncidence(t);
  auto y = LabelUnique(t, "c0");
  if (std::count(y.begin(), y.end(), 1) == 0) y[0] = 1;
  MpnnConfig c = SmallConfig(7);
  c.learning_rate = 1.0;
  c.epochs = 2000;
  c.weight_decay = 0;
  try {
    Train(c, g, y, g, y);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("epoch"), std::string::npos) << e.what();
  }
}

TEST(CompileTest, AtomIsZeroLayers) {
  auto g = BuildIncidence(Column({"a", "a", "b"}));
  auto preds = TypePredicates();
  auto m = CompileFormula(Atom("Row"), preds, {});
  EXPECT_EQ(m.MessagePassingDepth(), 0u);
  for (auto p : Predict(m, g)) EXPECT_EQ(p, 1);
}

TEST(CompileTest, CountOnSmallTable) {
  auto g = BuildIncidence(Column({"a", "a", "b"}));
  auto task = CountTask{"c", 1, CountMode::kGreater};
  auto rels = g.RelationNames();
  auto m = CompileFormula(BuiltinFormula(task), TaskPredicates(task), {rels.begin(), rels.end()});
  EXPECT_THAT(Predict(m, g), ElementsAre(1, 1, 0));
  EXPECT_EQ(m.MessagePassingDepth(), 2u);
}

TEST(CompileTest, MatchesEvaluatorOnRandomTables) {
  Rng rng(18);
  for (int i = 0; i < 60; ++i) {
    Table t = grable_testing::RandomSmallTable(rng);
    for (const auto& task : grable_testing::TasksFor(t, rng)) {
      Grable g = std::holds_alternative<DiamondTask>(task) ? BuildExtendedIncidence(t, "c0", "c1")
                                                           : BuildIncidence(t);
      auto f = BuiltinFormula(task);
      auto preds = TaskPredicates(task);
      auto rels = g.RelationNames();
      auto m = CompileFormula(f, preds, {rels.begin(), rels.end()});
      ASSERT_EQ(Predict(m, g), RowBits(g, Evaluate(g, f, preds))) << TaskName(task);
      ASSERT_EQ(m.MessagePassingDepth(), static_cast<std::size_t>(ModalDepth(f)));
    }
  }
}

TEST(CompileTest, BudgetOverflow) {
  EXPECT_THROW(CompileFormula(BuiltinFormula(UniqueTask{"c"}), TypePredicates(), {"E_c"}, 2),
               Error);
  EXPECT_THROW(CompileFormula(ParseFormula("<E_x>=1 Row"), TypePredicates(), {"E_c"}), Error);
}

TEST(CheckpointTest, RoundTrip) {
  Rng rng(19);
  auto g = BuildIncidence(grable_testing::RandomTable(rng, 10, 2, 3));
  auto m = InitModel(SmallConfig(8), g);
  m.threshold = 0.125;
  auto back = ModelFromJson(ModelToJson(m));
  EXPECT_TRUE(back == m);
  EXPECT_EQ(RowScores(back, g), RowScores(m, g));
  auto compiled = CompileFormula(BuiltinFormula(UniqueTask{"c0"}), TypePredicates(), {"E_c0", "E_c1"});
  EXPECT_TRUE(ModelFromJson(ModelToJson(compiled)) == compiled);
  EXPECT_THROW(ModelFromJson(R"({"format": "grable-mpnn", "version": 99})"), Error);
}

}  // namespace
}  // namespace grable
