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

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "grable/csv.h"
#include "grable/error.h"
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

Table Example() {
  return ParseTable(
      "id,card_id,merchant_id,merchant_city\n"
      "1,C000317,42,Brussels\n"
      "2,C000102,17,ONLINE\n"
      "3,C000317,105,Paris\n"
      "4,C000891,42,Brussels\n"
      "5,C000045,311,Berlin\n"
      "6,C000102,17,ONLINE\n",
      {{"id", ValueKind::kInteger}, {"merchant_id", ValueKind::kInteger}});
}

TEST(LabelTest, UniqueSmall) {
  EXPECT_THAT(LabelUnique(Column({"a", "a", "b"}), "c"), ElementsAre(0, 0, 1));
  EXPECT_THAT(LabelUnique(Example(), "card_id"), ElementsAre(0, 0, 0, 1, 1, 0));
}

TEST(LabelTest, CountCountsTheRowItself) {
  auto t = Column({"a", "a", "b"});
  EXPECT_THAT(LabelCount(t, "c", 1, CountMode::kGreater), ElementsAre(1, 1, 0));
  EXPECT_THAT(LabelCount(t, "c", 2, CountMode::kEqual), ElementsAre(1, 1, 0));
  EXPECT_THAT(LabelCount(t, "c", 1, CountMode::kEqual), ElementsAre(0, 0, 1));
  EXPECT_THROW(LabelCount(t, "c", 0, CountMode::kGreater), Error);
}

TEST(LabelTest, DoubleNeedsAnotherAnchoredRow) {
  auto t = Example();
  EXPECT_THAT(LabelDouble(t, "card_id", "merchant_city", Value::Text("ONLINE")),
              ElementsAre(0, 1, 0, 0, 0, 1));
  Table solo{Schema({"a", "b"})};
  solo.AddRow({Value::Text("x"), Value::Text("P")});
  EXPECT_THAT(LabelDouble(solo, "a", "b", Value::Text("P")), ElementsAre(0));
}

TEST(LabelTest, Diamond) {
  EXPECT_THAT(LabelDiamond(Example(), "card_id", "merchant_id"), ElementsAre(0, 1, 0, 0, 0, 1));
}

TEST(LabelTest, MissingTaskValueIsError) {
  Table t{Schema({"c"})};
  t.AddRow({Value()});
  EXPECT_THROW(LabelUnique(t, "c"), Error);
}

TEST(LabelTest, ValidateTask) {
  Schema s({"a", "b"});
  EXPECT_THROW(ValidateTask(UniqueTask{"z"}, s), Error);
  EXPECT_THROW(ValidateTask(DiamondTask{"a", "a"}, s), Error);
  EXPECT_THROW(ValidateTask(DoubleTask{"a", "b", Value()}, s), Error);
  EXPECT_NO_THROW(ValidateTask(CountTask{"b", 2, CountMode::kEqual}, s));
}

TEST(LabelTest, MatchesBruteForceOnRandomTables) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Table t = grable_testing::RandomSmallTable(rng);
    for (const auto& task : grable_testing::TasksFor(t, rng)) {
      ASSERT_EQ(Label(t, task), grable_testing::OracleLabels(t, task)) << TaskName(task);
    }
  }
}

// Labels of one split never depend on rows of another: splits over disjoint
// alphabets label the same standalone and after unrelated rows are added.
TEST(LabelTest, NoLeakageAcrossSplits) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    Table a = grable_testing::RandomTable(rng, 30, 2, 5);
    Table b{a.schema()};
    const Table extra = grable_testing::RandomTable(rng, 30, 2, 5);
    for (const auto& r : extra.rows()) {
      b.AddRow({Value::Text("other" + r[0].ToString()), Value::Text("other" + r[1].ToString())});
    }
    Table both = a;
    for (const auto& r : b.rows()) both.AddRow(r);
    for (const auto& task : grable_testing::TasksFor(a, rng)) {
      auto la = Label(a, task), lab = Label(both, task);
      lab.resize(a.num_rows());
      EXPECT_EQ(la, lab) << TaskName(task);
    }
  }
}

TEST(FlipTest, AllFourWitnessesFlip) {
  std::vector<TaskKind> tasks = {UniqueTask{"c1"},
                                 CountTask{"c1", 2, CountMode::kGreater},
                                 CountTask{"c1", 2, CountMode::kEqual},
                                 CountTask{"c1", 1, CountMode::kEqual},
                                 DoubleTask{"c1", "c2", Value::Text("P")},
                                 DiamondTask{"c1", "c2"}};
  for (const auto& task : tasks) {
    auto w = ExtensionFlipWitness(task);
    ASSERT_LT(w.row, w.base.num_rows());
    ASSERT_LE(w.base.num_rows(), w.extended.num_rows());
    for (std::size_t r = 0; r < w.base.num_rows(); ++r) {
      ASSERT_EQ(w.base.rows()[r], w.extended.rows()[r]) << "extension must keep rows";
    }
    auto before = grable_testing::OracleLabels(w.base, task);
    auto after = grable_testing::OracleLabels(w.extended, task);
    EXPECT_NE(before[w.row], after[w.row]) << TaskName(task);
  }
}

TEST(TaskJsonTest, RoundTrip) {
  std::vector<TaskKind> tasks = {UniqueTask{"card_id"},
                                 CountTask{"card_id", 30, CountMode::kGreater},
                                 DoubleTask{"card_id", "merchant_id", Value::Integer(17)},
                                 DiamondTask{"card_id", "merchant_id"}};
  for (const auto& t : tasks) {
    auto back = ParseTaskJson(TaskToJson(t));
    EXPECT_EQ(TaskName(back), TaskName(t));
    EXPECT_EQ(TaskColumns(back), TaskColumns(t));
  }
  auto d = std::get<DoubleTask>(ParseTaskJson(TaskToJson(tasks[2])));
  EXPECT_EQ(d.anchor, Value::Integer(17));
  EXPECT_THROW(ParseTaskJson(R"({"type": "count", "column": "x", "k": 0})"), Error);
  EXPECT_THROW(ParseTaskJson(R"({"type": "triangle"})"), Error);
}

TEST(AppendLabelTest, AddsIntegerColumn) {
  auto t = AppendLabelColumn(Column({"a", "b"}), {1, 0});
  EXPECT_EQ(t.schema().column(1), "label");
  EXPECT_EQ(t.at(0, 1), Value::Integer(1));
  EXPECT_THROW(AppendLabelColumn(Column({"a"}), {1, 0}), Error);
  EXPECT_THROW(AppendLabelColumn(Column({"a"}), {1}, "c"), Error);
}

}  // namespace
}  // namespace grable
