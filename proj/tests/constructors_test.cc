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
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "grable/constructors.h"
#include "grable/datagen.h"
#include "grable/error.h"
#include "grable/featurizer.h"
#include "grable/grable.h"
#include "grable/grable_json.h"
#include "grable/nfa.h"
#include "test_util.h"

namespace grable {
namespace {

Table Rows(std::vector<std::vector<Value>> rows, std::vector<std::string> cols) {
  Table t{Schema(std::move(cols))};
  for (auto& r : rows) t.AddRow(std::move(r));
  return t;
}

Value T(const char* s) { return Value::Text(s); }

std::size_t CountType(const Grable& g, const std::string& type) {
  return std::count_if(g.nodes().begin(), g.nodes().end(),
                       [&](const NodeRecord& n) { return n.type == type; });
}

// Connected components over all relations, ignoring direction.
std::size_t Components(const Grable& g) {
  std::vector<std::size_t> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& rel : g.relations()) {
    for (const auto& e : rel.edges()) parent[find(e.from)] = find(e.to);
  }
  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) roots.insert(find(v));
  return roots.size();
}

void ExpectRowsPreserved(const Grable& g, const Table& t) {
  ASSERT_EQ(g.num_rows(), t.num_rows());
  std::set<NodeId> seen;
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    const auto& n = g.node(g.row_node(r));
    EXPECT_EQ(n.type, node_type::kRow);
    EXPECT_EQ(n.local_schema, t.schema());
    EXPECT_EQ(n.features, t.rows()[r]);
    EXPECT_TRUE(seen.insert(g.row_node(r)).second);
  }
  EXPECT_EQ(seen.size(), CountType(g, node_type::kRow));
}

TEST(GrableTest, ValidatesInvariants) {
  Schema s({"a"});
  std::vector<NodeRecord> nodes = {{0, "row", "", s, {T("x")}, {}},
                                   {1, "value", "a", Schema({"value"}), {T("x")}, {}}};
  EXPECT_NO_THROW(Grable(nodes, {Relation("E", true, 2, {{0, 1}, {1, 0}})}, {0}, {}));
  EXPECT_THROW(Grable(nodes, {Relation("E", true, 2, {{0, 1}})}, {0}, {}), Error);
  EXPECT_THROW(Relation("E", false, 2, {{0, 2}}), Error);
  EXPECT_THROW(Grable(nodes, {}, {1}, {}), Error);
  EXPECT_THROW(Grable(nodes, {}, {}, {}), Error);
  auto bad = nodes;
  bad[1].features.push_back(T("y"));
  EXPECT_THROW(Grable(bad, {}, {0}, {}), Error);
}

TEST(GrableTest, BuilderNeedsDeclaredRelation) {
  GrableBuilder b;
  auto v = b.AddNode("row", "", Schema(), {});
  EXPECT_THROW(b.AddEdge("E", v, v), Error);
}

TEST(TrivialTest, RowsOnly) {
  auto t = Rows({{T("a")}, {T("b")}, {T("a")}}, {"c"});
  auto g = BuildTrivial(t);
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 0u);
  ExpectRowsPreserved(g, t);
  EXPECT_EQ(BuildTrivial(Table(Schema({"c"}))).num_nodes(), 0u);
}

TEST(IncidenceTest, DistinctValues) {
  auto g = BuildIncidence(Rows({{T("a"), T("b")}, {T("c"), T("d")}}, {"x", "y"}));
  EXPECT_EQ(CountType(g, node_type::kRow), 2u);
  EXPECT_EQ(CountType(g, node_type::kValue), 4u);
  std::size_t forward = 0;
  for (const auto& rel : g.relations()) {
    EXPECT_TRUE(rel.symmetric());
    for (const auto& e : rel.edges()) forward += g.IsRowNode(e.from);
  }
  EXPECT_EQ(forward, 4u);
}

TEST(IncidenceTest, SharedValue) {
  auto g = BuildIncidence(Rows({{T("a"), T("b")}, {T("a"), T("d")}}, {"x", "y"}));
  EXPECT_EQ(CountType(g, node_type::kValue), 3u);
  const auto& rel = g.relation(IncidenceRelation("x"));
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.node(v).type == node_type::kValue && g.node(v).column == "x") {
      EXPECT_EQ(rel.OutNeighbors(v).size(), 2u);
      EXPECT_EQ(g.node(v).features, Row{T("a")});
    }
  }
}

TEST(IncidenceTest, MissingAndExcluded) {
  auto g = BuildIncidence(Rows({{Value::Integer(1), Value()}, {Value::Integer(2), T("q")}},
                               {"id", "y"}),
                          {"id", "nonexistent"});
  EXPECT_EQ(g.FindRelation("E_id"), nullptr);
  EXPECT_EQ(CountType(g, node_type::kValue), 1u);
  EXPECT_EQ(g.relation("E_y").num_edges(), 2u);
}

TEST(IncidenceTest, DegreeEqualsFrequencyOnSyntheticTable) {
  auto t = GenerateTransactions(SyntheticValidationConfig(5));
  auto g = BuildIncidence(t, {"id"});
  ExpectRowsPreserved(g, t);
  for (std::size_t c = 1; c < t.num_columns(); ++c) {
    const auto& col = t.schema().column(c);
    std::map<std::string, std::size_t> freq;
    for (const auto& r : t.rows()) ++freq[r[c].DebugString()];
    const auto& rel = g.relation(IncidenceRelation(col));
    std::size_t nodes = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      const auto& n = g.node(v);
      if (n.type != node_type::kValue || n.column != col) continue;
      ++nodes;
      EXPECT_EQ(rel.OutNeighbors(v).size(), freq[n.features[0].DebugString()]);
    }
    EXPECT_EQ(nodes, freq.size());
  }
}

TEST(ExtendedIncidenceTest, PairNodes) {
  auto same = BuildExtendedIncidence(Rows({{T("x"), T("y")}, {T("x"), T("y")}}, {"a", "b"}),
                                     "a", "b");
  ASSERT_EQ(CountType(same, node_type::kPair), 1u);
  auto diff = BuildExtendedIncidence(Rows({{T("x"), T("y")}, {T("x"), T("z")}}, {"a", "b"}),
                                     "a", "b");
  ASSERT_EQ(CountType(diff, node_type::kPair), 2u);
  const auto& rel = same.relation(PairRelation("a", "b"));
  for (NodeId v = 0; v < same.num_nodes(); ++v) {
    if (same.node(v).type == node_type::kPair) {
      EXPECT_EQ(rel.OutNeighbors(v).size(), 2u);
      EXPECT_EQ(same.node(v).column, "a+b");
    }
  }
  EXPECT_THROW(BuildExtendedIncidence(Rows({{T("x"), T("y")}}, {"a", "b"}), "a", "a"), Error);
}

TEST(ExtendedIncidenceTest, PairDegreeIsGroupSize) {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    Table t = grable_testing::RandomSmallTable(rng);
    auto g = BuildExtendedIncidence(t, "c0", "c1");
    const auto& rel = g.relation(PairRelation("c0", "c1"));
    for (std::size_t r = 0; r < t.num_rows(); ++r) {
      auto pairs = rel.OutNeighbors(g.row_node(r));
      ASSERT_EQ(pairs.size(), 1u);
      std::size_t group = 0;
      for (std::size_t s = 0; s < t.num_rows(); ++s) {
        group += t.at(s, 0) == t.at(r, 0) && t.at(s, 1) == t.at(r, 1);
      }
      EXPECT_EQ(rel.OutNeighbors(pairs[0]).size(), group);
    }
  }
}

TEST(CarteTest, StarsWithoutMissing) {
  SignHashFeaturizer f;
  auto t = Rows({{T("a"), T("b"), T("c")}, {T("a"), Value(), T("e")}}, {"x", "y", "z"});
  auto g = BuildCarte(t, f);
  EXPECT_EQ(CountType(g, node_type::kRow), 2u);
  EXPECT_EQ(CountType(g, node_type::kCell), 5u);
  EXPECT_EQ(g.num_edges(), 5u);
  EXPECT_EQ(Components(g), 2u);
  for (const auto& n : g.nodes()) {
    if (n.type == node_type::kCell) {
      EXPECT_EQ(n.embedding, f.Embed(n.column, n.features[0]));
    }
  }
  EXPECT_EQ(BuildCarte(Table(Schema({"x"})), f).num_nodes(), 0u);
}

TEST(CarteTest, ComponentsEqualRows) {
  Rng rng(4);
  SignHashFeaturizer f(8, 1);
  for (int i = 0; i < 20; ++i) {
    Table t = grable_testing::RandomSmallTable(rng);
    auto g = BuildCarte(t, f);
    EXPECT_EQ(Components(g), t.num_rows());
    ExpectRowsPreserved(g, t);
  }
}

TEST(TarteTest, CliqueCounts) {
  SignHashFeaturizer f;
  for (std::size_t m = 1; m <= 5; ++m) {
    std::vector<std::string> cols;
    std::vector<Value> row;
    for (std::size_t c = 0; c < m; ++c) {
      cols.push_back("c" + std::to_string(c));
      row.push_back(Value::Integer(static_cast<std::int64_t>(c)));
    }
    auto g = BuildTarte(Rows({row}, cols), f);
    // Enumerate ordered token pairs directly.
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) pairs += a != b;
    }
    EXPECT_EQ(g.relation(relation::kAttention).num_edges(), pairs);
    EXPECT_EQ(g.relation(relation::kRow).num_edges(), m);
    EXPECT_EQ(CountType(g, node_type::kToken), m);
  }
  auto two = BuildTarte(Rows({{T("a"), T("b")}, {T("a"), T("b")}}, {"x", "y"}), f);
  EXPECT_EQ(Components(two), 2u);
}

TEST(TabPfnTest, RowAndColumnRelations) {
  SignHashFeaturizer f;
  auto g = BuildTabPfn(Rows({{T("a"), T("b")}, {T("c"), T("d")}}, {"x", "y"}), f);
  EXPECT_EQ(g.relation(relation::kColumn).num_edges(), 4u);
  // Star (2 per row, both directions) plus one cell pair per row, both ways.
  EXPECT_EQ(g.relation(relation::kRow).num_edges(), 2u * (4 + 2));
  auto single_row = BuildTabPfn(Rows({{T("a"), T("b")}}, {"x", "y"}), f);
  EXPECT_EQ(single_row.relation(relation::kColumn).num_edges(), 0u);
  auto single_col = BuildTabPfn(Rows({{T("a")}, {T("b")}}, {"x"}), f);
  for (const auto& e : single_col.relation(relation::kRow).edges()) {
    EXPECT_TRUE(single_col.IsRowNode(e.from) || single_col.IsRowNode(e.to));
  }
}

TEST(ConstructorTest, PermutationEquivariance) {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    Table t = grable_testing::RandomSmallTable(rng);
    std::vector<std::size_t> perm(t.num_rows());
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(std::span(perm));
    Table p = t.Select(perm);
    auto g = BuildIncidence(t), h = BuildIncidence(p);
    ASSERT_EQ(g.num_nodes(), h.num_nodes());
    ASSERT_EQ(g.num_edges(), h.num_edges());
    // Row-level signature: per relation, the multiset of co-incident rows'
    // original indices must match under the permutation.
    for (std::size_t r = 0; r < p.num_rows(); ++r) {
      for (const auto& rel : h.relations()) {
        std::multiset<std::size_t> a, b;
        for (NodeId val : rel.OutNeighbors(h.row_node(r))) {
          for (NodeId u : rel.OutNeighbors(val)) {
            auto it = std::find(h.row_map().begin(), h.row_map().end(), u);
            a.insert(perm[it - h.row_map().begin()]);
          }
        }
        const auto& grel = g.relation(rel.name());
        for (NodeId val : grel.OutNeighbors(g.row_node(perm[r]))) {
          for (NodeId u : grel.OutNeighbors(val)) {
            auto it = std::find(g.row_map().begin(), g.row_map().end(), u);
            b.insert(it - g.row_map().begin());
          }
        }
        EXPECT_EQ(a, b);
      }
    }
  }
}

TEST(FeaturizerTest, Deterministic) {
  SignHashFeaturizer a(16, 3), b(16, 3), c(16, 4);
  EXPECT_EQ(a.Embed("x", T("v")), b.Embed("x", T("v")));
  EXPECT_NE(a.Embed("x", T("v")), c.Embed("x", T("v")));
  EXPECT_EQ(a.Embed("x", Value()), std::vector<double>(16, 0.0));
  EXPECT_EQ(HashCell("x", T("v"), 3), HashCell("x", T("v"), 3));
}

TEST(NfaTest, DegreeChannelIsFrequencyMinusOne) {
  Rng rng(30);
  for (int i = 0; i < 30; ++i) {
    Table t = grable_testing::RandomSmallTable(rng);
    auto g = ApplyNfa(BuildIncidence(t));
    EXPECT_EQ(g.num_edges(), 0u);
    for (std::size_t c = 0; c < t.num_columns(); ++c) {
      auto ch = g.node(g.row_node(0)).local_schema.Require(
          NfaDegreeChannel(IncidenceRelation(t.schema().column(c))));
      for (std::size_t r = 0; r < t.num_rows(); ++r) {
        auto f = static_cast<std::int64_t>(grable_testing::Occurrences(t, c, r));
        EXPECT_EQ(g.node(g.row_node(r)).features[ch], Value::Integer(f - 1));
      }
    }
  }
}

TEST(NfaTest, EmptyNeighbourhoodSentinels) {
  Table t = Rows({{T("a"), Value::Integer(1)}, {T("b"), Value::Integer(2)}}, {"x", "n"});
  auto g = ApplyNfa(BuildIncidence(t, {"n"}));
  const auto& node = g.node(g.row_node(0));
  for (std::size_t c = 2; c < node.features.size(); ++c) {
    const auto& name = node.local_schema.column(c);
    if (name.ends_with(":count")) {
      EXPECT_EQ(node.features[c], Value::Integer(0));
    } else {
      EXPECT_TRUE(node.features[c].is_missing()) << name;
    }
  }
}

TEST(NfaTest, Aggregates) {
  Table t = Rows({{T("a"), Value::Real(1.0), T("p")},
                  {T("a"), Value::Real(3.0), T("q")},
                  {T("a"), Value::Real(8.0), T("q")}},
                 {"x", "n", "k"});
  auto g = ApplyNfa(BuildIncidence(t, {"n", "k"}));
  const auto& node = g.node(g.row_node(0));
  auto at = [&](const std::string& name) { return node.features[node.local_schema.Require(name)]; };
  EXPECT_EQ(at("nfa:E_x:count"), Value::Integer(2));
  EXPECT_EQ(at("nfa:E_x:n:mean"), Value::Real(5.5));
  EXPECT_EQ(at("nfa:E_x:n:min"), Value::Real(3.0));
  EXPECT_EQ(at("nfa:E_x:n:max"), Value::Real(8.0));
  EXPECT_EQ(at("nfa:E_x:k=q"), Value::Real(1.0));
  EXPECT_EQ(at("nfa:E_x:k=p"), Value::Real(0.0));
}

Table Timed(Rng& rng, std::size_t n) {
  Table t{Schema({"t", "g"})};
  for (std::size_t i = 0; i < n; ++i) {
    t.AddRow({Value::Time(static_cast<std::int64_t>(rng.Index(50))),
              Value::Text("g" + std::to_string(rng.Index(3)))});
  }
  return t;
}

TEST(NfaTimeTest, ZeroWindowIsEmpty) {
  Rng rng(1);
  Table t = Timed(rng, 30);
  auto g = ApplyNfaTime(BuildIncidence(t, {"t"}), "t", 0.0);
  auto ch = g.node(0).local_schema.Require(NfaDegreeChannel("E_g"));
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    EXPECT_EQ(g.node(g.row_node(r)).features[ch], Value::Integer(0));
  }
  EXPECT_THROW(ApplyNfaTime(BuildIncidence(t, {"t"}), "t", -1.0), Error);
}

TEST(NfaTimeTest, MatchesScanOracle) {
  Rng rng(2);
  for (double w : {5.0, 17.0, std::numeric_limits<double>::infinity()}) {
    Table t = Timed(rng, 40);
    auto g = ApplyNfaTime(BuildIncidence(t, {"t"}), "t", w);
    auto ch = g.node(0).local_schema.Require(NfaDegreeChannel("E_g"));
    for (std::size_t r = 0; r < t.num_rows(); ++r) {
      std::int64_t n = 0;
      for (std::size_t s = 0; s < t.num_rows(); ++s) {
        auto tv = t.at(r, 0).timestamp(), tu = t.at(s, 0).timestamp();
        n += s != r && t.at(s, 1) == t.at(r, 1) && tu < tv && tv - tu <= w;
      }
      EXPECT_EQ(g.node(g.row_node(r)).features[ch], Value::Integer(n));
    }
  }
}

TEST(NfaTimeTest, EarliestRowHasNoPast) {
  Table t{Schema({"t", "g"})};
  for (int i = 0; i < 5; ++i) t.AddRow({Value::Time(10 - i), T("same")});
  auto g = ApplyNfaTime(BuildIncidence(t, {"t"}), "t", std::numeric_limits<double>::infinity());
  auto ch = g.node(0).local_schema.Require(NfaDegreeChannel("E_g"));
  EXPECT_EQ(g.node(g.row_node(4)).features[ch], Value::Integer(0));
  EXPECT_EQ(g.node(g.row_node(0)).features[ch], Value::Integer(4));
}

TEST(GrableJsonTest, RoundTrip) {
  Rng rng(12);
  SignHashFeaturizer f(4, 2);
  for (int i = 0; i < 10; ++i) {
    Table t = grable_testing::RandomSmallTable(rng);
    for (const Grable& g : {BuildIncidence(t), BuildExtendedIncidence(t, "c0", "c1"),
                            BuildTarte(t, f), ApplyNfa(BuildIncidence(t))}) {
      auto back = GrableFromJson(GrableToJson(g));
      ASSERT_EQ(back.num_nodes(), g.num_nodes());
      EXPECT_EQ(back.row_map(), g.row_map());
      EXPECT_EQ(back.provenance().constructor, g.provenance().constructor);
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        EXPECT_EQ(back.node(v).type, g.node(v).type);
        EXPECT_EQ(back.node(v).column, g.node(v).column);
        EXPECT_EQ(back.node(v).features, g.node(v).features);
        EXPECT_EQ(back.node(v).embedding, g.node(v).embedding);
      }
      ASSERT_EQ(back.relations().size(), g.relations().size());
      for (std::size_t k = 0; k < g.relations().size(); ++k) {
        EXPECT_EQ(back.relations()[k].edges(), g.relations()[k].edges());
        EXPECT_EQ(back.relations()[k].symmetric(), g.relations()[k].symmetric());
      }
    }
  }
  EXPECT_THROW(GrableFromJson(R"({"format": "grable/2"})"), Error);
}

TEST(DisjointUnionTest, ShiftsAndMerges) {
  auto a = BuildIncidence(Rows({{T("a")}}, {"x"}));
  auto b = BuildIncidence(Rows({{T("a")}, {T("a")}}, {"x"}));
  auto u = DisjointUnion(a, b);
  EXPECT_EQ(u.num_nodes(), a.num_nodes() + b.num_nodes());
  EXPECT_EQ(u.num_rows(), 3u);
  EXPECT_EQ(u.relation("E_x").num_edges(), a.num_edges() + b.num_edges());
  EXPECT_EQ(u.row_node(1), b.row_node(0) + a.num_nodes());
}

}  // namespace
}  // namespace grable
