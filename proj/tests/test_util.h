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

#ifndef GRABLE_TESTS_TEST_UTIL_H_
#define GRABLE_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grable/gml.h"
#include "grable/grable.h"
#include "grable/rng.h"
#include "grable/table.h"
#include "grable/tasks.h"

namespace grable_testing {

using grable::LabelVector;
using grable::Table;

// Table with `cols` columns c0..c{cols-1}, values drawn from an alphabet of
// size `alphabet` (text "a0".. or integers, per column).
inline Table RandomTable(grable::Rng& rng, std::size_t rows, std::size_t cols,
                         std::size_t alphabet) {
  std::vector<std::string> names;
  std::vector<bool> numeric;
  for (std::size_t c = 0; c < cols; ++c) {
    names.push_back("c" + std::to_string(c));
    numeric.push_back(rng.Bernoulli(0.5));
  }
  Table t{grable::Schema(names)};
  for (std::size_t r = 0; r < rows; ++r) {
    grable::Row row;
    for (std::size_t c = 0; c < cols; ++c) {
      auto v = static_cast<std::int64_t>(rng.Index(alphabet));
      row.push_back(numeric[c] ? grable::Value::Integer(v)
                               : grable::Value::Text("a" + std::to_string(v)));
    }
    t.AddRow(std::move(row));
  }
  return t;
}

// Random table in the acceptance envelope: <= 60 rows, 2..4 columns,
// alphabet 1..10.
inline Table RandomSmallTable(grable::Rng& rng) {
  return RandomTable(rng, 1 + rng.Index(60), 2 + rng.Index(3), 1 + rng.Index(10));
}

// ---------------------------------------------------------------------------
// Brute-force labelers: pairwise scans straight from the task definitions.

inline bool Same(const grable::Value& a, const grable::Value& b) {
  return !a.is_missing() && !b.is_missing() && a == b;
}

inline std::size_t Occurrences(const Table& t, std::size_t col, std::size_t r) {
  std::size_t n = 0;
  for (std::size_t s = 0; s < t.num_rows(); ++s) n += Same(t.at(s, col), t.at(r, col));
  return n;
}

inline LabelVector OracleLabels(const Table& t, const grable::TaskKind& task) {
  LabelVector y(t.num_rows());
  const auto& schema = t.schema();
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    if (auto* u = std::get_if<grable::UniqueTask>(&task)) {
      y[r] = Occurrences(t, schema.Require(u->column), r) == 1;
    } else if (auto* c = std::get_if<grable::CountTask>(&task)) {
      auto n = static_cast<int>(Occurrences(t, schema.Require(c->column), r));
      y[r] = c->mode == grable::CountMode::kGreater ? n > c->k : n == c->k;
    } else if (auto* d = std::get_if<grable::DoubleTask>(&task)) {
      auto a = schema.Require(d->c1), b = schema.Require(d->c2);
      bool hit = false;
      for (std::size_t s = 0; s < t.num_rows(); ++s) {
        if (s != r && Same(t.at(s, a), t.at(r, a)) && Same(t.at(s, b), d->anchor)) hit = true;
      }
      y[r] = hit;
    } else {
      auto* m = std::get_if<grable::DiamondTask>(&task);
      auto a = schema.Require(m->c1), b = schema.Require(m->c2);
      bool hit = false;
      for (std::size_t s = 0; s < t.num_rows(); ++s) {
        if (s != r && Same(t.at(s, a), t.at(r, a)) && Same(t.at(s, b), t.at(r, b))) hit = true;
      }
      y[r] = hit;
    }
  }
  return y;
}

// ---------------------------------------------------------------------------
// Naive GML semantics: recursion over the formula per node, neighbours found
// by scanning the relation's edge list.

inline bool NaiveHolds(const grable::Grable& g, const grable::Formula& f,
                       const grable::PredicateSet& preds, grable::NodeId v) {
  using Op = grable::FormulaNode::Op;
  switch (f->op()) {
    case Op::kAtom:
      return preds.Find(f->name())->Evaluate(g.node(v));
    case Op::kNot:
      return !NaiveHolds(g, f->left(), preds, v);
    case Op::kAnd:
      return NaiveHolds(g, f->left(), preds, v) && NaiveHolds(g, f->right(), preds, v);
    case Op::kDiamond: {
      int n = 0;
      for (const auto& e : g.relation(f->name()).edges()) {
        if (e.from == v && NaiveHolds(g, f->left(), preds, e.to)) ++n;
      }
      return n >= f->count();
    }
  }
  return false;
}

inline std::vector<std::uint8_t> NaiveEvaluate(const grable::Grable& g,
                                               const grable::Formula& f,
                                               const grable::PredicateSet& preds) {
  std::vector<std::uint8_t> out(g.num_nodes());
  for (grable::NodeId v = 0; v < g.num_nodes(); ++v) out[v] = NaiveHolds(g, f, preds, v);
  return out;
}

// A builtin task over the first columns of `t`, for random tables.
inline std::vector<grable::TaskKind> TasksFor(const Table& t, grable::Rng& rng) {
  const auto& s = t.schema();
  std::vector<grable::TaskKind> tasks;
  tasks.push_back(grable::UniqueTask{s.column(0)});
  const int k = 1 + static_cast<int>(rng.Index(4));
  tasks.push_back(grable::CountTask{s.column(0), k, grable::CountMode::kGreater});
  tasks.push_back(grable::CountTask{s.column(0), k, grable::CountMode::kEqual});
  tasks.push_back(grable::DoubleTask{s.column(0), s.column(1), t.at(rng.Index(t.num_rows()), 1)});
  tasks.push_back(grable::DiamondTask{s.column(0), s.column(1)});
  return tasks;
}

}  // namespace grable_testing

#endif  // GRABLE_TESTS_TEST_UTIL_H_
