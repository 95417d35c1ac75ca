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

#include "grable/nfa.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "grable/error.h"

namespace grable {
namespace {

using Neighborhoods = std::vector<std::vector<std::vector<std::size_t>>>;

struct ColumnPlan {
  std::size_t index = 0;
  bool numeric = false;
  std::vector<Value> categories;
};

std::vector<ColumnPlan> PlanColumns(const Table& rows, const NfaOptions& options) {
  std::vector<ColumnPlan> plans;
  for (std::size_t c = 0; c < rows.num_columns(); ++c) {
    ColumnPlan p;
    p.index = c;
    bool any = false;
    bool numeric = true;
    std::unordered_map<Value, std::size_t, ValueHash> freq;
    std::vector<Value> order;
    for (std::size_t i = 0; i < rows.num_rows(); ++i) {
      const Value& v = rows.at(i, c);
      if (v.is_missing()) continue;
      any = true;
      numeric = numeric && v.AsNumber().has_value();
      if (freq[v]++ == 0) order.push_back(v);
    }
    p.numeric = any && numeric;
    if (!p.numeric) {
      std::stable_sort(order.begin(), order.end(), [&](const Value& a, const Value& b) {
        return freq[a] > freq[b];
      });
      if (order.size() > options.max_categories) order.resize(options.max_categories);
      p.categories = std::move(order);
    }
    plans.push_back(std::move(p));
  }
  return plans;
}

Grable Aggregate(const Grable& base, const Neighborhoods& hoods, const NfaOptions& options,
                 Provenance provenance) {
  if (base.num_rows() == 0 && base.num_nodes() > 0) {
    throw Error("NFA needs a base grable with row nodes");
  }
  const Table rows = RowFeatureTable(base);
  const auto plans = PlanColumns(rows, options);
  const auto relations = base.RelationNames();

  std::vector<std::string> columns = rows.schema().columns();
  for (const auto& rel : relations) {
    columns.push_back(NfaDegreeChannel(rel));
    for (const auto& p : plans) {
      const std::string prefix = "nfa:" + rel + ":" + rows.schema().column(p.index);
      if (p.numeric) {
        for (const char* stat : {":mean", ":min", ":max"}) columns.push_back(prefix + stat);
      } else {
        for (const auto& v : p.categories) columns.push_back(prefix + "=" + v.ToString());
      }
    }
  }
  // Category strings may collide after rendering; disambiguate positionally.
  std::map<std::string, int> seen;
  for (auto& c : columns) {
    if (seen[c]++ > 0) c += "#" + std::to_string(seen[c] - 1);
  }
  Schema schema(columns);

  GrableBuilder b;
  std::vector<NodeId> row_map;
  for (std::size_t r = 0; r < rows.num_rows(); ++r) {
    auto src = rows.row(r);
    Row f(src.begin(), src.end());
    for (std::size_t k = 0; k < relations.size(); ++k) {
      const auto& s = hoods[k][r];
      f.push_back(Value::Integer(static_cast<std::int64_t>(s.size())));
      for (const auto& p : plans) {
        if (p.numeric) {
          double sum = 0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
          std::size_t n = 0;
          for (std::size_t u : s) {
            auto x = rows.at(u, p.index).AsNumber();
            if (!x) continue;
            sum += *x;
            lo = std::min(lo, *x);
            hi = std::max(hi, *x);
            ++n;
          }
          if (n == 0) {
            f.insert(f.end(), 3, Value());
          } else {
            f.push_back(Value::Real(sum / static_cast<double>(n)));
            f.push_back(Value::Real(lo));
            f.push_back(Value::Real(hi));
          }
        } else {
          for (const auto& cat : p.categories) {
            if (s.empty()) {
              f.push_back(Value());
              continue;
            }
            std::size_t hits = 0;
            for (std::size_t u : s) hits += rows.at(u, p.index) == cat;
            f.push_back(Value::Real(static_cast<double>(hits) / static_cast<double>(s.size())));
          }
        }
      }
    }
    row_map.push_back(b.AddNode(node_type::kRow, "", schema, std::move(f)));
  }
  b.SetRowMap(std::move(row_map));
  return std::move(b).Build(std::move(provenance));
}

}  // namespace

std::string NfaDegreeChannel(const std::string& relation) {
  return "nfa:" + relation + ":count";
}

Neighborhoods RowNeighborhoods(const Grable& base) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> row_index(base.num_nodes(), kNone);
  for (std::size_t r = 0; r < base.num_rows(); ++r) row_index[base.row_node(r)] = r;

  Neighborhoods out;
  std::vector<std::size_t> mark(base.num_rows(), kNone);
  for (const auto& rel : base.relations()) {
    auto& per_row = out.emplace_back(base.num_rows());
    for (std::size_t r = 0; r < base.num_rows(); ++r) {
      const NodeId v = base.row_node(r);
      auto& s = per_row[r];
      auto visit = [&](NodeId u) {
        const std::size_t ur = row_index[u];
        if (ur == kNone || ur == r || mark[ur] == r) return;
        mark[ur] = r;
        s.push_back(ur);
      };
      for (NodeId w : rel.OutNeighbors(v)) {
        if (row_index[w] != kNone) {
          visit(w);
          continue;
        }
        for (NodeId u : rel.OutNeighbors(w)) visit(u);
      }
      std::sort(s.begin(), s.end());
    }
    std::fill(mark.begin(), mark.end(), kNone);
  }
  return out;
}

Grable ApplyNfa(const Grable& base, const NfaOptions& options) {
  return Aggregate(base, RowNeighborhoods(base), options,
                   {"nfa", {{"base", base.provenance().constructor}}});
}

Grable ApplyNfaTime(const Grable& base, const std::string& time_column, double window,
                    const NfaOptions& options) {
  if (std::isnan(window) || window < 0) throw Error("time window must be >= 0");
  const Table rows = RowFeatureTable(base);
  const std::size_t tc = rows.schema().Require(time_column);
  std::vector<double> t(rows.num_rows());
  for (std::size_t r = 0; r < rows.num_rows(); ++r) {
    auto x = rows.at(r, tc).AsNumber();
    if (!x) throw Error("row " + std::to_string(r) + ": no time value in '" + time_column + "'");
    t[r] = *x;
  }
  Neighborhoods hoods = RowNeighborhoods(base);
  for (auto& per_row : hoods) {
    for (std::size_t r = 0; r < per_row.size(); ++r) {
      auto& s = per_row[r];
      std::erase_if(s, [&](std::size_t u) { return !(t[u] < t[r] && t[r] - t[u] <= window); });
    }
  }
  std::ostringstream w;
  w << window;
  return Aggregate(base, hoods, options,
                   {"nfa_time",
                    {{"base", base.provenance().constructor},
                     {"time_column", time_column},
                     {"window", w.str()}}});
}

}  // namespace grable
