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

#include "grable/bisim.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "grable/constructors.h"
#include "grable/csv.h"
#include "grable/error.h"

namespace grable {

std::size_t ColorAssignment::NumColors(std::size_t round) const {
  const auto& c = colors.at(round);
  return std::set<Color>(c.begin(), c.end()).size();
}

ColorAssignment ColorRefine(const Grable& grable, const PredicateSet& predicates,
                            std::size_t rounds) {
  const std::size_t n = grable.num_nodes();
  ColorAssignment out;
  {
    std::map<std::vector<std::uint8_t>, Color> ids;
    std::vector<Color> c0(n);
    for (NodeId v = 0; v < n; ++v) {
      std::vector<std::uint8_t> bits;
      for (const auto& p : predicates.predicates()) bits.push_back(p.Evaluate(grable.node(v)));
      c0[v] = ids.try_emplace(std::move(bits), static_cast<Color>(ids.size())).first->second;
    }
    out.colors.push_back(std::move(c0));
  }
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto& prev = out.colors.back();
    std::map<std::vector<Color>, Color> ids;
    std::vector<Color> next(n);
    std::vector<Color> key;
    std::vector<Color> multiset;
    for (NodeId v = 0; v < n; ++v) {
      key.clear();
      key.push_back(prev[v]);
      for (const auto& rel : grable.relations()) {
        multiset.clear();
        for (NodeId u : rel.OutNeighbors(v)) multiset.push_back(prev[u]);
        std::sort(multiset.begin(), multiset.end());
        key.push_back(static_cast<Color>(multiset.size()));
        key.insert(key.end(), multiset.begin(), multiset.end());
      }
      next[v] = ids.try_emplace(key, static_cast<Color>(ids.size())).first->second;
    }
    out.colors.push_back(std::move(next));
  }
  return out;
}

bool Indistinguishable(const Grable& g1, NodeId v1, const Grable& g2, NodeId v2,
                       std::size_t k, const PredicateSet& predicates) {
  if (v1 >= g1.num_nodes() || v2 >= g2.num_nodes()) throw Error("node out of range");
  const Grable u = DisjointUnion(g1, g2);
  const auto colors = ColorRefine(u, predicates, k);
  return colors.colors[k][v1] == colors.colors[k][v2 + g1.num_nodes()];
}

DiamondWitness MakeDiamondWitness(std::size_t k) {
  DiamondWitness w;
  Schema schema({w.c1, w.c2});
  w.h_table = Table(schema);
  w.h_table.AddRow({Value::Text("h_a"), Value::Text("h_b")});
  w.h_table.AddRow({Value::Text("h_a"), Value::Text("h_b")});
  // Rows 2j and 2j+1 share c1; rows 2j+1 and 2j+2 (mod n) share c2.
  const std::size_t n = 2 * k + 4;
  w.g_table = Table(schema);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t x = i / 2;
    const std::size_t y = ((i + 1) / 2) % (n / 2);
    w.g_table.AddRow({Value::Text("g_x" + std::to_string(x)),
                      Value::Text("g_y" + std::to_string(y))});
  }
  return w;
}

SeparationCertificate CertifyDiamondSeparation(std::size_t k, const PredicateSet& predicates) {
  if (predicates.ReadsFeatures()) {
    throw Error("separation certificates need feature-blind predicates");
  }
  SeparationCertificate cert;
  cert.depth = k;
  const DiamondWitness w = MakeDiamondWitness(k);
  const auto yg = LabelDiamond(w.g_table, w.c1, w.c2);
  const auto yh = LabelDiamond(w.h_table, w.c1, w.c2);
  cert.labels_differ = yg[w.g_row] != yh[w.h_row];

  const Grable g = BuildIncidence(w.g_table);
  const Grable h = BuildIncidence(w.h_table);
  const Grable u = DisjointUnion(g, h);
  const auto colors = ColorRefine(u, predicates, k);
  const NodeId vg = g.row_node(w.g_row);
  const auto vh = static_cast<NodeId>(h.row_node(w.h_row) + g.num_nodes());
  cert.indistinguishable = colors.colors[k][vg] == colors.colors[k][vh];
  for (std::size_t r = 0; r <= k; ++r) cert.colors_per_round.push_back(colors.NumColors(r));

  std::ostringstream t;
  t << "depth " << k << "\n";
  t << "G table (" << w.g_table.num_rows() << " rows):\n" << WriteTable(w.g_table);
  t << "H table (" << w.h_table.num_rows() << " rows):\n" << WriteTable(w.h_table);
  t << "diamond label: G row " << w.g_row << " = " << int(yg[w.g_row]) << ", H row "
    << w.h_row << " = " << int(yh[w.h_row]) << "\n";
  for (std::size_t r = 0; r <= k; ++r) {
    t << "round " << r << ": " << cert.colors_per_round[r] << " colours, G row colour "
      << colors.colors[r][vg] << ", H row colour " << colors.colors[r][vh] << "\n";
  }
  t << (cert.passed() ? "PASS" : "FAIL") << "\n";
  cert.transcript = t.str();
  return cert;
}

}  // namespace grable
