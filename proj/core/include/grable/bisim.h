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

#ifndef GRABLE_BISIM_H_
#define GRABLE_BISIM_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "grable/gml.h"
#include "grable/grable.h"
#include "grable/table.h"

namespace grable {

using Color = std::uint32_t;

// colors[r][v] is the colour of node v after r refinement rounds.
struct ColorAssignment {
  std::vector<std::vector<Color>> colors;

  std::size_t rounds() const { return colors.empty() ? 0 : colors.size() - 1; }
  std::size_t NumColors(std::size_t round) const;
};

// Round 0 colours the predicate bit-vector; round r+1 interns
// (colour_r(v), per relation the sorted multiset of colour_r over N_i(v)).
// Ids are assigned in order of first appearance by ascending node id.
ColorAssignment ColorRefine(const Grable& grable, const PredicateSet& predicates,
                            std::size_t rounds);

// True iff v1 in g1 and v2 in g2 share a colour after k rounds of
// refinement on the disjoint union.
bool Indistinguishable(const Grable& g1, NodeId v1, const Grable& g2, NodeId v2,
                       std::size_t k, const PredicateSet& predicates);

// Two-column tables over fresh values. H is two identical rows (its incidence
// graph is a 4-cycle); G is an alternating-share cycle of 2k+4 rows in which
// consecutive rows alternately share their c1 and their c2 value.
struct DiamondWitness {
  Table g_table;
  Table h_table;
  std::size_t g_row = 0;
  std::size_t h_row = 0;
  std::string c1 = "c1";
  std::string c2 = "c2";
};

DiamondWitness MakeDiamondWitness(std::size_t k);

struct SeparationCertificate {
  std::size_t depth = 0;
  bool labels_differ = false;
  bool indistinguishable = false;
  // Number of colours on the disjoint union per round.
  std::vector<std::size_t> colors_per_round;
  std::string transcript;
  bool passed() const { return labels_differ && indistinguishable; }
};

// Runs the witness through label_diamond and colour refinement over the
// incidence grables. Rejects predicate sets that read node features.
SeparationCertificate CertifyDiamondSeparation(
    std::size_t k, const PredicateSet& predicates = TypePredicates());

}  // namespace grable

#endif  // GRABLE_BISIM_H_
