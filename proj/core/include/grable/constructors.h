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

#ifndef GRABLE_CONSTRUCTORS_H_
#define GRABLE_CONSTRUCTORS_H_

#include <set>
#include <string>

#include "grable/featurizer.h"
#include "grable/grable.h"
#include "grable/table.h"

namespace grable {

// Relation joining row nodes to the value nodes of `column`.
std::string IncidenceRelation(const std::string& column);
// Relation joining row nodes to (c1, c2) pair nodes.
std::string PairRelation(const std::string& c1, const std::string& c2);
// Column tag of a pair node.
std::string PairColumn(const std::string& c1, const std::string& c2);

namespace relation {
inline constexpr char kAttention[] = "E_attn";
inline constexpr char kRow[] = "E_row";
inline constexpr char kColumn[] = "E_col";
}  // namespace relation

// Row nodes only, no edges.
Grable BuildTrivial(const Table& table);

// Row nodes plus one value node per occurring (column, value) pair; relation
// E_<column> joins them in both directions. Missing cells create nothing.
Grable BuildIncidence(const Table& table,
                      const std::set<std::string>& exclude_columns = {});

// Incidence plus pair nodes p(a, b) for each occurring (ci, cj) pair, joined
// to their rows by the symmetric relation PairRelation(ci, cj).
Grable BuildExtendedIncidence(const Table& table, const std::string& ci,
                              const std::string& cj,
                              const std::set<std::string>& exclude_columns = {});

// Per-row stars: row -> cell for every non-missing cell, one relation per
// column.
Grable BuildCarte(const Table& table, const Featurizer& featurizer);

// Per-row token cliques (E_attn, no self-loops) plus row -> token (E_row).
Grable BuildTarte(const Table& table, const Featurizer& featurizer);

// Cells and rows; E_row = within-row cell pairs plus the symmetric row star,
// E_col = same-column cell pairs across rows. No self-loops.
Grable BuildTabPfn(const Table& table, const Featurizer& featurizer);

}  // namespace grable

#endif  // GRABLE_CONSTRUCTORS_H_
