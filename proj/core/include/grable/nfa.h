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

#ifndef GRABLE_NFA_H_
#define GRABLE_NFA_H_

#include <cstddef>
#include <string>
#include <vector>

#include "grable/grable.h"

namespace grable {

struct NfaOptions {
  // One-hot indicators are kept for at most this many categories per column
  // (most frequent first, ties by first appearance).
  std::size_t max_categories = 16;
};

// Name of the co-incident row count channel for relation `relation`.
std::string NfaDegreeChannel(const std::string& relation);

// Row neighbourhoods of the base grable, one list per relation: direct
// row-row edges plus rows reached through one non-row node of the same
// relation. The row itself is excluded. Indexed [relation][row].
std::vector<std::vector<std::vector<std::size_t>>> RowNeighborhoods(
    const Grable& base);

// Trivial grable on the row nodes whose features are the original row
// followed by, for each relation: the neighbour count, mean/min/max of every
// numeric column and one-hot means of categorical columns over the
// neighbours. Aggregates over an empty neighbourhood are missing.
Grable ApplyNfa(const Grable& base, const NfaOptions& options = {});

// As ApplyNfa, but only neighbours u with t(u) < t(v) and t(v) - t(u) <= window
// contribute. `window` may be +infinity.
Grable ApplyNfaTime(const Grable& base, const std::string& time_column,
                    double window, const NfaOptions& options = {});

}  // namespace grable

#endif  // GRABLE_NFA_H_
