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

#include "grable/featurizer.h"

#include "grable/rng.h"

namespace grable {

std::uint64_t HashCell(const std::string& column, const Value& value,
                       std::uint64_t seed) {
  return Mix64(Mix64(seed ^ HashBytes(column)) ^ value.Hash());
}

std::vector<double> SignHashFeaturizer::Embed(const std::string& column,
                                              const Value& value) const {
  std::vector<double> out(dim_, 0.0);
  if (value.is_missing() || dim_ == 0) return out;
  std::uint64_t h = HashCell(column, value, seed_);
  for (std::size_t t = 0; t < taps_; ++t) {
    h = Mix64(h + t);
    out[(h >> 1) % dim_] += (h & 1) ? 1.0 : -1.0;
  }
  return out;
}

}  // namespace grable
