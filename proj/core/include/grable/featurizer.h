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

#ifndef GRABLE_FEATURIZER_H_
#define GRABLE_FEATURIZER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "grable/value.h"

namespace grable {

// Deterministic map (column, value) -> R^dim used for cell and token nodes.
// Language-model featurizers plug in by implementing this interface.
class Featurizer {
 public:
  virtual ~Featurizer() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::vector<double> Embed(const std::string& column,
                                    const Value& value) const = 0;
};

// Signed feature hashing: the (column, value) pair selects `taps` buckets,
// each receiving +1 or -1. Missing values embed to the zero vector.
class SignHashFeaturizer : public Featurizer {
 public:
  explicit SignHashFeaturizer(std::size_t dim = 32, std::uint64_t seed = 0,
                              std::size_t taps = 4)
      : dim_(dim), seed_(seed), taps_(taps) {}

  std::string name() const override { return "sign-hash"; }
  std::size_t dim() const override { return dim_; }
  std::vector<double> Embed(const std::string& column,
                            const Value& value) const override;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
  std::size_t taps_;
};

// 64-bit hash of a (column, value) pair that is stable across runs.
std::uint64_t HashCell(const std::string& column, const Value& value,
                       std::uint64_t seed);

}  // namespace grable

#endif  // GRABLE_FEATURIZER_H_
