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

#include <cmath>

#include "grable/error.h"
#include "grable/mpnn.h"
#include "json_util.h"

namespace grable {
namespace {

using internal::Json;

constexpr char kFormat[] = "grable-mpnn";
constexpr int kVersion = 1;

Json MatrixToJson(const Matrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix MatrixFromJson(const Json& j) {
  Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != m.size()) throw Error("matrix data does not match its shape");
  m.data() = std::move(data);
  return m;
}

// JSON has no infinities; thresholds may legitimately be infinite.
Json RealToJson(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double RealFromJson(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw Error("bad real '" + s + "'");
}

}  // namespace

std::string ModelToJson(const MpnnModel& model) {
  const Featurization& f = model.featurization;
  Json preds = Json::array();
  for (const auto& p : f.predicates) preds.push_back(internal::PredicateToJson(p));
  Json layers = Json::array();
  for (const auto& l : model.layers) {
    Json msg = Json::object();
    for (const auto& [name, w] : l.message) msg[name] = MatrixToJson(w);
    layers.push_back({{"activation", std::string(ActivationName(l.activation))},
                      {"self", MatrixToJson(l.self)},
                      {"message", msg},
                      {"bias", l.bias}});
  }
  Json j = {
      {"format", kFormat},
      {"version", kVersion},
      {"featurization",
       {{"kind_mode", f.kind_mode == Featurization::KindMode::kType ? "type" : "type_and_column"},
        {"kinds", f.kinds},
        {"predicates", preds},
        {"row_feature_dim", f.row_feature_dim},
        {"hash_dim", f.hash_dim},
        {"hash_row_nodes", f.hash_row_nodes},
        {"hash_seed", f.hash_seed}}},
      {"encoder", MatrixToJson(model.encoder)},
      {"layers", layers},
      {"readout", model.readout},
      {"readout_bias", RealToJson(model.readout_bias)},
      {"threshold", RealToJson(model.threshold)}};
  return j.dump();
}

MpnnModel ModelFromJson(std::string_view json_text) {
  Json j = internal::ParseJson(json_text, "model checkpoint");
  try {
    if (j.value("format", "") != kFormat) throw Error("not a model checkpoint");
    const int version = j.value("version", 0);
    if (version != kVersion) {
      throw Error("unsupported checkpoint version " + std::to_string(version));
    }
    MpnnModel m;
    const Json& jf = j.at("featurization");
    Featurization& f = m.featurization;
    const auto mode = jf.at("kind_mode").get<std::string>();
    if (mode == "type") {
      f.kind_mode = Featurization::KindMode::kType;
    } else if (mode == "type_and_column") {
      f.kind_mode = Featurization::KindMode::kTypeAndColumn;
    } else {
      throw Error("unknown kind_mode '" + mode + "'");
    }
    f.kinds = jf.at("kinds").get<std::vector<std::string>>();
    for (const auto& p : jf.at("predicates")) f.predicates.push_back(internal::PredicateFromJson(p));
    f.row_feature_dim = jf.at("row_feature_dim").get<std::size_t>();
    f.hash_dim = jf.at("hash_dim").get<std::size_t>();
    f.hash_row_nodes = jf.at("hash_row_nodes").get<bool>();
    f.hash_seed = jf.at("hash_seed").get<std::uint64_t>();
    m.encoder = MatrixFromJson(j.at("encoder"));
    if (m.encoder.rows() != f.input_dim()) throw Error("encoder rows do not match the featurization");
    std::size_t width = m.encoder.cols();
    for (const auto& jl : j.at("layers")) {
      MpnnLayer l;
      l.activation = ParseActivation(jl.at("activation").get<std::string>());
      l.self = MatrixFromJson(jl.at("self"));
      for (auto it = jl.at("message").begin(); it != jl.at("message").end(); ++it) {
        l.message.emplace(it.key(), MatrixFromJson(it.value()));
      }
      l.bias = jl.at("bias").get<std::vector<double>>();
      if (l.self.rows() != width || l.bias.size() != l.self.cols()) {
        throw Error("layer shapes are inconsistent");
      }
      for (const auto& [name, w] : l.message) {
        if (w.rows() != width || w.cols() != l.self.cols()) {
          throw Error("message weights for '" + name + "' have the wrong shape");
        }
      }
      width = l.self.cols();
      m.layers.push_back(std::move(l));
    }
    m.readout = j.at("readout").get<std::vector<double>>();
    if (m.readout.size() != width) throw Error("readout width mismatch");
    m.readout_bias = RealFromJson(j.at("readout_bias"));
    m.threshold = RealFromJson(j.at("threshold"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model checkpoint: ") + e.what());
  }
}

}  // namespace grable
