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

#include "grable/experiment.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include "grable/constructors.h"
#include "grable/error.h"
#include "grable/gml.h"
#include "grable/metrics.h"
#include "grable/nfa.h"
#include "json_util.h"

namespace grable {
namespace {

using internal::Json;

constexpr char kVersion[] = "0.1.0";

template <typename F>
auto Stage(const char* tag, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(std::string("[") + tag + "] " + e.what());
  }
}

std::string ConstructorName(ConstructorKind k) {
  switch (k) {
    case ConstructorKind::kTrivial:
      return "trivial";
    case ConstructorKind::kIncidence:
      return "incidence";
    case ConstructorKind::kExtendedIncidence:
      return "extended_incidence";
    case ConstructorKind::kNfa:
      return "nfa";
  }
  return "";
}

ConstructorKind ParseConstructor(const std::string& s) {
  if (s == "trivial") return ConstructorKind::kTrivial;
  if (s == "incidence") return ConstructorKind::kIncidence;
  if (s == "extended_incidence" || s == "extended-incidence") return ConstructorKind::kExtendedIncidence;
  if (s == "nfa") return ConstructorKind::kNfa;
  throw Error("unknown constructor '" + s + "'");
}

std::string PredictorName(PredictorKind k) {
  switch (k) {
    case PredictorKind::kMpnn:
      return "mpnn";
    case PredictorKind::kCompiledGml:
      return "compiled_gml";
    case PredictorKind::kRowLocal:
      return "row_local";
  }
  return "";
}

PredictorKind ParsePredictor(const std::string& s) {
  if (s == "mpnn") return PredictorKind::kMpnn;
  if (s == "compiled_gml" || s == "compiled-gml" || s == "gml") return PredictorKind::kCompiledGml;
  if (s == "row_local" || s == "row-local" || s == "baseline") return PredictorKind::kRowLocal;
  throw Error("unknown predictor '" + s + "'");
}

struct Split {
  Table table;
  LabelVector labels;
  Grable grable;
};

struct Predictor {
  std::function<std::vector<double>(const Split&)> scores;
  double threshold = 0.0;
};

double SafeAuc(const std::vector<double>& scores, const LabelVector& labels) {
  bool pos = false, neg = false;
  for (auto y : labels) (y ? pos : neg) = true;
  return pos && neg ? RocAuc(scores, labels) : std::nan("");
}

Table LoadSplit(const std::optional<GenConfig>& gen, const std::string& csv,
                const TypeHints& hints) {
  if (gen) return GenerateTransactions(*gen);
  return ReadTableFile(csv, hints);
}

Json SummaryJson(const Summary& s) {
  auto num = [](double x) -> Json {
    if (std::isfinite(x)) return x;
    return nullptr;
  };
  return {{"mean", num(s.mean)}, {"median", num(s.median)}, {"min", num(s.min)}, {"max", num(s.max)}};
}

Json OptionalNumber(const std::optional<double>& x) {
  if (x && std::isfinite(*x)) return *x;
  return nullptr;
}

Json NumberOrNull(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

Json ConfigToJson(const ExperimentConfig& c) {
  Json j;
  auto source = [](const std::optional<GenConfig>& g, const std::string& csv) -> Json {
    if (g) return Json::parse(GenConfigToJson(*g));
    return csv;
  };
  j["train"] = source(c.train_gen, c.train_csv);
  j["validation"] = source(c.val_gen, c.val_csv);
  j["test"] = source(c.test_gen, c.test_csv);
  Json hints = Json::object();
  for (const auto& [k, v] : c.type_hints) hints[k] = std::string(ValueKindName(v));
  j["type_hints"] = hints;
  j["task"] = internal::TaskToJsonObject(c.task);
  j["constructor"] = {{"type", ConstructorName(c.constructor.kind)},
                      {"exclude", c.constructor.exclude_columns},
                      {"c1", c.constructor.c1},
                      {"c2", c.constructor.c2}};
  j["predictor"] = PredictorName(c.predictor);
  j["mpnn"] = Json::parse(MpnnConfigToJson(c.mpnn));
  j["row_local"] = {{"buckets", c.row_local.buckets},
                    {"epochs", c.row_local.epochs},
                    {"learning_rate", c.row_local.learning_rate},
                    {"weight_decay", c.row_local.weight_decay},
                    {"exclude", c.row_local.exclude_columns}};
  j["seeds"] = c.seeds;
  if (c.stress) j["stress"] = {{"seed", c.stress->seed}, {"id_column", c.stress->id_column}};
  return j;
}

Report RunImpl(const ExperimentConfig& config, std::size_t perturbations) {
  config.Validate();
  Split train, val, test;
  Stage("data", [&] {
    train.table = LoadSplit(config.train_gen, config.train_csv, config.type_hints);
    val.table = LoadSplit(config.val_gen, config.val_csv, config.type_hints);
    test.table = LoadSplit(config.test_gen, config.test_csv, config.type_hints);
    return 0;
  });
  // Each split is labelled and lifted on its own rows only.
  Stage("label", [&] {
    for (Split* s : {&train, &val, &test}) s->labels = Label(s->table, config.task);
    return 0;
  });
  const bool needs_grable = config.predictor != PredictorKind::kRowLocal;
  auto build = [&](Split& s) {
    if (needs_grable) s.grable = BuildForTask(config.constructor, s.table, config.task);
  };
  Stage("build", [&] {
    for (Split* s : {&train, &val, &test}) build(*s);
    return 0;
  });

  std::optional<Split> stress;
  if (config.stress) {
    Stage("stress", [&] {
      StressSpec spec = *config.stress;
      if (!spec.task) spec.task = config.task;
      LabeledTable lt = GenerateStressSet(spec, train.table);
      stress.emplace();
      stress->table = std::move(lt.table);
      stress->labels = std::move(lt.labels);
      build(*stress);
      return 0;
    });
  }

  std::vector<Split> perturbed;
  if (perturbations > 0) {
    if (!config.test_gen) throw Error("[data] perturbation needs a generated test split");
    Stage("data", [&] {
      for (std::size_t i = 0; i < perturbations; ++i) {
        GenConfig g = *config.test_gen;
        g.seed = config.test_gen->seed + i;
        Split s;
        s.table = GenerateTransactions(g);
        s.labels = Label(s.table, config.task);
        build(s);
        perturbed.push_back(std::move(s));
      }
      return 0;
    });
  }

  Report report;
  report.task = TaskName(config.task);
  report.constructor = config.predictor == PredictorKind::kRowLocal
                           ? std::string("none")
                           : ConstructorName(config.constructor.kind);
  report.predictor = PredictorName(config.predictor);

  for (std::uint64_t seed : config.seeds) {
    Predictor pred = Stage("train", [&] {
      Predictor p;
      if (config.predictor == PredictorKind::kMpnn) {
        MpnnConfig mc = config.mpnn;
        mc.seed = seed;
        auto trained = Train(mc, train.grable, train.labels, val.grable, val.labels);
        auto model = std::make_shared<MpnnModel>(std::move(trained.model));
        p.threshold = model->threshold;
        p.scores = [model](const Split& s) { return RowScores(*model, s.grable); };
      } else if (config.predictor == PredictorKind::kCompiledGml) {
        const auto names = train.grable.RelationNames();
        auto model = std::make_shared<MpnnModel>(
            CompileFormula(BuiltinFormula(config.task), TaskPredicates(config.task),
                           std::set<std::string>(names.begin(), names.end())));
        p.threshold = model->threshold;
        p.scores = [model](const Split& s) { return RowScores(*model, s.grable); };
      } else {
        RowLocalConfig rc = config.row_local;
        rc.seed = seed;
        auto model = std::make_shared<RowLocalModel>(RowLocalModel::Fit(rc, train.table, train.labels));
        const auto vs = model->Scores(val.table);
        p.threshold = SelectThreshold(vs, val.labels);
        model->set_threshold(p.threshold);
        p.scores = [model](const Split& s) { return model->Scores(s.table); };
      }
      return p;
    });
    Stage("evaluate", [&] {
      SeedMetrics m;
      m.seed = seed;
      m.threshold = pred.threshold;
      const auto vs = pred.scores(val);
      m.val_auc = SafeAuc(vs, val.labels);
      m.val_f1 = F1Score(Threshold(vs, pred.threshold), val.labels);
      const auto ts = pred.scores(test);
      m.test_auc = SafeAuc(ts, test.labels);
      m.test_f1 = F1Score(Threshold(ts, pred.threshold), test.labels);
      if (stress) {
        const auto ss = pred.scores(*stress);
        m.stress_auc = SafeAuc(ss, stress->labels);
        m.stress_f1 = F1Score(Threshold(ss, pred.threshold), stress->labels);
      }
      for (const auto& s : perturbed) {
        const auto ps = pred.scores(s);
        m.perturbed_auc.push_back(SafeAuc(ps, s.labels));
        m.perturbed_f1.push_back(F1Score(Threshold(ps, pred.threshold), s.labels));
      }
      report.seeds.push_back(std::move(m));
      return 0;
    });
  }

  auto collect = [&](const std::string& name, auto get) {
    std::vector<double> v;
    for (const auto& s : report.seeds) get(s, v);
    if (!v.empty()) report.aggregate[name] = Summarize(std::move(v));
  };
  collect("test_auc", [](const SeedMetrics& s, auto& v) { v.push_back(s.test_auc); });
  collect("test_f1", [](const SeedMetrics& s, auto& v) { v.push_back(s.test_f1); });
  collect("val_auc", [](const SeedMetrics& s, auto& v) { v.push_back(s.val_auc); });
  collect("val_f1", [](const SeedMetrics& s, auto& v) { v.push_back(s.val_f1); });
  collect("threshold", [](const SeedMetrics& s, auto& v) { v.push_back(s.threshold); });
  collect("stress_auc", [](const SeedMetrics& s, auto& v) {
    if (s.stress_auc) v.push_back(*s.stress_auc);
  });
  collect("stress_f1", [](const SeedMetrics& s, auto& v) {
    if (s.stress_f1) v.push_back(*s.stress_f1);
  });
  collect("perturbed_auc", [](const SeedMetrics& s, auto& v) {
    v.insert(v.end(), s.perturbed_auc.begin(), s.perturbed_auc.end());
  });
  collect("perturbed_f1", [](const SeedMetrics& s, auto& v) {
    v.insert(v.end(), s.perturbed_f1.begin(), s.perturbed_f1.end());
  });

  Json prov = {{"version", kVersion}, {"config", ConfigToJson(config)}};
  prov["prevalence"] = {{"train", Prevalence(train.labels)},
                        {"validation", Prevalence(val.labels)},
                        {"test", Prevalence(test.labels)}};
  if (stress) prov["prevalence"]["stress"] = Prevalence(stress->labels);
  report.provenance_json = prov.dump();
  if (config.predictor == PredictorKind::kRowLocal) {
    report.notes.push_back(
        "row_local is a hashed one-hot logistic regression; it stands in for gradient-boosted "
        "and MLP baselines and is not comparable to their published numbers");
  }
  if (stress && std::holds_alternative<DoubleTask>(config.task)) {
    report.notes.push_back(
        "DOUBLE stress sets bound |corr(column=value, label)| by 0.1 for every single condition");
  }
  if (perturbations > 0) {
    report.notes.push_back("perturbed test sets use generator seeds test.seed + i, i < " +
                           std::to_string(perturbations));
  }
  if (!config.report_path.empty()) {
    Stage("report", [&] {
      std::ofstream out(config.report_path);
      if (!out) throw Error("cannot write '" + config.report_path + "'");
      out << report.ToJson() << "\n";
      std::string csv_path = config.report_path;
      if (csv_path.size() > 5 && csv_path.ends_with(".json")) csv_path.resize(csv_path.size() - 5);
      std::ofstream csv(csv_path + ".csv");
      if (!csv) throw Error("cannot write '" + csv_path + ".csv'");
      csv << report.ToCsv();
      return 0;
    });
  }
  return report;
}

std::optional<GenConfig> OptionalGen(const Json& j) {
  if (j.is_object()) return ParseGenConfigJson(j.dump());
  return std::nullopt;
}

}  // namespace

Grable BuildForTask(const ConstructorSpec& spec, const Table& table, const TaskKind& task) {
  switch (spec.kind) {
    case ConstructorKind::kTrivial:
      return BuildTrivial(table);
    case ConstructorKind::kIncidence:
      return BuildIncidence(table, spec.exclude_columns);
    case ConstructorKind::kExtendedIncidence: {
      std::string c1 = spec.c1, c2 = spec.c2;
      if (c1.empty() || c2.empty()) {
        if (auto* t = std::get_if<DiamondTask>(&task)) {
          c1 = t->c1;
          c2 = t->c2;
        } else if (auto* t = std::get_if<DoubleTask>(&task)) {
          c1 = t->c1;
          c2 = t->c2;
        } else {
          throw Error("extended incidence needs a column pair");
        }
      }
      return BuildExtendedIncidence(table, c1, c2, spec.exclude_columns);
    }
    case ConstructorKind::kNfa:
      return ApplyNfa(BuildIncidence(table, spec.exclude_columns));
  }
  throw Error("unknown constructor");
}

void ExperimentConfig::Validate() const {
  auto check = [](const std::optional<GenConfig>& g, const std::string& csv, const char* name) {
    if (g.has_value() == !csv.empty()) {
      throw Error(std::string("split '") + name + "' needs exactly one of a generator config or a CSV path");
    }
    if (g) g->Validate();
  };
  check(train_gen, train_csv, "train");
  check(val_gen, val_csv, "validation");
  check(test_gen, test_csv, "test");
  ValidateTask(task, Schema());
  if (seeds.empty()) throw Error("need at least one seed");
  if (predictor == PredictorKind::kMpnn) mpnn.Validate();
  if (predictor == PredictorKind::kCompiledGml && constructor.kind == ConstructorKind::kNfa) {
    throw Error("compiled formulas need the incidence relations; NFA discards them");
  }
  if (predictor == PredictorKind::kCompiledGml && std::holds_alternative<DiamondTask>(task) &&
      constructor.kind != ConstructorKind::kExtendedIncidence) {
    throw Error("the DIAMOND formula needs the extended incidence constructor");
  }
}

ExperimentConfig ParseExperimentConfigJson(std::string_view json_text) {
  using internal::Get;
  Json j = internal::ParseJson(json_text, "experiment config");
  if (!j.is_object()) throw Error("experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    auto source = [&](const char* key, std::optional<GenConfig>& gen, std::string& csv) {
      if (!j.contains(key)) throw Error(std::string("missing split '") + key + "'");
      const Json& s = j[key];
      if (s.is_string()) {
        csv = s.get<std::string>();
      } else {
        gen = OptionalGen(s);
        if (!gen) throw Error(std::string("split '") + key + "' must be a path or a generator config");
      }
    };
    source("train", c.train_gen, c.train_csv);
    source("validation", c.val_gen, c.val_csv);
    source("test", c.test_gen, c.test_csv);
    if (j.contains("type_hints")) c.type_hints = ParseTypeHintsJson(j["type_hints"].dump());
    if (j.contains("task")) c.task = internal::TaskFromJsonObject(j["task"]);
    if (j.contains("constructor")) {
      const Json& k = j["constructor"];
      if (k.is_string()) {
        c.constructor.kind = ParseConstructor(k.get<std::string>());
      } else {
        c.constructor.kind = ParseConstructor(Get<std::string>(k, "type", "incidence"));
        c.constructor.exclude_columns =
            Get<std::set<std::string>>(k, "exclude", c.constructor.exclude_columns);
        c.constructor.c1 = Get<std::string>(k, "c1", "");
        c.constructor.c2 = Get<std::string>(k, "c2", "");
      }
    }
    if (j.contains("predictor")) c.predictor = ParsePredictor(j["predictor"].get<std::string>());
    if (j.contains("mpnn")) c.mpnn = ParseMpnnConfigJson(j["mpnn"].dump());
    if (j.contains("row_local")) {
      const Json& r = j["row_local"];
      c.row_local.buckets = Get<std::size_t>(r, "buckets", c.row_local.buckets);
      c.row_local.epochs = Get<std::size_t>(r, "epochs", c.row_local.epochs);
      c.row_local.learning_rate = Get<double>(r, "learning_rate", c.row_local.learning_rate);
      c.row_local.weight_decay = Get<double>(r, "weight_decay", c.row_local.weight_decay);
      c.row_local.exclude_columns =
          Get<std::set<std::string>>(r, "exclude", c.row_local.exclude_columns);
    }
    c.seeds = Get<std::vector<std::uint64_t>>(j, "seeds", c.seeds);
    if (j.contains("stress") && !j["stress"].is_null()) {
      const Json& s = j["stress"];
      StressSpec spec;
      if (s.contains("task")) spec.task = internal::TaskFromJsonObject(s["task"]);
      spec.seed = Get<std::uint64_t>(s, "seed", 0);
      spec.id_column = Get<std::string>(s, "id_column", "id");
      c.stress = spec;
    }
    c.report_path = Get<std::string>(j, "report", "");
    if (j.contains("assert_min_auc")) c.assert_min_auc = j["assert_min_auc"].get<double>();
    if (j.contains("assert_min_f1")) c.assert_min_f1 = j["assert_min_f1"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("experiment config: ") + e.what());
  }
  c.Validate();
  return c;
}

Summary Summarize(std::vector<double> values) {
  Summary s;
  std::erase_if(values, [](double x) { return std::isnan(x); });
  if (values.empty()) {
    s.mean = s.median = s.min = s.max = std::nan("");
    return s;
  }
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (double v : values) sum += v;
  const std::size_t n = values.size();
  s.mean = sum / static_cast<double>(n);
  s.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  s.min = values.front();
  s.max = values.back();
  return s;
}

bool Report::Passes(const ExperimentConfig& config) const {
  auto median = [&](const char* key) {
    auto it = aggregate.find(key);
    return it == aggregate.end() ? std::nan("") : it->second.median;
  };
  if (config.assert_min_auc && !(median("test_auc") >= *config.assert_min_auc)) return false;
  if (config.assert_min_f1 && !(median("test_f1") >= *config.assert_min_f1)) return false;
  return true;
}

std::string Report::ToJson() const {
  Json seeds_json = Json::array();
  for (const auto& s : seeds) {
    Json js = {{"seed", s.seed},
               {"test_auc", NumberOrNull(s.test_auc)},
               {"test_f1", NumberOrNull(s.test_f1)},
               {"threshold", NumberOrNull(s.threshold)},
               {"val_auc", NumberOrNull(s.val_auc)},
               {"val_f1", NumberOrNull(s.val_f1)},
               {"stress_auc", OptionalNumber(s.stress_auc)},
               {"stress_f1", OptionalNumber(s.stress_f1)}};
    if (!s.perturbed_auc.empty()) {
      Json pa = Json::array(), pf = Json::array();
      for (double x : s.perturbed_auc) pa.push_back(NumberOrNull(x));
      for (double x : s.perturbed_f1) pf.push_back(NumberOrNull(x));
      js["perturbed_auc"] = pa;
      js["perturbed_f1"] = pf;
    }
    seeds_json.push_back(std::move(js));
  }
  Json agg = Json::object();
  for (const auto& [k, v] : aggregate) agg[k] = SummaryJson(v);
  Json j = {{"task", task},
            {"constructor", constructor},
            {"predictor", predictor},
            {"seeds", seeds_json},
            {"aggregate", agg},
            {"provenance", provenance_json.empty() ? Json::object() : Json::parse(provenance_json)},
            {"notes", notes}};
  return j.dump(2);
}

std::string Report::ToCsv() const {
  std::ostringstream out;
  out.precision(17);
  auto cell = [&](double x) {
    if (std::isfinite(x)) out << x;
  };
  out << "row,test_auc,test_f1,threshold,val_auc,val_f1,stress_auc,stress_f1\n";
  for (const auto& s : seeds) {
    out << "seed " << s.seed << ',';
    cell(s.test_auc);
    out << ',';
    cell(s.test_f1);
    out << ',';
    cell(s.threshold);
    out << ',';
    cell(s.val_auc);
    out << ',';
    cell(s.val_f1);
    out << ',';
    if (s.stress_auc) cell(*s.stress_auc);
    out << ',';
    if (s.stress_f1) cell(*s.stress_f1);
    out << '\n';
  }
  for (const char* stat : {"mean", "median", "min", "max"}) {
    out << stat;
    for (const char* key :
         {"test_auc", "test_f1", "threshold", "val_auc", "val_f1", "stress_auc", "stress_f1"}) {
      out << ',';
      auto it = aggregate.find(key);
      if (it == aggregate.end()) continue;
      const Summary& s = it->second;
      const std::string st = stat;
      cell(st == "mean" ? s.mean : st == "median" ? s.median : st == "min" ? s.min : s.max);
    }
    out << '\n';
  }
  return out.str();
}

Report RunExperiment(const ExperimentConfig& config) { return RunImpl(config, 0); }

Report PerturbAndRerun(const ExperimentConfig& config, std::size_t n) {
  if (n == 0) throw Error("perturb_and_rerun needs n >= 1");
  return RunImpl(config, n);
}

}  // namespace grable
