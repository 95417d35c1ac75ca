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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "grable/bisim.h"
#include "grable/constructors.h"
#include "grable/csv.h"
#include "grable/datagen.h"
#include "grable/error.h"
#include "grable/experiment.h"
#include "grable/featurizer.h"
#include "grable/gml.h"
#include "grable/grable_json.h"
#include "grable/metrics.h"
#include "grable/mpnn.h"
#include "grable/nfa.h"
#include "grable/tasks.h"

namespace {

using grable::Error;
using nlohmann::json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

// --seed, else GRABLE_SEED, else nothing.
std::optional<std::uint64_t> ResolveSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  const char* env = std::getenv("GRABLE_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    auto v = std::stoull(env, &used, 10);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw Error(std::string("GRABLE_SEED is not an unsigned integer: ") + env);
  }
}

bool JsonHasKey(const std::string& text, const std::string& key) {
  auto j = json::parse(text, nullptr, false);
  return j.is_object() && j.contains(key);
}

// ---------------------------------------------------------------------------
// Shared option groups

struct TableInput {
  std::string path;
  std::string types_path;
  std::vector<std::string> hints;

  void Attach(CLI::App* cmd) {
    cmd->add_option("input", path, "Input CSV")->required();
    cmd->add_option("--types", types_path, "JSON sidecar of column kinds");
    cmd->add_option("--hint", hints, "Column kind, COLUMN=KIND (repeatable)")
        ->allow_extra_args(false);
  }

  grable::TypeHints Hints() const {
    grable::TypeHints h;
    if (!types_path.empty()) h = grable::ParseTypeHintsJson(ReadFile(types_path));
    for (const auto& s : hints) {
      auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw Error("bad --hint " + s);
      h[s.substr(0, eq)] = grable::ParseValueKind(s.substr(eq + 1));
    }
    return h;
  }

  grable::Table Read() const { return grable::ReadTableFile(path, Hints()); }
};

struct TaskOptions {
  std::string task;
  std::string column;
  int k = 1;
  std::string mode = "gt";
  std::string c1;
  std::string c2;
  std::optional<std::string> anchor;

  void Attach(CLI::App* cmd, bool required) {
    auto* t = cmd->add_option("--task", task, "unique | count | double | diamond")
                  ->check(CLI::IsMember({"unique", "count", "double", "diamond"}));
    if (required) t->required();
    cmd->add_option("--column", column, "Task column (unique, count)");
    cmd->add_option("--k", k, "Count threshold");
    cmd->add_option("--mode", mode, "Count mode")->check(CLI::IsMember({"gt", "eq"}));
    cmd->add_option("--c1", c1, "First column (double, diamond)");
    cmd->add_option("--c2", c2, "Second column (double, diamond)");
    cmd->add_option("--anchor", anchor, "Anchor value of c2 (double)");
  }

  bool given() const { return !task.empty(); }

  // The anchor is parsed with the kind of the c2 column in `table`.
  grable::TaskKind Make(const grable::Table* table) const {
    if (task == "unique") return grable::UniqueTask{column};
    if (task == "count") {
      return grable::CountTask{column, k,
                               mode == "eq" ? grable::CountMode::kEqual
                                            : grable::CountMode::kGreater};
    }
    if (task == "diamond") return grable::DiamondTask{c1, c2};
    if (!anchor) throw Error("double task needs --anchor");
    grable::ValueKind kind = grable::ValueKind::kText;
    if (table != nullptr) {
      if (auto idx = table->schema().IndexOf(c2)) {
        for (const auto& row : table->rows()) {
          if (!row[*idx].is_missing()) {
            kind = row[*idx].kind();
            break;
          }
        }
      }
    }
    auto v = grable::ParseValue(*anchor, kind);
    if (!v) throw Error("cannot parse anchor '" + *anchor + "' for column " + c2);
    return grable::DoubleTask{c1, c2, *v};
  }
};

struct ConstructorOptions {
  std::string constructor = "incidence";
  std::vector<std::string> exclude;
  std::string c1;
  std::string c2;
  std::size_t embed_dim = 32;
  std::string time_column;
  double window = std::numeric_limits<double>::infinity();
  std::size_t max_categories = 16;

  void Attach(CLI::App* cmd) {
    cmd->add_option("--constructor", constructor)
        ->check(CLI::IsMember({"trivial", "incidence", "extended_incidence", "carte",
                               "tarte", "tabpfn", "nfa", "nfa_time"}));
    cmd->add_option("--exclude", exclude, "Columns left out of the graph")
        ->allow_extra_args(false)->delimiter(',');
    cmd->add_option("--pair-c1", c1, "Pair column 1 (extended_incidence)");
    cmd->add_option("--pair-c2", c2, "Pair column 2 (extended_incidence)");
    cmd->add_option("--embed-dim", embed_dim, "Hash featurizer dimension");
    cmd->add_option("--time-column", time_column, "Time column (nfa_time)");
    cmd->add_option("--window", window, "Time window in seconds (nfa_time)");
    cmd->add_option("--max-categories", max_categories);
  }

  grable::Grable Build(const grable::Table& table, std::uint64_t seed,
                       const std::optional<grable::TaskKind>& task) const {
    std::set<std::string> ex(exclude.begin(), exclude.end());
    grable::SignHashFeaturizer featurizer(embed_dim, seed);
    if (constructor == "trivial") return grable::BuildTrivial(table);
    if (constructor == "incidence") return grable::BuildIncidence(table, ex);
    if (constructor == "extended_incidence") {
      grable::ConstructorSpec spec;
      spec.kind = grable::ConstructorKind::kExtendedIncidence;
      spec.exclude_columns = ex;
      spec.c1 = c1;
      spec.c2 = c2;
      if (task) return grable::BuildForTask(spec, table, *task);
      if (c1.empty() || c2.empty()) throw Error("extended_incidence needs --pair-c1/--pair-c2");
      return grable::BuildExtendedIncidence(table, c1, c2, ex);
    }
    if (constructor == "carte") return grable::BuildCarte(table, featurizer);
    if (constructor == "tarte") return grable::BuildTarte(table, featurizer);
    if (constructor == "tabpfn") return grable::BuildTabPfn(table, featurizer);
    grable::NfaOptions opts;
    opts.max_categories = max_categories;
    auto base = grable::BuildIncidence(table, ex);
    if (constructor == "nfa") return grable::ApplyNfa(base, opts);
    if (time_column.empty()) throw Error("nfa_time needs --time-column");
    return grable::ApplyNfaTime(base, time_column, window, opts);
  }
};

// Labels from the task when given, else from a label column that is then
// dropped from the table.
struct Labeled {
  grable::Table table;
  grable::LabelVector labels;
};

Labeled LoadLabeled(const std::string& path, const grable::TypeHints& hints,
                    const TaskOptions& task, const std::string& label_column) {
  auto table = grable::ReadTableFile(path, hints);
  if (task.given()) {
    auto t = task.Make(&table);
    auto labels = grable::Label(table, t);
    return {std::move(table), std::move(labels)};
  }
  auto idx = table.schema().IndexOf(label_column);
  if (!idx) throw Error(path + ": no --task and no column '" + label_column + "'");
  std::vector<std::string> cols;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < table.num_columns(); ++c) {
    if (c == *idx) continue;
    cols.push_back(table.schema().column(c));
    keep.push_back(c);
  }
  grable::Table out{grable::Schema(cols)};
  grable::LabelVector labels;
  for (const auto& row : table.rows()) {
    const auto& v = row[*idx];
    auto text = v.ToString();
    if (text != "0" && text != "1") {
      throw Error(path + ": label column must hold 0/1, got '" + text + "'");
    }
    labels.push_back(text == "1" ? 1 : 0);
    grable::Row r;
    for (auto c : keep) r.push_back(row[c]);
    out.AddRow(std::move(r));
  }
  return {std::move(out), std::move(labels)};
}

// ---------------------------------------------------------------------------
// Subcommands

int RunGen(const std::string& config_path, const std::string& preset,
           std::optional<std::uint64_t> seed_flag, const std::string& out) {
  grable::GenConfig cfg;
  bool config_has_seed = false;
  if (!config_path.empty()) {
    auto text = ReadFile(config_path);
    cfg = grable::ParseGenConfigJson(text);
    config_has_seed = JsonHasKey(text, "seed");
  } else if (preset == "validation") {
    cfg = grable::SyntheticValidationConfig(0);
  } else if (preset == "test") {
    cfg = grable::SyntheticTestConfig(0);
  } else {
    cfg = grable::SyntheticTrainConfig(0);
  }
  if (seed_flag) {
    cfg.seed = *seed_flag;
  } else if (!config_has_seed) {
    if (auto s = ResolveSeed(std::nullopt)) cfg.seed = *s;
  }
  auto table = grable::GenerateTransactions(cfg);
  WriteOutput(out, grable::WriteTable(table));
  return 0;
}

int RunLabel(const TableInput& in, const TaskOptions& task,
             const std::string& label_column, const std::string& out) {
  auto table = in.Read();
  auto t = task.Make(&table);
  auto labels = grable::Label(table, t);
  WriteOutput(out, grable::WriteTable(grable::AppendLabelColumn(table, labels, label_column)));
  std::cerr << grable::TaskName(t) << ": " << labels.size() << " rows, prevalence "
            << grable::Prevalence(labels) << "\n";
  return 0;
}

int RunBuild(const TableInput& in, const ConstructorOptions& ctor,
             const TaskOptions& task, std::optional<std::uint64_t> seed_flag,
             int indent, const std::string& out) {
  auto table = in.Read();
  std::optional<grable::TaskKind> t;
  if (task.given()) t = task.Make(&table);
  auto g = ctor.Build(table, ResolveSeed(seed_flag).value_or(0), t);
  WriteOutput(out, grable::GrableToJson(g, indent) + "\n");
  std::cerr << g.provenance().constructor << ": " << g.num_nodes() << " nodes, "
            << g.num_edges() << " edges, " << g.relations().size() << " relations\n";
  return 0;
}

grable::PredicateDef ParsePredicateFlag(const std::string& s) {
  // NAME=COLUMN:KIND:VALUE
  auto eq = s.find('=');
  if (eq == std::string::npos) throw Error("bad --predicate " + s);
  auto rest = s.substr(eq + 1);
  auto c1 = rest.find(':');
  auto c2 = c1 == std::string::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string::npos) throw Error("bad --predicate " + s + " (want NAME=COLUMN:KIND:VALUE)");
  auto kind = grable::ParseValueKind(rest.substr(c1 + 1, c2 - c1 - 1));
  auto v = grable::ParseValue(rest.substr(c2 + 1), kind);
  if (!v) throw Error("bad predicate value in " + s);
  return grable::FeaturePredicate(s.substr(0, eq), rest.substr(0, c1), *v);
}

int RunEval(const std::string& formula_path, const std::string& formula_text,
            const TaskOptions& builtin, const std::vector<std::string>& predicates,
            const std::string& grable_path, const std::string& nodes,
            const std::string& out) {
  auto g = grable::GrableFromJson(ReadFile(grable_path));
  grable::PredicateSet preds = grable::TypePredicates();
  grable::Formula f;
  if (builtin.given()) {
    auto rows = grable::RowFeatureTable(g);
    auto t = builtin.Make(&rows);
    f = grable::BuiltinFormula(t);
    auto task_preds = grable::TaskPredicates(t);
    for (const auto& p : task_preds.predicates()) preds.Add(p);
  } else if (!formula_path.empty()) {
    f = grable::ParseFormula(ReadFile(formula_path));
  } else if (!formula_text.empty()) {
    f = grable::ParseFormula(formula_text);
  } else {
    throw Error("eval needs --formula, --expr or --task");
  }
  for (const auto& p : predicates) preds.Add(ParsePredicateFlag(p));
  grable::Resolve(f, grable::MakeSignature(g, preds));
  auto bits = grable::Evaluate(g, f, preds);
  std::ostringstream os;
  if (nodes == "rows") {
    auto rb = grable::RowBits(g, bits);
    os << "row,value\n";
    for (std::size_t r = 0; r < rb.size(); ++r) os << r << ',' << int(rb[r]) << '\n';
  } else {
    os << "node,type,value\n";
    for (std::size_t v = 0; v < bits.size(); ++v) {
      os << v << ',' << g.node(static_cast<grable::NodeId>(v)).type << ',' << int(bits[v]) << '\n';
    }
  }
  WriteOutput(out, os.str());
  std::cerr << grable::ToString(f) << " (depth " << grable::ModalDepth(f) << ")\n";
  return 0;
}

int RunCertify(std::size_t depth) {
  auto cert = grable::CertifyDiamondSeparation(depth);
  std::cout << cert.transcript;
  if (!cert.transcript.empty() && cert.transcript.back() != '\n') std::cout << '\n';
  return cert.passed() ? 0 : 1;
}

struct TrainArgs {
  std::string config_path;
  std::string train_path;
  std::string val_path;
  std::string test_path;
  std::string label_column = "label";
  std::string model_out;
  std::string history_out;
  std::optional<std::uint64_t> seed;
};

int RunTrain(const TrainArgs& a, const TableInput& hints_src, const TaskOptions& task,
             const ConstructorOptions& ctor) {
  grable::MpnnConfig cfg;
  bool config_has_seed = false;
  if (!a.config_path.empty()) {
    auto text = ReadFile(a.config_path);
    cfg = grable::ParseMpnnConfigJson(text);
    config_has_seed = JsonHasKey(text, "seed");
  }
  if (a.seed) {
    cfg.seed = *a.seed;
  } else if (!config_has_seed) {
    if (auto s = ResolveSeed(std::nullopt)) cfg.seed = *s;
  }
  auto hints = hints_src.Hints();
  auto tr = LoadLabeled(a.train_path, hints, task, a.label_column);
  auto va = LoadLabeled(a.val_path, hints, task, a.label_column);
  std::optional<grable::TaskKind> t;
  if (task.given()) t = task.Make(&tr.table);
  auto gtr = ctor.Build(tr.table, cfg.seed, t);
  auto gva = ctor.Build(va.table, cfg.seed, t);
  auto result = grable::Train(cfg, gtr, tr.labels, gva, va.labels);
  if (!a.model_out.empty()) WriteOutput(a.model_out, grable::ModelToJson(result.model));
  if (!a.history_out.empty()) WriteOutput(a.history_out, grable::HistoryToCsv(result.history));
  const auto& last = result.history.empty() ? grable::EpochRecord{} : result.history.back();
  std::cout << "epochs " << result.history.size() << " loss " << last.loss << " val_auc "
            << last.val_auc << " val_f1 " << last.val_f1 << " threshold "
            << result.model.threshold << "\n";
  if (!a.test_path.empty()) {
    auto te = LoadLabeled(a.test_path, hints, task, a.label_column);
    auto gte = ctor.Build(te.table, cfg.seed, t);
    auto scores = grable::RowScores(result.model, gte);
    std::cout << "test_auc " << grable::RocAuc(scores, te.labels) << " test_f1 "
              << grable::F1Score(grable::Threshold(scores, result.model.threshold), te.labels)
              << "\n";
  }
  return 0;
}

int RunRun(const std::string& config_path, const std::string& report,
           std::size_t perturb, bool assert_mode) {
  auto text = ReadFile(config_path);
  auto cfg = grable::ParseExperimentConfigJson(text);
  if (!JsonHasKey(text, "seeds")) {
    if (auto s = ResolveSeed(std::nullopt)) cfg.seeds = {*s};
  }
  if (!report.empty()) cfg.report_path = report;
  auto rep = perturb > 0 ? grable::PerturbAndRerun(cfg, perturb) : grable::RunExperiment(cfg);
  std::cout << rep.task << " / " << rep.constructor << " / " << rep.predictor << "\n";
  for (const auto& s : rep.seeds) {
    std::cout << "seed " << s.seed << ": test_auc " << s.test_auc << " test_f1 " << s.test_f1
              << " val_auc " << s.val_auc << " threshold " << s.threshold;
    if (s.stress_f1) std::cout << " stress_auc " << *s.stress_auc << " stress_f1 " << *s.stress_f1;
    std::cout << "\n";
  }
  for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
  if (!assert_mode) return 0;
  bool ok = rep.Passes(cfg);
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int RunStress(const std::string& spec_path, const std::string& reference,
              const std::string& gen_path, const TableInput* hints_src,
              const TaskOptions& task, std::optional<std::uint64_t> seed_flag,
              const std::string& label_column, const std::string& out) {
  grable::StressSpec spec;
  bool spec_has_seed = false;
  if (!spec_path.empty()) {
    auto text = ReadFile(spec_path);
    if (task.given() && !JsonHasKey(text, "task")) {
      // The task comes from the flags; only seed and id_column from the file.
      auto j = json::parse(text, nullptr, false);
      if (j.is_object()) {
        j["task"] = json::parse(grable::TaskToJson(task.Make(nullptr)));
        text = j.dump();
      }
    }
    spec = grable::ParseStressSpecJson(text);
    spec_has_seed = JsonHasKey(text, "seed");
  }
  if (seed_flag) {
    spec.seed = *seed_flag;
  } else if (!spec_has_seed) {
    if (auto s = ResolveSeed(std::nullopt)) spec.seed = *s;
  }
  grable::LabeledTable lt;
  if (!reference.empty()) {
    auto ref = grable::ReadTableFile(reference, hints_src->Hints());
    if (task.given()) spec.task = task.Make(&ref);
    if (!spec.task) throw Error("stress needs a task (--task or spec)");
    lt = grable::GenerateStressSet(spec, ref);
  } else {
    grable::GenConfig base = gen_path.empty() ? grable::SyntheticTrainConfig(0)
                                              : grable::ParseGenConfigJson(ReadFile(gen_path));
    if (task.given()) spec.task = task.Make(nullptr);
    if (!spec.task) throw Error("stress needs a task (--task or spec)");
    lt = grable::GenerateStressSet(spec, base);
  }
  WriteOutput(out, grable::WriteTable(grable::AppendLabelColumn(lt.table, lt.labels, label_column)));
  std::cerr << "stress: " << lt.table.num_rows() << " rows, prevalence "
            << grable::Prevalence(lt.labels) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grable: tables as graphs, labeling tasks, logic and message passing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic transactions table");
  std::string gen_config, gen_preset = "train", gen_out;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--config", gen_config, "GenConfig JSON");
  gen->add_option("--preset", gen_preset, "Size preset when no config is given")
      ->check(CLI::IsMember({"train", "validation", "test"}));
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out,-o", gen_out, "Output CSV (default stdout)");

  // label
  auto* label = app.add_subcommand("label", "Append a task label column");
  TableInput label_in;
  TaskOptions label_task;
  std::string label_col = "label", label_out;
  label_in.Attach(label);
  label_task.Attach(label, true);
  label->add_option("--label-column", label_col);
  label->add_option("--out,-o", label_out);

  // build
  auto* build = app.add_subcommand("build", "Build a grable and write it as JSON");
  TableInput build_in;
  ConstructorOptions build_ctor;
  TaskOptions build_task;
  std::optional<std::uint64_t> build_seed;
  int build_indent = -1;
  std::string build_out;
  build_in.Attach(build);
  build_ctor.Attach(build);
  build_task.Attach(build, false);
  build->add_option("--seed", build_seed, "Featurizer seed");
  build->add_option("--indent", build_indent);
  build->add_option("--out,-o", build_out);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a GML formula on a grable");
  std::string eval_formula, eval_expr, eval_grable, eval_nodes = "rows", eval_out;
  std::vector<std::string> eval_preds;
  TaskOptions eval_task;
  eval->add_option("--formula", eval_formula, "Formula file");
  eval->add_option("--expr", eval_expr, "Formula text");
  eval_task.Attach(eval, false);
  eval->add_option("--predicate", eval_preds, "NAME=COLUMN:KIND:VALUE (repeatable)")
        ->allow_extra_args(false);
  eval->add_option("--grable", eval_grable, "Grable JSON")->required();
  eval->add_option("--nodes", eval_nodes)->check(CLI::IsMember({"rows", "all"}));
  eval->add_option("--out,-o", eval_out);

  // certify-separation
  auto* cert = app.add_subcommand("certify-separation",
                                  "Certify that DIAMOND separates k-round refinement");
  std::string cert_task = "diamond";
  std::size_t cert_depth = 1;
  cert->add_option("--task", cert_task)->check(CLI::IsMember({"diamond"}));
  cert->add_option("--depth,-k", cert_depth)->required()->check(CLI::PositiveNumber);

  // train
  auto* train = app.add_subcommand("train", "Train an MPNN on labeled CSV splits");
  TrainArgs targs;
  TableInput train_hints;
  TaskOptions train_task;
  ConstructorOptions train_ctor;
  train->add_option("--config", targs.config_path, "MpnnConfig JSON");
  train->add_option("--train", targs.train_path)->required();
  train->add_option("--val", targs.val_path)->required();
  train->add_option("--test", targs.test_path);
  train->add_option("--label-column", targs.label_column);
  train->add_option("--model", targs.model_out, "Checkpoint output");
  train->add_option("--history", targs.history_out, "History CSV output");
  train->add_option("--seed", targs.seed);
  train->add_option("--types", train_hints.types_path);
  train->add_option("--hint", train_hints.hints)
      ->allow_extra_args(false);
  train_task.Attach(train, false);
  train_ctor.Attach(train);

  // run
  auto* run = app.add_subcommand("run", "Run an experiment config and write a report");
  std::string run_config, run_report;
  std::size_t run_perturb = 0;
  bool run_assert = false;
  run->add_option("config", run_config, "ExperimentConfig JSON")->required();
  run->add_option("--report", run_report, "Report path (overrides config)");
  run->add_option("--perturb", run_perturb, "Fresh test sets per seed");
  run->add_flag("--assert", run_assert, "Exit 1 unless the acceptance bounds hold");

  // stress
  auto* stress = app.add_subcommand("stress", "Generate a labeled stress set");
  std::string stress_spec, stress_ref, stress_gen, stress_col = "label", stress_out;
  std::optional<std::uint64_t> stress_seed;
  TableInput stress_hints;
  TaskOptions stress_task;
  stress->add_option("--spec", stress_spec, "StressSpec JSON");
  stress->add_option("--reference", stress_ref, "Reference CSV");
  stress->add_option("--gen", stress_gen, "GenConfig of the reference");
  stress->add_option("--types", stress_hints.types_path);
  stress->add_option("--hint", stress_hints.hints)
      ->allow_extra_args(false);
  stress->add_option("--seed", stress_seed);
  stress->add_option("--label-column", stress_col);
  stress->add_option("--out,-o", stress_out);
  stress_task.Attach(stress, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return RunGen(gen_config, gen_preset, gen_seed, gen_out);
    if (*label) return RunLabel(label_in, label_task, label_col, label_out);
    if (*build) {
      return RunBuild(build_in, build_ctor, build_task, build_seed, build_indent, build_out);
    }
    if (*eval) {
      return RunEval(eval_formula, eval_expr, eval_task, eval_preds, eval_grable, eval_nodes,
                     eval_out);
    }
    if (*cert) return RunCertify(cert_depth);
    if (*train) return RunTrain(targs, train_hints, train_task, train_ctor);
    if (*run) return RunRun(run_config, run_report, run_perturb, run_assert);
    if (*stress) {
      return RunStress(stress_spec, stress_ref, stress_gen, &stress_hints, stress_task,
                       stress_seed, stress_col, stress_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "grable: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
