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

#include "grable/gml.h"

#include <cctype>
#include <map>
#include <unordered_map>

#include "grable/constructors.h"
#include "grable/error.h"

namespace grable {

// ---------------------------------------------------------------------------
// Predicates

bool PredicateDef::Evaluate(const NodeRecord& node) const {
  if (kind == Kind::kNodeType) return node.type == type;
  auto idx = node.local_schema.IndexOf(column);
  return idx && SameValue(node.features[*idx], value);
}

PredicateDef TypePredicate(const std::string& name, const std::string& type) {
  PredicateDef p;
  p.name = name;
  p.kind = PredicateDef::Kind::kNodeType;
  p.type = type;
  return p;
}

PredicateDef FeaturePredicate(const std::string& name, const std::string& column,
                              Value value) {
  PredicateDef p;
  p.name = name;
  p.kind = PredicateDef::Kind::kFeatureEquals;
  p.column = column;
  p.value = std::move(value);
  return p;
}

std::string TypePredicateName(const std::string& type) {
  if (type == node_type::kRow) return "Row";
  if (type == node_type::kValue) return "Val";
  if (type == node_type::kPair) return "Pair";
  if (type == node_type::kCell) return "Cell";
  if (type == node_type::kToken) return "Token";
  std::string out = type;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

PredicateSet::PredicateSet(std::vector<PredicateDef> predicates) {
  for (auto& p : predicates) Add(std::move(p));
}

const PredicateDef* PredicateSet::Find(const std::string& name) const {
  for (const auto& p : predicates_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void PredicateSet::Add(PredicateDef predicate) {
  for (auto& p : predicates_) {
    if (p.name == predicate.name) {
      p = std::move(predicate);
      return;
    }
  }
  predicates_.push_back(std::move(predicate));
}

bool PredicateSet::ReadsFeatures() const {
  for (const auto& p : predicates_) {
    if (p.ReadsFeatures()) return true;
  }
  return false;
}

PredicateSet TypePredicates() {
  PredicateSet s;
  for (const char* t : {node_type::kRow, node_type::kValue, node_type::kPair,
                        node_type::kCell, node_type::kToken}) {
    s.Add(TypePredicate(TypePredicateName(t), t));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Formulas

Formula Atom(std::string predicate) {
  if (predicate.empty()) throw Error("atom needs a predicate name");
  return std::make_shared<FormulaNode>(FormulaNode::Op::kAtom, std::move(predicate), 0,
                                       nullptr, nullptr);
}

Formula Not(Formula f) {
  return std::make_shared<FormulaNode>(FormulaNode::Op::kNot, "", 0, std::move(f), nullptr);
}

Formula And(Formula a, Formula b) {
  return std::make_shared<FormulaNode>(FormulaNode::Op::kAnd, "", 0, std::move(a),
                                       std::move(b));
}

Formula Or(Formula a, Formula b) { return Not(And(Not(std::move(a)), Not(std::move(b)))); }

Formula Implies(Formula a, Formula b) { return Not(And(std::move(a), Not(std::move(b)))); }

Formula Diamond(std::string relation, int count, Formula f) {
  if (count < 1) throw Error("diamond count must be >= 1");
  if (relation.empty()) throw Error("diamond needs a relation name");
  return std::make_shared<FormulaNode>(FormulaNode::Op::kDiamond, std::move(relation),
                                       count, std::move(f), nullptr);
}

std::string ToString(const Formula& f) {
  switch (f->op()) {
    case FormulaNode::Op::kAtom:
      return f->name();
    case FormulaNode::Op::kNot:
      return "!" + ToString(f->left());
    case FormulaNode::Op::kAnd:
      return "(" + ToString(f->left()) + " & " + ToString(f->right()) + ")";
    case FormulaNode::Op::kDiamond:
      return "<" + f->name() + ">=" + std::to_string(f->count()) + " " + ToString(f->left());
  }
  return "";
}

bool StructurallyEqual(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b || a->op() != b->op() || a->name() != b->name() || a->count() != b->count()) {
    return false;
  }
  return StructurallyEqual(a->left(), b->left()) && StructurallyEqual(a->right(), b->right());
}

namespace {

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' ||
         c == '+' || c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula ParseAll() {
    Formula f = ParseFormulaAt();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void Fail(const std::string& message) { throw FormulaSyntaxError(message, pos_); }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool Peek(std::string_view token) {
    SkipSpace();
    return text_.substr(pos_, token.size()) == token;
  }

  void Expect(std::string_view token) {
    if (!Peek(token)) Fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }

  std::string Name() {
    SkipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && IsNameChar(text_[pos_])) {
      // "->" is an operator, not part of a name.
      if (text_[pos_] == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') break;
      ++pos_;
    }
    if (pos_ == start) Fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula ParseFormulaAt() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of formula");
    const char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return Not(ParseFormulaAt());
    }
    if (c == '<') {
      ++pos_;
      std::string rel = Name();
      Expect(">");
      Expect("=");
      SkipSpace();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) Fail("expected a count");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 9) {
        pos_ = start;
        Fail("count too large");
      }
      const int n = std::stoi(digits);
      if (n < 1) {
        pos_ = start;
        Fail("diamond count must be >= 1");
      }
      return Diamond(std::move(rel), n, ParseFormulaAt());
    }
    if (c == '(') {
      ++pos_;
      Formula f = ParseFormulaAt();
      std::string op;
      for (;;) {
        SkipSpace();
        if (Peek(")")) {
          ++pos_;
          return f;
        }
        std::string next;
        if (Peek("&")) {
          next = "&";
        } else if (Peek("|")) {
          next = "|";
        } else if (Peek("->")) {
          next = "->";
        } else {
          Fail(pos_ >= text_.size() ? "unbalanced parenthesis" : "expected an operator or ')'");
        }
        if (!op.empty() && op != next) Fail("mixed operators need parentheses");
        op = next;
        pos_ += next.size();
        Formula g = ParseFormulaAt();
        f = op == "&" ? And(f, g) : op == "|" ? Or(f, g) : Implies(f, g);
      }
    }
    if (IsNameChar(c)) return Atom(Name());
    Fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void CollectSubformulas(const Formula& f, std::map<std::string, bool>& seen,
                        std::vector<Formula>& out) {
  if (!f) return;
  const std::string key = ToString(f);
  if (seen.count(key)) return;
  CollectSubformulas(f->left(), seen, out);
  CollectSubformulas(f->right(), seen, out);
  seen[key] = true;
  out.push_back(f);
}

Formula UniqueFormula(const std::string& column) {
  const std::string rel = IncidenceRelation(column);
  return Diamond(rel, 1, And(Atom("Val"), Not(Diamond(rel, 2, Atom("Row")))));
}

// Value of the row in `column` occurs at least n+1 times.
Formula CountFormula(const std::string& column, int n) {
  const std::string rel = IncidenceRelation(column);
  return Diamond(rel, 1, And(Atom("Val"), Diamond(rel, n + 1, Atom("Row"))));
}

}  // namespace

Formula ParseFormula(std::string_view text) { return Parser(text).ParseAll(); }

int ModalDepth(const Formula& f) {
  switch (f->op()) {
    case FormulaNode::Op::kAtom:
      return 0;
    case FormulaNode::Op::kNot:
      return ModalDepth(f->left());
    case FormulaNode::Op::kAnd:
      return std::max(ModalDepth(f->left()), ModalDepth(f->right()));
    case FormulaNode::Op::kDiamond:
      return 1 + ModalDepth(f->left());
  }
  return 0;
}

std::vector<Formula> Subformulas(const Formula& f) {
  std::map<std::string, bool> seen;
  std::vector<Formula> out;
  CollectSubformulas(f, seen, out);
  return out;
}

Signature MakeSignature(const Grable& grable, const PredicateSet& predicates) {
  Signature s;
  for (const auto& r : grable.relations()) s.relations.insert(r.name());
  for (const auto& p : predicates.predicates()) s.predicates.insert(p.name);
  return s;
}

void Resolve(const Formula& f, const Signature& signature) {
  for (const auto& g : Subformulas(f)) {
    if (g->op() == FormulaNode::Op::kAtom && !signature.predicates.count(g->name())) {
      throw Error("unknown predicate '" + g->name() + "'");
    }
    if (g->op() == FormulaNode::Op::kDiamond && !signature.relations.count(g->name())) {
      throw Error("unknown relation '" + g->name() + "'");
    }
  }
}

std::vector<std::uint8_t> Evaluate(const Grable& grable, const Formula& f,
                                   const PredicateSet& predicates) {
  Resolve(f, MakeSignature(grable, predicates));
  const std::size_t n = grable.num_nodes();
  std::unordered_map<const FormulaNode*, std::vector<std::uint8_t>> bits;
  std::map<std::string, const FormulaNode*> canonical;
  auto get = [&](const Formula& g) -> const std::vector<std::uint8_t>& {
    return bits.at(canonical.at(ToString(g)));
  };
  for (const auto& g : Subformulas(f)) {
    std::vector<std::uint8_t> out(n, 0);
    switch (g->op()) {
      case FormulaNode::Op::kAtom: {
        const PredicateDef* p = predicates.Find(g->name());
        for (NodeId v = 0; v < n; ++v) out[v] = p->Evaluate(grable.node(v));
        break;
      }
      case FormulaNode::Op::kNot: {
        const auto& a = get(g->left());
        for (std::size_t v = 0; v < n; ++v) out[v] = !a[v];
        break;
      }
      case FormulaNode::Op::kAnd: {
        const auto& a = get(g->left());
        const auto& b = get(g->right());
        for (std::size_t v = 0; v < n; ++v) out[v] = a[v] && b[v];
        break;
      }
      case FormulaNode::Op::kDiamond: {
        const auto& a = get(g->left());
        const Relation& rel = grable.relation(g->name());
        const auto need = static_cast<std::size_t>(g->count());
        for (NodeId v = 0; v < n; ++v) {
          std::size_t hits = 0;
          for (NodeId u : rel.OutNeighbors(v)) hits += a[u];
          out[v] = hits >= need;
        }
        break;
      }
    }
    canonical[ToString(g)] = g.get();
    bits[g.get()] = std::move(out);
  }
  return bits.at(canonical.at(ToString(f)));
}

LabelVector RowBits(const Grable& grable, const std::vector<std::uint8_t>& bits) {
  LabelVector out;
  out.reserve(grable.num_rows());
  for (NodeId v : grable.row_map()) out.push_back(bits.at(v));
  return out;
}

Formula BuiltinFormula(const TaskKind& task) {
  ValidateTask(task, Schema());
  if (auto* t = std::get_if<UniqueTask>(&task)) return UniqueFormula(t->column);
  if (auto* t = std::get_if<CountTask>(&task)) {
    if (t->mode == CountMode::kGreater) return CountFormula(t->column, t->k);
    return And(CountFormula(t->column, t->k - 1), Not(CountFormula(t->column, t->k)));
  }
  if (auto* t = std::get_if<DoubleTask>(&task)) {
    const std::string r1 = IncidenceRelation(t->c1);
    const std::string r2 = IncidenceRelation(t->c2);
    auto psi = [&](int n) {
      return Diamond(r1, 1,
                     And(Atom("Val"),
                         Diamond(r1, n,
                                 And(And(Atom("Row"), Atom("Anchor")),
                                     Diamond(r2, 1, Atom("Val"))))));
    };
    return Or(And(Not(Atom("Anchor")), psi(1)), And(Atom("Anchor"), psi(2)));
  }
  const auto& t = std::get<DiamondTask>(task);
  const std::string rel = PairRelation(t.c1, t.c2);
  return Diamond(rel, 1, And(Atom("Pair"), Diamond(rel, 2, Atom("Row"))));
}

PredicateSet TaskPredicates(const TaskKind& task) {
  PredicateSet s = TypePredicates();
  if (auto* t = std::get_if<DoubleTask>(&task)) {
    s.Add(FeaturePredicate("Anchor", t->c2, t->anchor));
  }
  return s;
}

Formula UniqueAnyColumnFormula(const std::vector<std::string>& columns) {
  if (columns.empty()) throw Error("need at least one column");
  Formula f = UniqueFormula(columns[0]);
  for (std::size_t i = 1; i < columns.size(); ++i) f = Or(f, UniqueFormula(columns[i]));
  return f;
}

}  // namespace grable
