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

#ifndef GRABLE_GML_H_
#define GRABLE_GML_H_

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "grable/grable.h"
#include "grable/tasks.h"
#include "grable/value.h"

namespace grable {

// ---------------------------------------------------------------------------
// Unary predicates

struct PredicateDef {
  enum class Kind {
    kNodeType,      // node.type == type
    kFeatureEquals  // node has `column` in its local schema with value `value`
  };
  std::string name;
  Kind kind = Kind::kNodeType;
  std::string type;
  std::string column;
  Value value;

  bool Evaluate(const NodeRecord& node) const;
  bool ReadsFeatures() const { return kind == Kind::kFeatureEquals; }
};

PredicateDef TypePredicate(const std::string& name, const std::string& type);
PredicateDef FeaturePredicate(const std::string& name, const std::string& column,
                              Value value);

// Conventional predicate name of a node type: Row, Val, Pair, Cell, Token.
std::string TypePredicateName(const std::string& type);

class PredicateSet {
 public:
  PredicateSet() = default;
  explicit PredicateSet(std::vector<PredicateDef> predicates);

  const std::vector<PredicateDef>& predicates() const { return predicates_; }
  std::size_t size() const { return predicates_.size(); }
  const PredicateDef* Find(const std::string& name) const;
  // Replaces an existing predicate of the same name.
  void Add(PredicateDef predicate);
  bool ReadsFeatures() const;

 private:
  std::vector<PredicateDef> predicates_;
};

// Node-type indicators for the five constructor node types.
PredicateSet TypePredicates();

// ---------------------------------------------------------------------------
// Formulas

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaNode {
 public:
  enum class Op { kAtom, kNot, kAnd, kDiamond };

  Op op() const { return op_; }
  // Predicate name for atoms, relation name for diamonds.
  const std::string& name() const { return name_; }
  // Graded threshold N of a diamond.
  int count() const { return count_; }
  const Formula& left() const { return left_; }
  const Formula& right() const { return right_; }

  FormulaNode(Op op, std::string name, int count, Formula left, Formula right)
      : op_(op), name_(std::move(name)), count_(count),
        left_(std::move(left)), right_(std::move(right)) {}

 private:
  Op op_;
  std::string name_;
  int count_;
  Formula left_;
  Formula right_;
};

Formula Atom(std::string predicate);
Formula Not(Formula f);
Formula And(Formula a, Formula b);
// Sugar: !(!a & !b).
Formula Or(Formula a, Formula b);
// Sugar: !(a & !b).
Formula Implies(Formula a, Formula b);
// ∃^{≥count} y (relation(x, y) ∧ f(y)). count must be >= 1.
Formula Diamond(std::string relation, int count, Formula f);

// Concrete syntax accepted by ParseFormula; ParseFormula(ToString(f)) is
// structurally equal to f.
std::string ToString(const Formula& f);
bool StructurallyEqual(const Formula& a, const Formula& b);

// Grammar (whitespace-insensitive):
//   f := NAME | '!' f | '(' f ')' | '(' f ('&' | '|' | '->') f ... ')'
//      | '<' NAME '>' '=' INT f
// Names may contain letters, digits and _ . : + - characters. Binary
// operators inside one parenthesis group associate to the left and may not
// be mixed. Throws FormulaSyntaxError with the offending offset.
Formula ParseFormula(std::string_view text);

int ModalDepth(const Formula& f);

// Distinct subformulas in post-order (children before parents), keyed by
// structure.
std::vector<Formula> Subformulas(const Formula& f);

struct Signature {
  std::set<std::string> relations;
  std::set<std::string> predicates;
};

Signature MakeSignature(const Grable& grable, const PredicateSet& predicates);
// Throws grable::Error naming the first unknown predicate or relation.
void Resolve(const Formula& f, const Signature& signature);

// Truth value per node id (bottom-up, O(|subformulas| * (|V| + |E|))).
std::vector<std::uint8_t> Evaluate(const Grable& grable, const Formula& f,
                                   const PredicateSet& predicates);

// Restricts per-node bits to row nodes, in row order.
LabelVector RowBits(const Grable& grable, const std::vector<std::uint8_t>& bits);

// ---------------------------------------------------------------------------
// Built-in task formulas

// Formulas over the incidence signature (extended incidence for DIAMOND):
//   UNIQUE   <E_c>=1 (Val & !<E_c>=2 Row)
//   COUNT gt <E_c>=1 (Val & <E_c>=k+1 Row)
//   COUNT eq ψ_cnt,k-1 & !ψ_cnt,k
//   DOUBLE   (!Anchor & ψ1) | (Anchor & ψ2) where
//            ψn = <E_c1>=1 (Val & <E_c1>=n ((Row & Anchor) & <E_c2>=1 Val))
//   DIAMOND  <E_c1+c2>=1 (Pair & <E_c1+c2>=2 Row)
Formula BuiltinFormula(const TaskKind& task);

// Type predicates plus, for DOUBLE, Anchor := row[c2] == anchor.
PredicateSet TaskPredicates(const TaskKind& task);

// Disjunction of the per-column uniqueness formulas.
Formula UniqueAnyColumnFormula(const std::vector<std::string>& columns);

}  // namespace grable

#endif  // GRABLE_GML_H_
