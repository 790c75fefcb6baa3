#pragma once

#include "olms/ontology.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace olms::dl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Atomic {
  Id cls;
};

// Conjunction of at least two operands, none of which is itself an And.
struct And {
  std::vector<ExprPtr> operands;
};

// property some filler
struct Some {
  Id property;
  ExprPtr filler;
};

// property value individual
struct Value {
  Id property;
  Id individual;
};

struct Expr {
  std::variant<Atomic, And, Some, Value> node;
};

ExprPtr atomic(Id cls);
// Flattens nested conjunctions; a single operand is returned unchanged.
ExprPtr conjunction(std::vector<ExprPtr> operands);
ExprPtr some(Id property, ExprPtr filler);
ExprPtr value(Id property, Id individual);

bool structurally_equal(const Expr& lhs, const Expr& rhs);

// Grammar, whitespace separated, keywords case-sensitive:
//   expr := prim ('and' prim)*
//   prim := IDENT | IDENT 'some' prim | IDENT 'value' IDENT | '(' expr ')'
// Names are not resolved here. Throws ParseError with a 1-based offset.
ExprPtr parse_query(std::string_view text);

// Canonical text form: every Some operand is parenthesised, conjunctions
// nested under Some are therefore grouped too. parse_query(print(e)) is
// structurally equal to e.
std::string print(const Expr& expr);

// Set semantics over asserted and materialized facts. Result is sorted.
// Throws Error(UnknownName) if a name does not resolve to the expected kind.
IdSet evaluate(const Expr& expr, const OntologyStore& store);
IdSet evaluate(std::string_view text, const OntologyStore& store);

// Same as evaluate(Atomic(cls)); throws Error(UnknownClass) for an unknown
// class.
IdSet class_extension(const Id& cls, const OntologyStore& store);

} // namespace olms::dl
