#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rastergraph/rdf.hpp"

namespace rastergraph::query {

struct Expression;
using ExprPtr = std::shared_ptr<const Expression>;

struct Expression {
  enum class Kind { Variable, Constant, Call, Compare, And, Or, Not, Arith };
  enum class CompareOp { Eq, Ne, Lt, Gt, Le, Ge };
  enum class ArithOp { Add, Sub, Mul, Div, Neg };

  Kind kind = Kind::Constant;
  std::string name;  // variable name (no '?') or function IRI
  rdf::Term constant;
  CompareOp compare = CompareOp::Eq;
  ArithOp arith = ArithOp::Add;
  std::vector<ExprPtr> args;  // operands / call arguments

  static ExprPtr variable(std::string name);
  static ExprPtr constantTerm(rdf::Term t);
  static ExprPtr call(std::string iri, std::vector<ExprPtr> args);
  static ExprPtr comparison(CompareOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr conjunction(ExprPtr lhs, ExprPtr rhs);
  static ExprPtr disjunction(ExprPtr lhs, ExprPtr rhs);
  static ExprPtr negation(ExprPtr operand);
  static ExprPtr arithmetic(ArithOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr negate(ExprPtr operand);

  /// Deep structural equality.
  friend bool operator==(const Expression& a, const Expression& b);
};

struct BgpNode;
using BgpPtr = std::shared_ptr<const BgpNode>;

/// Graph pattern tree. A null BgpPtr stands for the empty group `{}`, whose
/// only solution is the empty binding.
struct BgpNode {
  enum class Kind { Pattern, Block, Conj, Filter, Bind };

  Kind kind = Kind::Pattern;
  rdf::TriplePattern pattern;  // Pattern
  BgpPtr left;                 // Block child, Conj left, Filter/Bind body
  BgpPtr right;                // Conj right
  ExprPtr expr;                // Filter condition / Bind expression
  std::string variable;        // Bind target

  static BgpPtr triple(rdf::TriplePattern p);
  static BgpPtr block(BgpPtr inner);
  static BgpPtr conj(BgpPtr l, BgpPtr r);
  static BgpPtr filter(BgpPtr body, ExprPtr cond);
  static BgpPtr bind(BgpPtr body, ExprPtr e, std::string var);

  friend bool operator==(const BgpNode& a, const BgpNode& b);
};

bool sameTree(const BgpPtr& a, const BgpPtr& b);
bool sameExpr(const ExprPtr& a, const ExprPtr& b);

struct MaxAggregate {
  std::string over;  // aggregated variable
  std::string as;    // output column
  friend bool operator==(const MaxAggregate&, const MaxAggregate&) = default;
};

struct SelectQuery {
  bool selectAll = false;
  std::vector<std::string> projection;  // plain variables; group keys when aggregate is set
  std::optional<MaxAggregate> aggregate;
  BgpPtr body;
  std::map<std::string, std::string> prefixes;  // declared in the text

  /// Output columns: projection followed by the aggregate column. For
  /// SELECT * these are the body's variables in order of appearance.
  std::vector<std::string> columns() const;

  friend bool operator==(const SelectQuery& a, const SelectQuery& b);
};

/// Variables mentioned in a pattern tree, first occurrence first.
std::vector<std::string> variablesOf(const BgpPtr& body);

/// Parses the SELECT subset. Prefixed names are expanded (declared prefixes
/// shadow the built-in table). Numbers are typed xsd:decimal, or xsd:double
/// when written with an exponent. FILTER and BIND wrap everything before
/// them in the enclosing group.
///
/// Throws ParseError with line and column.
SelectQuery parseQuery(std::string_view text);

/// Canonical text: full IRIs, fully parenthesised expressions. Re-parsing
/// the output yields an equal query.
std::string toString(const SelectQuery& q);
std::string toString(const Expression& e);

}  // namespace rastergraph::query
