#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rastergraph/geometry.hpp"
#include "rastergraph/query.hpp"
#include "rastergraph/raster.hpp"
#include "rastergraph/rdf.hpp"

namespace rastergraph::eval {

struct ErrorValue {
  std::string message;
};

using GeometryPtr = std::shared_ptr<const geom::Geometry>;
using RasterPtr = std::shared_ptr<const raster::Raster>;
using ValueList = std::vector<double>;

/// Result of evaluating an expression. ErrorValue plays the part of the
/// SPARQL error: filters reject it and BIND skips the solution.
using Value = std::variant<ErrorValue, rdf::Term, double, bool, GeometryPtr, RasterPtr, ValueList>;

inline bool isError(const Value& v) { return std::holds_alternative<ErrorValue>(v); }

class Engine;

/// Argument coercion available to builtins. Terms are converted on demand
/// (WKT -> geometry, raster literals -> raster, numeric literals -> number)
/// and a feature IRI stands for its geometry or coverage in the graph.
/// Parsed literals are cached by term. Every accessor throws TypeError when
/// the value has the wrong kind.
class Coercer {
 public:
  explicit Coercer(const rdf::Graph& graph) : graph_(&graph) {}

  double number(const Value& v);
  GeometryPtr geometry(const Value& v);  // rasters give their domain
  RasterPtr raster(const Value& v);
  /// Raster if the value is (or denotes) one, else geometry.
  std::variant<RasterPtr, GeometryPtr> spatial(const Value& v);
  bool isRaster(const Value& v);
  std::string iri(const Value& v);
  bool boolean(const Value& v);  // effective boolean value

  /// RDF term for a computed value; the term is remembered so coercing it
  /// back returns the same object without re-parsing. Throws TypeError for
  /// errors and lists.
  rdf::Term toTerm(const Value& v);

  const rdf::Graph& graph() const { return *graph_; }

 private:
  std::optional<rdf::Term> resolveLiteral(const rdf::Term& resource, bool wantRaster);

  const rdf::Graph* graph_;
  std::unordered_map<rdf::Term, Value, rdf::TermHash> parsed_;
  std::unordered_map<const void*, rdf::Term> termsByObject_;
  std::unordered_map<rdf::Term, std::optional<rdf::Term>, rdf::TermHash> geometryOf_;
  std::unordered_map<rdf::Term, std::optional<rdf::Term>, rdf::TermHash> rasterOf_;
};

struct Function {
  std::size_t minArgs = 0;
  std::size_t maxArgs = 0;
  /// May throw; the engine turns exceptions into ErrorValue.
  std::function<Value(Coercer&, const std::vector<Value>&)> impl;
};

class FunctionRegistry {
 public:
  /// Throws ValidationError if minArgs > maxArgs or the IRI is empty.
  void add(std::string iri, Function f);
  const Function* find(const std::string& iri) const;
  std::size_t size() const { return functions_.size(); }
  std::vector<std::string> names() const;

  /// Every builtin: GeoSPARQL functions under both the geo: and geof:
  /// namespaces, and the raster extension under geo2:.
  static const FunctionRegistry& builtins();

 private:
  std::unordered_map<std::string, Function> functions_;
};

/// A projected result. Unbound cells are std::nullopt.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<rdf::Term>>> rows;
};

/// Query evaluation over one graph. Not thread-safe (it owns literal and
/// call caches); use one engine per thread over a shared graph.
class Engine {
 public:
  explicit Engine(const rdf::Graph& graph, const FunctionRegistry& registry = FunctionRegistry::builtins());

  /// Solutions of a pattern tree, in evaluation order, duplicates kept.
  rdf::BindingSet evalBgp(const query::BgpPtr& node);
  Value evalExpression(const query::Expression& e, const rdf::Binding& mu);
  bool satisfies(const query::Expression& condition, const rdf::Binding& mu);

  /// Distinct projected rows sorted by their N-Triples text. With MAX, rows
  /// are grouped on the plain projected variables and carry the term holding
  /// the largest numeric value.
  ResultTable select(const query::SelectQuery& q);

  Coercer& coercer() { return coercer_; }

 private:
  struct MemoKey {
    std::string iri;
    std::vector<Value> args;
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const noexcept;
  };
  struct MemoEq {
    bool operator()(const MemoKey& a, const MemoKey& b) const noexcept;
  };

  Value call(const query::Expression& e, const rdf::Binding& mu);

  const rdf::Graph& graph_;
  const FunctionRegistry& registry_;
  Coercer coercer_;
  std::unordered_map<MemoKey, Value, MemoHash, MemoEq> memo_;
};

/// Compares two values as SPARQL does for the supported types (numbers,
/// booleans, xsd:dateTime, strings, term identity for =/!=). Returns an
/// ErrorValue for incomparable operands.
Value compareValues(query::Expression::CompareOp op, const Value& a, const Value& b, Coercer& c);

/// Seconds since the epoch for an xsd:dateTime lexical form; a missing
/// timezone is read as UTC. Throws ValidationError when malformed.
double parseDateTime(std::string_view lexical);

/// Convenience: parse and evaluate.
ResultTable runQuery(const rdf::Graph& graph, std::string_view queryText);

}  // namespace rastergraph::eval
