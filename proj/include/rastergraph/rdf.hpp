#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace rastergraph::rdf {

/// An RDF term: IRI, blank node or literal.
///
/// Terms are immutable and share their text, so copying one is a reference
/// count bump. This matters because raster literals can be tens of kilobytes
/// and get copied into every solution of a join.
class Term {
 public:
  enum class Kind : unsigned char { Iri, BlankNode, Literal };

  /// Throws ValidationError on an empty IRI.
  static Term iri(std::string value);
  /// Throws ValidationError on an empty label.
  static Term blank(std::string label);
  /// A literal; an empty datatype means xsd:string, or rdf:langString when a
  /// language tag is given. Throws ValidationError when a language tag is
  /// combined with any datatype other than rdf:langString.
  static Term literal(std::string lexical, std::string datatype = {}, std::string language = {});

  Term();  // the IRI "urn:x-rastergraph:nil"; exists so containers can default-construct

  Kind kind() const noexcept { return data_->kind; }
  bool isIri() const noexcept { return kind() == Kind::Iri; }
  bool isBlank() const noexcept { return kind() == Kind::BlankNode; }
  bool isLiteral() const noexcept { return kind() == Kind::Literal; }

  /// IRI text, blank node label, or literal lexical form.
  const std::string& value() const noexcept { return data_->value; }
  const std::string& datatype() const noexcept { return data_->datatype; }
  const std::string& language() const noexcept { return data_->language; }
  std::size_t hash() const noexcept { return data_->hash; }

  /// N-Triples rendering: <iri>, _:label, "lex"^^<dt>, "lex"@lang or "lex".
  std::string toNTriples() const;

  friend bool operator==(const Term& a, const Term& b) noexcept;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

 private:
  struct Data {
    Kind kind;
    std::string value;
    std::string datatype;
    std::string language;
    std::size_t hash;
  };
  explicit Term(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  static Term make(Kind kind, std::string value, std::string datatype, std::string language);

  std::shared_ptr<const Data> data_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

/// Escapes a literal lexical form for N-Triples / query output.
std::string escapeLiteral(std::string_view lexical);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept;
};

/// A query variable, stored without its leading '?'.
struct Variable {
  std::string name;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  /// Variables in subject, predicate, object order, without duplicates.
  std::vector<std::string> variables() const;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

/// A partial map from variable names to terms.
class Binding {
 public:
  Binding() = default;
  Binding(std::initializer_list<std::pair<const std::string, Term>> init) : map_(init) {}

  const Term* find(const std::string& variable) const;
  bool contains(const std::string& variable) const { return map_.contains(variable); }
  /// Binds `variable`; returns false (and leaves the binding untouched) if it
  /// is already bound to a different term.
  bool bind(const std::string& variable, Term term);
  void erase(const std::string& variable) { map_.erase(variable); }

  std::size_t size() const noexcept { return map_.size(); }
  bool empty() const noexcept { return map_.empty(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  friend bool operator==(const Binding&, const Binding&) = default;
  friend auto operator<=>(const Binding&, const Binding&) = default;

 private:
  std::map<std::string, Term> map_;
};

using BindingSet = std::vector<Binding>;

/// True iff every variable bound in both maps to the same term.
bool compatible(const Binding& a, const Binding& b);

/// Union of every compatible pair, left-major order. Hash join on the
/// variables that are bound in every binding of both inputs.
BindingSet joinBindings(const BindingSet& left, const BindingSet& right);

/// Indexed in-memory set of triples.
///
/// Set semantics: inserting a triple already present is a no-op. Mutation is
/// meant for bulk loading; query evaluation only reads, so a loaded graph can
/// be shared by concurrent evaluations.
class Graph {
 public:
  /// Returns true if the triple was new. Throws ValidationError when the
  /// subject is a literal or the predicate is not an IRI.
  bool insert(Triple triple);
  /// Inserts every triple of `other`; returns the number actually added.
  std::size_t insertAll(const Graph& other);

  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  bool contains(const Triple& t) const { return set_.contains(t); }
  const std::vector<Triple>& triples() const noexcept { return triples_; }

  /// {µ | dom(µ) = var(tp) and µ(tp) ∈ graph}, in insertion order. Uses the
  /// most selective bound position's index.
  BindingSet match(const TriplePattern& pattern) const;

  /// Objects of (subject, predicate, ?o), in insertion order.
  std::vector<Term> objects(const Term& subject, const Term& predicate) const;

 private:
  using Index = std::unordered_map<Term, std::vector<std::size_t>, TermHash>;
  const std::vector<std::size_t>* lookup(const Index& index, const Term& key) const;

  std::vector<Triple> triples_;
  std::unordered_set<Triple, TripleHash> set_;
  Index bySubject_;
  Index byPredicate_;
  Index byObject_;
};

/// Free-function spelling of Graph::match.
inline BindingSet matchPattern(const Graph& graph, const TriplePattern& pattern) {
  return graph.match(pattern);
}

}  // namespace rastergraph::rdf
