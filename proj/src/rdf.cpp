#include "rastergraph/rdf.hpp"

#include <algorithm>

#include "rastergraph/error.hpp"
#include "rastergraph/vocab.hpp"

namespace rastergraph::rdf {

namespace {

std::size_t combine(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::strong_ordering compareStrings(const std::string& a, const std::string& b) {
  const int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace

Term Term::make(Kind kind, std::string value, std::string datatype, std::string language) {
  std::size_t h = std::hash<std::string>{}(value);
  h = combine(h, static_cast<std::size_t>(kind));
  h = combine(h, std::hash<std::string>{}(datatype));
  h = combine(h, std::hash<std::string>{}(language));
  return Term(std::make_shared<const Data>(
      Data{kind, std::move(value), std::move(datatype), std::move(language), h}));
}

Term::Term() : Term(make(Kind::Iri, "urn:x-rastergraph:nil", {}, {})) {}

Term Term::iri(std::string value) {
  if (value.empty()) throw ValidationError("IRI must not be empty");
  return make(Kind::Iri, std::move(value), {}, {});
}

Term Term::blank(std::string label) {
  if (label.empty()) throw ValidationError("blank node label must not be empty");
  return make(Kind::BlankNode, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype, std::string language) {
  if (!language.empty()) {
    if (!datatype.empty() && datatype != vocab::kLangString)
      throw ValidationError("language tag on a literal typed <" + datatype + ">");
    datatype = std::string(vocab::kLangString);
  } else if (datatype.empty()) {
    datatype = std::string(vocab::kXsdString);
  } else if (datatype == vocab::kLangString) {
    throw ValidationError("rdf:langString literal without a language tag");
  }
  return make(Kind::Literal, std::move(lexical), std::move(datatype), std::move(language));
}

std::string escapeLiteral(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Term::toNTriples() const {
  switch (kind()) {
    case Kind::Iri: return "<" + value() + ">";
    case Kind::BlankNode: return "_:" + value();
    case Kind::Literal: {
      std::string out = "\"" + escapeLiteral(value()) + "\"";
      if (!language().empty()) return out + "@" + language();
      if (datatype() == vocab::kXsdString) return out;
      return out + "^^<" + datatype() + ">";
    }
  }
  return {};
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.data_ == b.data_) return true;
  return a.data_->hash == b.data_->hash && a.data_->kind == b.data_->kind &&
         a.data_->value == b.data_->value && a.data_->datatype == b.data_->datatype &&
         a.data_->language == b.data_->language;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  if (a.data_ == b.data_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = compareStrings(a.value(), b.value()); c != 0) return c;
  if (auto c = compareStrings(a.datatype(), b.datatype()); c != 0) return c;
  return compareStrings(a.language(), b.language());
}

std::size_t TripleHash::operator()(const Triple& t) const noexcept {
  return combine(combine(t.subject.hash(), t.predicate.hash()), t.object.hash());
}

std::vector<std::string> TriplePattern::variables() const {
  std::vector<std::string> out;
  for (const PatternTerm* pt : {&subject, &predicate, &object}) {
    if (const auto* v = std::get_if<Variable>(pt)) {
      if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    }
  }
  return out;
}

const Term* Binding::find(const std::string& variable) const {
  auto it = map_.find(variable);
  return it == map_.end() ? nullptr : &it->second;
}

bool Binding::bind(const std::string& variable, Term term) {
  auto [it, inserted] = map_.try_emplace(variable, std::move(term));
  return inserted || it->second == term;
}

bool compatible(const Binding& a, const Binding& b) {
  const Binding& small = a.size() <= b.size() ? a : b;
  const Binding& large = a.size() <= b.size() ? b : a;
  for (const auto& [var, term] : small) {
    if (const Term* other = large.find(var); other && !(*other == term)) return false;
  }
  return true;
}

namespace {

// Variables bound in every binding of the set.
std::vector<std::string> certainVariables(const BindingSet& set) {
  if (set.empty()) return {};
  std::vector<std::string> vars;
  for (const auto& [var, term] : set.front()) vars.push_back(var);
  for (const Binding& b : set) {
    std::erase_if(vars, [&](const std::string& v) { return !b.contains(v); });
    if (vars.empty()) break;
  }
  return vars;
}

struct KeyHash {
  std::size_t operator()(const std::vector<Term>& key) const noexcept {
    std::size_t h = 0;
    for (const Term& t : key) h = combine(h, t.hash());
    return h;
  }
};

std::vector<Term> keyOf(const Binding& b, const std::vector<std::string>& vars) {
  std::vector<Term> key;
  key.reserve(vars.size());
  for (const auto& v : vars) key.push_back(*b.find(v));
  return key;
}

Binding merged(const Binding& a, const Binding& b) {
  Binding out = a;
  for (const auto& [var, term] : b) out.bind(var, term);
  return out;
}

}  // namespace

BindingSet joinBindings(const BindingSet& left, const BindingSet& right) {
  BindingSet out;
  if (left.empty() || right.empty()) return out;

  std::vector<std::string> shared;
  {
    const auto l = certainVariables(left);
    const auto r = certainVariables(right);
    for (const auto& v : l)
      if (std::find(r.begin(), r.end(), v) != r.end()) shared.push_back(v);
  }

  if (shared.empty()) {
    for (const Binding& a : left)
      for (const Binding& b : right)
        if (compatible(a, b)) out.push_back(merged(a, b));
    return out;
  }

  std::unordered_map<std::vector<Term>, std::vector<std::size_t>, KeyHash> table;
  for (std::size_t i = 0; i < right.size(); ++i) table[keyOf(right[i], shared)].push_back(i);
  for (const Binding& a : left) {
    auto it = table.find(keyOf(a, shared));
    if (it == table.end()) continue;
    for (std::size_t i : it->second)
      if (compatible(a, right[i])) out.push_back(merged(a, right[i]));
  }
  return out;
}

bool Graph::insert(Triple triple) {
  if (triple.subject.isLiteral())
    throw ValidationError("triple subject must not be a literal: " + triple.subject.toNTriples());
  if (!triple.predicate.isIri())
    throw ValidationError("triple predicate must be an IRI: " + triple.predicate.toNTriples());
  if (!set_.insert(triple).second) return false;
  const std::size_t id = triples_.size();
  bySubject_[triple.subject].push_back(id);
  byPredicate_[triple.predicate].push_back(id);
  byObject_[triple.object].push_back(id);
  triples_.push_back(std::move(triple));
  return true;
}

std::size_t Graph::insertAll(const Graph& other) {
  std::size_t added = 0;
  for (const Triple& t : other.triples()) added += insert(t) ? 1 : 0;
  return added;
}

const std::vector<std::size_t>* Graph::lookup(const Index& index, const Term& key) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = index.find(key);
  return it == index.end() ? &kEmpty : &it->second;
}

namespace {

// Unifies one pattern position with a term; repeated variables must agree.
bool unify(const PatternTerm& pt, const Term& term, Binding& b) {
  if (const auto* t = std::get_if<Term>(&pt)) return *t == term;
  return b.bind(std::get<Variable>(pt).name, term);
}

}  // namespace

BindingSet Graph::match(const TriplePattern& pattern) const {
  const std::vector<std::size_t>* candidates = nullptr;
  auto consider = [&](const PatternTerm& pt, const Index& index) {
    if (const auto* t = std::get_if<Term>(&pt)) {
      const auto* ids = lookup(index, *t);
      if (!candidates || ids->size() < candidates->size()) candidates = ids;
    }
  };
  consider(pattern.subject, bySubject_);
  consider(pattern.predicate, byPredicate_);
  consider(pattern.object, byObject_);

  BindingSet out;
  auto tryTriple = [&](const Triple& t) {
    Binding b;
    if (unify(pattern.subject, t.subject, b) && unify(pattern.predicate, t.predicate, b) &&
        unify(pattern.object, t.object, b))
      out.push_back(std::move(b));
  };
  if (candidates) {
    for (std::size_t id : *candidates) tryTriple(triples_[id]);
  } else {
    for (const Triple& t : triples_) tryTriple(t);
  }
  return out;
}

std::vector<Term> Graph::objects(const Term& subject, const Term& predicate) const {
  std::vector<Term> out;
  for (std::size_t id : *lookup(bySubject_, subject)) {
    if (triples_[id].predicate == predicate) out.push_back(triples_[id].object);
  }
  return out;
}

}  // namespace rastergraph::rdf
