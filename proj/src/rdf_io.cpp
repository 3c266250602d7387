#include "rastergraph/rdf_io.hpp"

#include <cctype>
#include <unordered_map>

#include "rastergraph/error.hpp"
#include "rastergraph/vocab.hpp"

namespace rastergraph::rdf {

const std::map<std::string, std::string>& defaultPrefixes() {
  static const std::map<std::string, std::string> prefixes = {
      {"rdf", std::string(vocab::kRdf)},   {"rdfs", std::string(vocab::kRdfs)},
      {"xsd", std::string(vocab::kXsd)},   {"geo", std::string(vocab::kGeo)},
      {"geof", std::string(vocab::kGeof)}, {"geo2", std::string(vocab::kGeo2)},
      {"ex", std::string(vocab::kEx)},     {"ear", std::string(vocab::kEar)},
      {"uom", std::string(vocab::kUom)},   {"om", std::string(vocab::kOm)},
  };
  return prefixes;
}

namespace {

bool isNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

class DocumentParser {
 public:
  DocumentParser(std::string_view text, Graph& graph)
      : text_(text), graph_(graph), prefixes_(defaultPrefixes()) {}

  std::size_t run() {
    std::size_t added = 0;
    for (skipSpace(); !atEnd(); skipSpace()) {
      if (peek() == '@' || startsWithKeyword("PREFIX")) {
        prefixDirective();
        continue;
      }
      added += statement();
    }
    return added;
  }

 private:
  bool atEnd() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      lineStart_ = pos_;
    }
    return c;
  }
  std::size_t column() const { return pos_ - lineStart_ + 1; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column());
  }

  void skipSpace() {
    while (!atEnd()) {
      char c = peek();
      if (c == '#') {
        while (!atEnd() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skipSpace();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  bool startsWithKeyword(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
    const char after = peek(kw.size());
    return !isNameChar(after) && after != ':';
  }

  void prefixDirective() {
    bool sparqlStyle = true;
    if (peek() == '@') {
      get();
      sparqlStyle = false;
      if (!startsWithKeyword("PREFIX")) fail("unknown directive");
    }
    for (int i = 0; i < 6; ++i) get();
    skipSpace();
    std::string name;
    while (!atEnd() && peek() != ':') {
      if (!isNameChar(peek())) fail("bad prefix name");
      name += get();
    }
    if (atEnd()) fail("unterminated prefix declaration");
    get();
    skipSpace();
    prefixes_[name] = iriRef();
    if (!sparqlStyle) expect('.');
  }

  std::string iriRef() {
    if (peek() != '<') fail("expected '<'");
    get();
    std::string iri;
    while (!atEnd() && peek() != '>') {
      char c = get();
      if (c == '\n' || c == ' ') fail("whitespace inside IRI");
      iri += c;
    }
    if (atEnd()) fail("unterminated IRI");
    get();
    if (iri.empty()) fail("empty IRI");
    return iri;
  }

  std::string prefixedName() {
    std::string prefix;
    while (!atEnd() && peek() != ':' && isNameChar(peek())) prefix += get();
    if (peek() != ':') fail("expected a term, found '" + std::string(1, peek()) + "'");
    get();
    std::string local;
    while (!atEnd() && isNameChar(peek())) local += get();
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("unknown prefix '" + prefix + ":'");
    return it->second + local;
  }

  Term iriTerm() {
    if (peek() == '<') return Term::iri(iriRef());
    return Term::iri(prefixedName());
  }

  Term blankNode() {
    get();
    if (peek() != ':') fail("expected ':' after '_'");
    get();
    std::string label;
    while (!atEnd() && isNameChar(peek())) label += get();
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
    }
    if (label.empty()) fail("empty blank node label");
    return Term::blank(label);
  }

  std::string quoted() {
    get();
    std::string out;
    while (true) {
      if (atEnd()) fail("unterminated string literal");
      char c = get();
      if (c == '"') break;
      if (c == '\n') fail("newline inside string literal");
      if (c == '\\') {
        if (atEnd()) fail("dangling escape");
        char e = get();
        switch (e) {
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case '\'': out += '\''; break;
          default: fail(std::string("unknown escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  Term literal() {
    std::string lexical = quoted();
    if (peek() == '@') {
      get();
      std::string lang;
      while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
        lang += get();
      if (lang.empty()) fail("empty language tag");
      return Term::literal(std::move(lexical), {}, std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      return Term::literal(std::move(lexical), iriTerm().value());
    }
    return Term::literal(std::move(lexical));
  }

  Term numberOrBoolean() {
    if (startsWithKeyword("TRUE") || startsWithKeyword("FALSE")) {
      std::string word;
      while (!atEnd() && std::isalpha(static_cast<unsigned char>(peek()))) word += get();
      return Term::literal(word == "true" ? "true" : "false", std::string(vocab::kXsdBoolean));
    }
    std::string num;
    if (peek() == '+' || peek() == '-') num += get();
    bool dot = false, exp = false;
    while (!atEnd()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        num += get();
      } else if (c == '.' && !dot && !exp && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        dot = true;
        num += get();
      } else if ((c == 'e' || c == 'E') && !exp) {
        exp = true;
        num += get();
        if (peek() == '+' || peek() == '-') num += get();
      } else {
        break;
      }
    }
    if (num.empty() || num == "+" || num == "-") fail("expected a term");
    const char* dt = exp ? vocab::kXsdDouble.data() : (dot ? vocab::kXsdDecimal.data()
                                                            : vocab::kXsdInteger.data());
    return Term::literal(std::move(num), dt);
  }

  Term subject() {
    skipSpace();
    char c = peek();
    if (c == '<' ) return iriTerm();
    if (c == '_') return blankNode();
    if (c == '"') fail("a literal cannot be a triple subject");
    return iriTerm();
  }

  Term predicate() {
    skipSpace();
    if (peek() == 'a' && !isNameChar(peek(1)) && peek(1) != ':') {
      get();
      return Term::iri(std::string(vocab::kRdfType));
    }
    if (peek() == '_' || peek() == '"') fail("predicate must be an IRI");
    return iriTerm();
  }

  Term object() {
    skipSpace();
    char c = peek();
    if (c == '<') return iriTerm();
    if (c == '_' && peek(1) == ':') return blankNode();
    if (c == '"') return literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        startsWithKeyword("TRUE") || startsWithKeyword("FALSE"))
      return numberOrBoolean();
    return iriTerm();
  }

  std::size_t statement() {
    const std::size_t stmtLine = line_;
    std::size_t added = 0;
    Term s = subject();
    while (true) {
      Term p = predicate();
      while (true) {
        Term o = object();
        try {
          added += graph_.insert(Triple{s, p, std::move(o)}) ? 1 : 0;
        } catch (const ValidationError& e) {
          throw ParseError(e.what(), stmtLine);
        }
        skipSpace();
        if (peek() != ',') break;
        get();
      }
      skipSpace();
      if (peek() == ';') {
        while (peek() == ';') {
          get();
          skipSpace();
        }
        if (peek() == '.') break;
        continue;
      }
      break;
    }
    expect('.');
    return added;
  }

  std::string_view text_;
  Graph& graph_;
  std::map<std::string, std::string> prefixes_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t lineStart_ = 0;
};

}  // namespace

std::size_t parseRdfDocumentInto(std::string_view text, Graph& graph) {
  return DocumentParser(text, graph).run();
}

Graph parseRdfDocument(std::string_view text) {
  Graph g;
  parseRdfDocumentInto(text, g);
  return g;
}

std::string toNTriples(const Graph& graph) {
  std::string out;
  for (const Triple& t : graph.triples()) {
    out += t.subject.toNTriples();
    out += ' ';
    out += t.predicate.toNTriples();
    out += ' ';
    out += t.object.toNTriples();
    out += " .\n";
  }
  return out;
}

}  // namespace rastergraph::rdf
