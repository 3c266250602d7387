#include <algorithm>
#include <cctype>

#include "rastergraph/error.hpp"
#include "rastergraph/query.hpp"
#include "rastergraph/rdf_io.hpp"
#include "rastergraph/vocab.hpp"

namespace rastergraph::query {

// ---- AST helpers --------------------------------------------------------------

namespace {

ExprPtr make(Expression e) { return std::make_shared<const Expression>(std::move(e)); }
BgpPtr make(BgpNode n) { return std::make_shared<const BgpNode>(std::move(n)); }

}  // namespace

ExprPtr Expression::variable(std::string name) {
  Expression e;
  e.kind = Kind::Variable;
  e.name = std::move(name);
  return make(std::move(e));
}

ExprPtr Expression::constantTerm(rdf::Term t) {
  Expression e;
  e.kind = Kind::Constant;
  e.constant = std::move(t);
  return make(std::move(e));
}

ExprPtr Expression::call(std::string iri, std::vector<ExprPtr> args) {
  Expression e;
  e.kind = Kind::Call;
  e.name = std::move(iri);
  e.args = std::move(args);
  return make(std::move(e));
}

ExprPtr Expression::comparison(CompareOp op, ExprPtr lhs, ExprPtr rhs) {
  Expression e;
  e.kind = Kind::Compare;
  e.compare = op;
  e.args = {std::move(lhs), std::move(rhs)};
  return make(std::move(e));
}

ExprPtr Expression::conjunction(ExprPtr lhs, ExprPtr rhs) {
  Expression e;
  e.kind = Kind::And;
  e.args = {std::move(lhs), std::move(rhs)};
  return make(std::move(e));
}

ExprPtr Expression::disjunction(ExprPtr lhs, ExprPtr rhs) {
  Expression e;
  e.kind = Kind::Or;
  e.args = {std::move(lhs), std::move(rhs)};
  return make(std::move(e));
}

ExprPtr Expression::negation(ExprPtr operand) {
  Expression e;
  e.kind = Kind::Not;
  e.args = {std::move(operand)};
  return make(std::move(e));
}

ExprPtr Expression::arithmetic(ArithOp op, ExprPtr lhs, ExprPtr rhs) {
  Expression e;
  e.kind = Kind::Arith;
  e.arith = op;
  e.args = {std::move(lhs), std::move(rhs)};
  return make(std::move(e));
}

ExprPtr Expression::negate(ExprPtr operand) {
  Expression e;
  e.kind = Kind::Arith;
  e.arith = ArithOp::Neg;
  e.args = {std::move(operand)};
  return make(std::move(e));
}

bool sameExpr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case Expression::Kind::Variable:
    case Expression::Kind::Call:
      if (a.name != b.name) return false;
      break;
    case Expression::Kind::Constant:
      if (!(a.constant == b.constant)) return false;
      break;
    case Expression::Kind::Compare:
      if (a.compare != b.compare) return false;
      break;
    case Expression::Kind::Arith:
      if (a.arith != b.arith) return false;
      break;
    default: break;
  }
  for (std::size_t k = 0; k < a.args.size(); ++k)
    if (!sameExpr(a.args[k], b.args[k])) return false;
  return true;
}

BgpPtr BgpNode::triple(rdf::TriplePattern p) {
  BgpNode n;
  n.kind = Kind::Pattern;
  n.pattern = std::move(p);
  return make(std::move(n));
}

BgpPtr BgpNode::block(BgpPtr inner) {
  BgpNode n;
  n.kind = Kind::Block;
  n.left = std::move(inner);
  return make(std::move(n));
}

BgpPtr BgpNode::conj(BgpPtr l, BgpPtr r) {
  BgpNode n;
  n.kind = Kind::Conj;
  n.left = std::move(l);
  n.right = std::move(r);
  return make(std::move(n));
}

BgpPtr BgpNode::filter(BgpPtr body, ExprPtr cond) {
  BgpNode n;
  n.kind = Kind::Filter;
  n.left = std::move(body);
  n.expr = std::move(cond);
  return make(std::move(n));
}

BgpPtr BgpNode::bind(BgpPtr body, ExprPtr e, std::string var) {
  BgpNode n;
  n.kind = Kind::Bind;
  n.left = std::move(body);
  n.expr = std::move(e);
  n.variable = std::move(var);
  return make(std::move(n));
}

bool sameTree(const BgpPtr& a, const BgpPtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

bool operator==(const BgpNode& a, const BgpNode& b) {
  return a.kind == b.kind && a.pattern == b.pattern && sameTree(a.left, b.left) && sameTree(a.right, b.right) &&
         sameExpr(a.expr, b.expr) && a.variable == b.variable;
}

bool operator==(const SelectQuery& a, const SelectQuery& b) {
  return a.selectAll == b.selectAll && a.projection == b.projection && a.aggregate == b.aggregate &&
         sameTree(a.body, b.body);
}

namespace {

void collectVariables(const BgpPtr& n, std::vector<std::string>& out) {
  if (!n) return;
  auto add = [&](const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  switch (n->kind) {
    case BgpNode::Kind::Pattern:
      for (const auto& v : n->pattern.variables()) add(v);
      break;
    case BgpNode::Kind::Block: collectVariables(n->left, out); break;
    case BgpNode::Kind::Conj:
      collectVariables(n->left, out);
      collectVariables(n->right, out);
      break;
    case BgpNode::Kind::Filter: collectVariables(n->left, out); break;
    case BgpNode::Kind::Bind:
      collectVariables(n->left, out);
      add(n->variable);
      break;
  }
}

}  // namespace

std::vector<std::string> variablesOf(const BgpPtr& body) {
  std::vector<std::string> out;
  collectVariables(body, out);
  return out;
}

std::vector<std::string> SelectQuery::columns() const {
  std::vector<std::string> cols = selectAll ? variablesOf(body) : projection;
  if (aggregate) cols.push_back(aggregate->as);
  return cols;
}

// ---- parser -------------------------------------------------------------------

namespace {

bool isNameStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80; }
bool isNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SelectQuery run() {
    SelectQuery q;
    skipSpace();
    while (keywordAhead("PREFIX")) prefixDecl(q);
    if (!acceptKeyword("SELECT")) fail("expected SELECT");
    projection(q);
    acceptKeyword("WHERE");
    q.body = group();
    skipSpace();
    if (!atEnd()) fail("unexpected text after the query");
    if (q.aggregate && q.selectAll) fail("SELECT * cannot be combined with an aggregate");
    q.prefixes = declared_;
    return q;
  }

 private:
  // -- cursor ----------------------------------------------------------------
  bool atEnd() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      lineStart_ = pos_;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, pos_ - lineStart_ + 1);
  }

  void skipSpace() {
    while (!atEnd()) {
      if (peek() == '#') {
        while (!atEnd() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(peek()))) {
        get();
      } else {
        break;
      }
    }
  }

  bool keywordAhead(std::string_view kw) {
    skipSpace();
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t k = 0; k < kw.size(); ++k)
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + k])) != kw[k]) return false;
    const char after = peek(kw.size());
    return !isNameChar(after) && after != ':';
  }

  bool acceptKeyword(std::string_view kw) {
    if (!keywordAhead(kw)) return false;
    for (std::size_t k = 0; k < kw.size(); ++k) get();
    return true;
  }

  void expect(char c) {
    skipSpace();
    if (peek() != c) {
      if (atEnd()) fail(std::string("expected '") + c + "' but the query ended");
      fail(std::string("expected '") + c + "', found '" + peek() + "'");
    }
    get();
  }

  bool accept(char c) {
    skipSpace();
    if (peek() != c) return false;
    get();
    return true;
  }

  // -- terms -----------------------------------------------------------------
  void prefixDecl(SelectQuery&) {
    acceptKeyword("PREFIX");
    skipSpace();
    std::string name;
    while (!atEnd() && peek() != ':') {
      if (!isNameChar(peek())) fail("bad prefix name");
      name += get();
    }
    if (atEnd()) fail("expected ':' in PREFIX declaration");
    get();
    skipSpace();
    declared_[name] = iriRef();
  }

  std::string iriRef() {
    if (peek() != '<') fail("expected '<'");
    get();
    std::string iri;
    while (!atEnd() && peek() != '>') {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"' || c == '{' || c == '}')
        fail("invalid character in IRI");
      iri += get();
    }
    if (atEnd()) fail("unterminated IRI");
    get();
    if (iri.empty()) fail("empty IRI");
    return iri;
  }

  // True when '<' starts an IRI reference rather than a comparison.
  bool iriAhead() const {
    if (peek() != '<') return false;
    for (std::size_t k = pos_ + 1; k < text_.size(); ++k) {
      const char c = text_[k];
      if (c == '>') return k > pos_ + 1;
      if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '?' || c == '$' || c == '(' || c == ')')
        return false;
    }
    return false;
  }

  std::string prefixedName() {
    const std::size_t startLine = line_, startCol = pos_ - lineStart_ + 1;
    std::string prefix;
    while (!atEnd() && peek() != ':' && isNameChar(peek())) prefix += get();
    if (peek() != ':') fail("expected a prefixed name");
    get();
    std::string local;
    while (!atEnd() && isNameChar(peek())) local += get();
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
    }
    if (auto it = declared_.find(prefix); it != declared_.end()) return it->second + local;
    const auto& defaults = rdf::defaultPrefixes();
    if (auto it = defaults.find(prefix); it != defaults.end()) return it->second + local;
    throw ParseError("unknown prefix '" + prefix + ":'", startLine, startCol);
  }

  std::string iri() {
    skipSpace();
    if (peek() == '<') return iriRef();
    return prefixedName();
  }

  std::string variableName() {
    skipSpace();
    if (peek() != '?' && peek() != '$') fail("expected a variable");
    get();
    std::string name;
    while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                        static_cast<unsigned char>(peek()) >= 0x80))
      name += get();
    if (name.empty()) fail("empty variable name");
    return name;
  }

  std::string quoted() {
    const char quote = get();
    std::string out;
    while (true) {
      if (atEnd()) fail("unterminated string literal");
      const char c = get();
      if (c == quote) break;
      if (c == '\n') fail("newline in string literal");
      if (c == '\\') {
        if (atEnd()) fail("dangling escape");
        const char e = get();
        switch (e) {
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  rdf::Term stringLiteral() {
    std::string lexical = quoted();
    if (peek() == '@') {
      get();
      std::string lang;
      while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) lang += get();
      if (lang.empty()) fail("empty language tag");
      return rdf::Term::literal(std::move(lexical), {}, std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      return rdf::Term::literal(std::move(lexical), iri());
    }
    return rdf::Term::literal(std::move(lexical));
  }

  bool numberAhead() const {
    std::size_t k = 0;
    if (peek() == '+' || peek() == '-') k = 1;
    if (std::isdigit(static_cast<unsigned char>(peek(k)))) return true;
    return peek(k) == '.' && std::isdigit(static_cast<unsigned char>(peek(k + 1)));
  }

  rdf::Term numericLiteral() {
    std::string num;
    if (peek() == '+' || peek() == '-') num += get();
    bool exp = false, dot = false;
    while (!atEnd()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        num += get();
      } else if (c == '.' && !dot && !exp && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        dot = true;
        num += get();
      } else if ((c == 'e' || c == 'E') && !exp) {
        exp = true;
        num += get();
        if (peek() == '+' || peek() == '-') num += get();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
      } else {
        break;
      }
    }
    return rdf::Term::literal(std::move(num), std::string(exp ? vocab::kXsdDouble : vocab::kXsdDecimal));
  }

  std::optional<rdf::Term> booleanLiteral() {
    if (acceptKeyword("TRUE")) return rdf::Term::literal("true", std::string(vocab::kXsdBoolean));
    if (acceptKeyword("FALSE")) return rdf::Term::literal("false", std::string(vocab::kXsdBoolean));
    return std::nullopt;
  }

  rdf::PatternTerm patternTerm(bool predicatePosition) {
    skipSpace();
    const char c = peek();
    if (c == '?' || c == '$') return rdf::Variable{variableName()};
    if (c == '<') return rdf::Term::iri(iriRef());
    if (predicatePosition) {
      if (c == 'a' && !isNameChar(peek(1)) && peek(1) != ':') {
        get();
        return rdf::Term::iri(std::string(vocab::kRdfType));
      }
    } else {
      if (c == '"' || c == '\'') return stringLiteral();
      if (numberAhead()) return numericLiteral();
      if (auto b = booleanLiteral()) return *b;
    }
    if (c == '_' && peek(1) == ':') fail("blank nodes are not supported in query patterns");
    if (atEnd()) fail("unexpected end of query");
    if (!isNameStart(c) && c != ':') fail(std::string("unexpected '") + c + "'");
    return rdf::Term::iri(prefixedName());
  }

  // -- group graph patterns -----------------------------------------------------
  static BgpPtr append(BgpPtr current, BgpPtr next) {
    return current ? BgpNode::conj(std::move(current), std::move(next)) : std::move(next);
  }

  BgpPtr group() {
    expect('{');
    BgpPtr current;
    while (true) {
      skipSpace();
      if (atEnd()) fail("unterminated group: expected '}'");
      if (peek() == '}') {
        get();
        return current;
      }
      if (peek() == '{') {
        current = append(std::move(current), BgpNode::block(group()));
        accept('.');
        continue;
      }
      if (acceptKeyword("FILTER")) {
        current = BgpNode::filter(std::move(current), constraint());
        accept('.');
        continue;
      }
      if (acceptKeyword("BIND")) {
        expect('(');
        ExprPtr e = expression();
        if (!acceptKeyword("AS")) fail("expected AS in BIND");
        std::string var = variableName();
        expect(')');
        current = BgpNode::bind(std::move(current), std::move(e), std::move(var));
        accept('.');
        continue;
      }
      current = triplesSameSubject(std::move(current));
      skipSpace();
      if (peek() == '.') get();
      else if (peek() != '}' && !keywordAhead("FILTER") && !keywordAhead("BIND") && peek() != '{')
        fail("expected '.' or '}' after triple pattern");
    }
  }

  BgpPtr triplesSameSubject(BgpPtr current) {
    const rdf::PatternTerm subject = patternTerm(false);
    if (const auto* t = std::get_if<rdf::Term>(&subject); t && t->isLiteral())
      fail("a literal cannot be a triple subject");
    while (true) {
      const rdf::PatternTerm predicate = patternTerm(true);
      if (const auto* t = std::get_if<rdf::Term>(&predicate); t && !t->isIri()) fail("predicate must be an IRI");
      while (true) {
        const rdf::PatternTerm object = patternTerm(false);
        current = append(std::move(current), BgpNode::triple({subject, predicate, object}));
        if (!accept(',')) break;
      }
      if (!accept(';')) break;
      while (accept(';')) {
      }
      skipSpace();
      if (peek() == '.' || peek() == '}') break;
    }
    return current;
  }

  ExprPtr constraint() {
    skipSpace();
    if (peek() == '(') {
      get();
      ExprPtr e = expression();
      expect(')');
      return e;
    }
    // FILTER fn(...) without surrounding parentheses.
    return primary();
  }

  // -- expressions --------------------------------------------------------------
  ExprPtr expression() { return orExpr(); }

  ExprPtr orExpr() {
    ExprPtr lhs = andExpr();
    while (true) {
      skipSpace();
      if (peek() == '|' && peek(1) == '|') {
        get();
        get();
      } else if (!acceptKeyword("OR")) {
        return lhs;
      }
      lhs = Expression::disjunction(lhs, andExpr());
    }
  }

  ExprPtr andExpr() {
    ExprPtr lhs = relational();
    while (true) {
      skipSpace();
      if (peek() == '&' && peek(1) == '&') {
        get();
        get();
      } else if (!acceptKeyword("AND")) {
        return lhs;
      }
      lhs = Expression::conjunction(lhs, relational());
    }
  }

  ExprPtr relational() {
    ExprPtr lhs = additive();
    skipSpace();
    using Op = Expression::CompareOp;
    std::optional<Op> op;
    if (peek() == '=') {
      get();
      op = Op::Eq;
    } else if (peek() == '!' && peek(1) == '=') {
      get();
      get();
      op = Op::Ne;
    } else if (peek() == '<' && peek(1) == '=') {
      get();
      get();
      op = Op::Le;
    } else if (peek() == '>' && peek(1) == '=') {
      get();
      get();
      op = Op::Ge;
    } else if (peek() == '<') {
      get();
      op = Op::Lt;
    } else if (peek() == '>') {
      get();
      op = Op::Gt;
    }
    if (!op) return lhs;
    return Expression::comparison(*op, lhs, additive());
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (true) {
      skipSpace();
      if (peek() == '+') {
        get();
        lhs = Expression::arithmetic(Expression::ArithOp::Add, lhs, multiplicative());
      } else if (peek() == '-') {
        get();
        lhs = Expression::arithmetic(Expression::ArithOp::Sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (true) {
      skipSpace();
      if (peek() == '*') {
        get();
        lhs = Expression::arithmetic(Expression::ArithOp::Mul, lhs, unary());
      } else if (peek() == '/') {
        get();
        lhs = Expression::arithmetic(Expression::ArithOp::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    skipSpace();
    if (peek() == '!' && peek(1) != '=') {
      get();
      return Expression::negation(unary());
    }
    if ((peek() == '-' || peek() == '+') && !numberAhead()) {
      const bool minus = get() == '-';
      ExprPtr operand = unary();
      return minus ? Expression::negate(operand) : operand;
    }
    return primary();
  }

  std::vector<ExprPtr> argumentList() {
    std::vector<ExprPtr> args;
    expect('(');
    if (accept(')')) return args;
    args.push_back(expression());
    while (accept(',')) args.push_back(expression());
    expect(')');
    return args;
  }

  ExprPtr primary() {
    skipSpace();
    const char c = peek();
    if (atEnd()) fail("expected an expression but the query ended");
    if (c == '(') {
      get();
      ExprPtr e = expression();
      expect(')');
      return e;
    }
    if (c == '?' || c == '$') return Expression::variable(variableName());
    if (c == '"' || c == '\'') return Expression::constantTerm(stringLiteral());
    if (numberAhead()) return Expression::constantTerm(numericLiteral());
    if (auto b = booleanLiteral()) return Expression::constantTerm(*b);
    if (c == '<' || isNameStart(c) || c == ':') {
      if (c == '<' && !iriAhead()) fail("unexpected '<'");
      std::string name = iri();
      skipSpace();
      if (peek() == '(') return Expression::call(std::move(name), argumentList());
      return Expression::constantTerm(rdf::Term::iri(std::move(name)));
    }
    fail(std::string("unexpected '") + c + "' in expression");
  }

  // -- projection ---------------------------------------------------------------
  void projection(SelectQuery& q) {
    skipSpace();
    if (accept('*')) {
      q.selectAll = true;
      return;
    }
    while (true) {
      skipSpace();
      if (peek() == '?' || peek() == '$') {
        q.projection.push_back(variableName());
      } else if (peek() == '(') {
        get();
        if (q.aggregate) fail("only one aggregate is supported");
        if (!acceptKeyword("MAX")) fail("only MAX aggregates are supported");
        expect('(');
        std::string over = variableName();
        expect(')');
        if (!acceptKeyword("AS")) fail("expected AS after the aggregate");
        std::string as = variableName();
        expect(')');
        q.aggregate = MaxAggregate{std::move(over), std::move(as)};
      } else {
        break;
      }
    }
    if (q.projection.empty() && !q.aggregate) fail("SELECT needs at least one variable");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t lineStart_ = 0;
  std::map<std::string, std::string> declared_;
};

}  // namespace

SelectQuery parseQuery(std::string_view text) { return Parser(text).run(); }

}  // namespace rastergraph::query
