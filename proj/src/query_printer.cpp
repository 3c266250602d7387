#include "rastergraph/query.hpp"

namespace rastergraph::query {

namespace {

std::string termText(const rdf::PatternTerm& pt) {
  if (const auto* v = std::get_if<rdf::Variable>(&pt)) return "?" + v->name;
  return std::get<rdf::Term>(pt).toNTriples();
}

const char* compareText(Expression::CompareOp op) {
  switch (op) {
    case Expression::CompareOp::Eq: return "=";
    case Expression::CompareOp::Ne: return "!=";
    case Expression::CompareOp::Lt: return "<";
    case Expression::CompareOp::Gt: return ">";
    case Expression::CompareOp::Le: return "<=";
    case Expression::CompareOp::Ge: return ">=";
  }
  return "=";
}

const char* arithText(Expression::ArithOp op) {
  switch (op) {
    case Expression::ArithOp::Add: return "+";
    case Expression::ArithOp::Sub: return "-";
    case Expression::ArithOp::Mul: return "*";
    case Expression::ArithOp::Div: return "/";
    case Expression::ArithOp::Neg: return "-";
  }
  return "+";
}

void print(const Expression& e, std::string& out);

void printBinary(const Expression& e, const char* op, std::string& out) {
  out += '(';
  print(*e.args[0], out);
  out += ' ';
  out += op;
  out += ' ';
  print(*e.args[1], out);
  out += ')';
}

void print(const Expression& e, std::string& out) {
  switch (e.kind) {
    case Expression::Kind::Variable: out += "?" + e.name; break;
    case Expression::Kind::Constant: out += e.constant.toNTriples(); break;
    case Expression::Kind::Call:
      out += "<" + e.name + ">(";
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        if (k) out += ", ";
        print(*e.args[k], out);
      }
      out += ')';
      break;
    case Expression::Kind::Compare: printBinary(e, compareText(e.compare), out); break;
    case Expression::Kind::And: printBinary(e, "&&", out); break;
    case Expression::Kind::Or: printBinary(e, "||", out); break;
    case Expression::Kind::Not:
      out += "(!";
      print(*e.args[0], out);
      out += ')';
      break;
    case Expression::Kind::Arith:
      if (e.arith == Expression::ArithOp::Neg) {
        out += "(- ";
        print(*e.args[0], out);
        out += ')';
      } else {
        printBinary(e, arithText(e.arith), out);
      }
      break;
  }
}

void print(const BgpPtr& n, std::string& out) {
  if (!n) return;
  switch (n->kind) {
    case BgpNode::Kind::Pattern:
      out += termText(n->pattern.subject) + " " + termText(n->pattern.predicate) + " " +
             termText(n->pattern.object) + " . ";
      break;
    case BgpNode::Kind::Block:
      out += "{ ";
      print(n->left, out);
      out += "} ";
      break;
    case BgpNode::Kind::Conj:
      print(n->left, out);
      print(n->right, out);
      break;
    case BgpNode::Kind::Filter:
      print(n->left, out);
      out += "FILTER(";
      print(*n->expr, out);
      out += ") ";
      break;
    case BgpNode::Kind::Bind:
      print(n->left, out);
      out += "BIND(";
      print(*n->expr, out);
      out += " AS ?" + n->variable + ") ";
      break;
  }
}

}  // namespace

std::string toString(const Expression& e) {
  std::string out;
  print(e, out);
  return out;
}

std::string toString(const SelectQuery& q) {
  std::string out = "SELECT";
  if (q.selectAll) out += " *";
  for (const auto& v : q.projection) out += " ?" + v;
  if (q.aggregate) out += " (MAX(?" + q.aggregate->over + ") AS ?" + q.aggregate->as + ")";
  out += " WHERE { ";
  print(q.body, out);
  out += "}";
  return out;
}

}  // namespace rastergraph::query
