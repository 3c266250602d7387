#include "rastergraph/evaluator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "rastergraph/error.hpp"

namespace rastergraph::eval {

namespace {

using query::BgpNode;
using query::Expression;

std::size_t mix(std::size_t seed, std::size_t h) { return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)); }

std::size_t valueHash(const Value& v) {
  std::size_t h = v.index();
  switch (v.index()) {
    case 1: return mix(h, std::get<rdf::Term>(v).hash());
    case 2: return mix(h, std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(std::get<double>(v))));
    case 3: return mix(h, std::get<bool>(v));
    case 4: return mix(h, std::hash<const void*>{}(std::get<GeometryPtr>(v).get()));
    case 5: return mix(h, std::hash<const void*>{}(std::get<RasterPtr>(v).get()));
    case 6:
      for (double d : std::get<ValueList>(v)) h = mix(h, std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(d)));
      return h;
    default: return h;
  }
}

bool sameValue(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  switch (a.index()) {
    case 1: return std::get<rdf::Term>(a) == std::get<rdf::Term>(b);
    case 2: return std::bit_cast<std::uint64_t>(std::get<double>(a)) == std::bit_cast<std::uint64_t>(std::get<double>(b));
    case 3: return std::get<bool>(a) == std::get<bool>(b);
    case 4: return std::get<GeometryPtr>(a) == std::get<GeometryPtr>(b);
    case 5: return std::get<RasterPtr>(a) == std::get<RasterPtr>(b);
    case 6: {
      const auto& x = std::get<ValueList>(a);
      const auto& y = std::get<ValueList>(b);
      if (x.size() != y.size()) return false;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (std::bit_cast<std::uint64_t>(x[k]) != std::bit_cast<std::uint64_t>(y[k])) return false;
      return true;
    }
    default: return false;
  }
}

// Three-valued truth: nullopt is the error value.
std::optional<bool> truth(Coercer& c, const Value& v) {
  if (isError(v)) return std::nullopt;
  try {
    return c.boolean(v);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<double> numeric(Coercer& c, const Value& v) {
  if (isError(v)) return std::nullopt;
  if (std::holds_alternative<bool>(v)) return std::nullopt;
  try {
    return c.number(v);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::size_t Engine::MemoHash::operator()(const MemoKey& k) const noexcept {
  std::size_t h = std::hash<std::string>{}(k.iri);
  for (const auto& a : k.args) h = mix(h, valueHash(a));
  return h;
}

bool Engine::MemoEq::operator()(const MemoKey& a, const MemoKey& b) const noexcept {
  if (a.iri != b.iri || a.args.size() != b.args.size()) return false;
  for (std::size_t k = 0; k < a.args.size(); ++k)
    if (!sameValue(a.args[k], b.args[k])) return false;
  return true;
}

Engine::Engine(const rdf::Graph& graph, const FunctionRegistry& registry)
    : graph_(graph), registry_(registry), coercer_(graph) {}

rdf::BindingSet Engine::evalBgp(const query::BgpPtr& node) {
  if (!node) return {rdf::Binding{}};
  switch (node->kind) {
    case BgpNode::Kind::Pattern: return graph_.match(node->pattern);
    case BgpNode::Kind::Block: return evalBgp(node->left);
    case BgpNode::Kind::Conj: {
      rdf::BindingSet left = evalBgp(node->left);
      if (left.empty()) return left;
      return rdf::joinBindings(left, evalBgp(node->right));
    }
    case BgpNode::Kind::Filter: {
      rdf::BindingSet in = evalBgp(node->left);
      rdf::BindingSet out;
      for (auto& mu : in)
        if (satisfies(*node->expr, mu)) out.push_back(std::move(mu));
      return out;
    }
    case BgpNode::Kind::Bind: {
      rdf::BindingSet in = evalBgp(node->left);
      rdf::BindingSet out;
      for (auto& mu : in) {
        if (mu.contains(node->variable)) continue;
        const Value v = evalExpression(*node->expr, mu);
        if (isError(v)) continue;
        if (const auto* list = std::get_if<ValueList>(&v)) {
          for (double d : *list) {
            rdf::Binding b = mu;
            b.bind(node->variable, coercer_.toTerm(d));
            out.push_back(std::move(b));
          }
          continue;
        }
        try {
          rdf::Term t = coercer_.toTerm(v);
          mu.bind(node->variable, std::move(t));
          out.push_back(std::move(mu));
        } catch (const Error&) {
        }
      }
      return out;
    }
  }
  return {};
}

Value Engine::call(const Expression& e, const rdf::Binding& mu) {
  const Function* f = registry_.find(e.name);
  if (!f) return ErrorValue{"unknown function <" + e.name + ">"};
  if (e.args.size() < f->minArgs || e.args.size() > f->maxArgs)
    return ErrorValue{"wrong number of arguments for <" + e.name + ">"};
  MemoKey key{e.name, {}};
  key.args.reserve(e.args.size());
  for (const auto& a : e.args) {
    Value v = evalExpression(*a, mu);
    if (isError(v)) return v;
    key.args.push_back(std::move(v));
  }
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Value result;
  try {
    result = f->impl(coercer_, key.args);
  } catch (const Error& err) {
    result = ErrorValue{err.what()};
  } catch (const std::exception& err) {
    result = ErrorValue{err.what()};
  }
  memo_.emplace(std::move(key), result);
  return result;
}

Value Engine::evalExpression(const Expression& e, const rdf::Binding& mu) {
  switch (e.kind) {
    case Expression::Kind::Variable: {
      const rdf::Term* t = mu.find(e.name);
      if (!t) return ErrorValue{"unbound variable ?" + e.name};
      return *t;
    }
    case Expression::Kind::Constant: return e.constant;
    case Expression::Kind::Call: return call(e, mu);
    case Expression::Kind::Compare: {
      const Value a = evalExpression(*e.args[0], mu);
      if (isError(a)) return a;
      const Value b = evalExpression(*e.args[1], mu);
      if (isError(b)) return b;
      return compareValues(e.compare, a, b, coercer_);
    }
    case Expression::Kind::And: {
      const auto a = truth(coercer_, evalExpression(*e.args[0], mu));
      if (a == false) return false;
      const auto b = truth(coercer_, evalExpression(*e.args[1], mu));
      if (b == false) return false;
      if (a && b) return true;
      return ErrorValue{"error in &&"};
    }
    case Expression::Kind::Or: {
      const auto a = truth(coercer_, evalExpression(*e.args[0], mu));
      if (a == true) return true;
      const auto b = truth(coercer_, evalExpression(*e.args[1], mu));
      if (b == true) return true;
      if (a && b) return false;
      return ErrorValue{"error in ||"};
    }
    case Expression::Kind::Not: {
      const auto a = truth(coercer_, evalExpression(*e.args[0], mu));
      if (!a) return ErrorValue{"error in !"};
      return !*a;
    }
    case Expression::Kind::Arith: {
      const auto a = numeric(coercer_, evalExpression(*e.args[0], mu));
      if (!a) return ErrorValue{"non-numeric operand"};
      if (e.arith == Expression::ArithOp::Neg) return -*a;
      const auto b = numeric(coercer_, evalExpression(*e.args[1], mu));
      if (!b) return ErrorValue{"non-numeric operand"};
      switch (e.arith) {
        case Expression::ArithOp::Add: return *a + *b;
        case Expression::ArithOp::Sub: return *a - *b;
        case Expression::ArithOp::Mul: return *a * *b;
        case Expression::ArithOp::Div:
          if (*b == 0) return ErrorValue{"division by zero"};
          return *a / *b;
        case Expression::ArithOp::Neg: break;
      }
      return ErrorValue{"bad operator"};
    }
  }
  return ErrorValue{"bad expression"};
}

bool Engine::satisfies(const Expression& condition, const rdf::Binding& mu) {
  return truth(coercer_, evalExpression(condition, mu)).value_or(false);
}

ResultTable Engine::select(const query::SelectQuery& q) {
  memo_.clear();
  const rdf::BindingSet solutions = evalBgp(q.body);
  ResultTable table;
  table.columns = q.columns();

  using Row = std::vector<std::optional<rdf::Term>>;
  auto project = [&](const rdf::Binding& mu, const std::vector<std::string>& vars) {
    Row row;
    row.reserve(vars.size());
    for (const auto& v : vars) {
      const rdf::Term* t = mu.find(v);
      row.push_back(t ? std::optional<rdf::Term>(*t) : std::nullopt);
    }
    return row;
  };

  std::set<Row> distinct;
  if (!q.aggregate) {
    for (const auto& mu : solutions) distinct.insert(project(mu, table.columns));
  } else {
    const std::vector<std::string>& keys = q.projection;
    struct Best {
      std::optional<rdf::Term> term;
      double value = 0;
    };
    std::map<Row, Best> groups;
    if (keys.empty()) groups[Row{}];
    for (const auto& mu : solutions) {
      Best& best = groups[project(mu, keys)];
      const rdf::Term* t = mu.find(q.aggregate->over);
      if (!t) continue;
      const auto n = numeric(coercer_, *t);
      if (!n || std::isnan(*n)) continue;
      if (!best.term || *n > best.value) best = {*t, *n};
    }
    for (auto& [key, best] : groups) {
      Row row = key;
      row.push_back(best.term);
      distinct.insert(std::move(row));
    }
  }

  std::vector<std::pair<std::vector<std::string>, Row>> keyed;
  keyed.reserve(distinct.size());
  for (const auto& row : distinct) {
    std::vector<std::string> text;
    text.reserve(row.size());
    // leading byte keeps unbound cells ahead of every term
    for (const auto& cell : row) text.push_back(cell ? "\x01" + cell->toNTriples() : std::string());
    keyed.emplace_back(std::move(text), row);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  table.rows.reserve(keyed.size());
  for (auto& [text, row] : keyed) table.rows.push_back(std::move(row));
  return table;
}

ResultTable runQuery(const rdf::Graph& graph, std::string_view queryText) {
  Engine engine(graph);
  return engine.select(query::parseQuery(queryText));
}

}  // namespace rastergraph::eval
