#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "rastergraph/error.hpp"
#include "rastergraph/evaluator.hpp"
#include "rastergraph/raster_algebra.hpp"
#include "rastergraph/raster_io.hpp"
#include "rastergraph/results.hpp"
#include "rastergraph/vocab.hpp"

using namespace rastergraph;
using eval::Value;
using query::BgpNode;
using query::Expression;
using raster::Raster;
using rdf::Term;

namespace {

const std::string kEx(vocab::kEx), kGeo2(vocab::kGeo2), kGeof(vocab::kGeof), kGeo(vocab::kGeo);

Raster fixtureA() { return Raster(0, 0, 1, 1, 2, 2, {1, 2, 3, 4}); }

Term covLiteral(const Raster& r) { return Term::literal(raster::writeCoverageJson(r), std::string(vocab::kCovJsonLiteral)); }
Term wkt(const std::string& text) { return Term::literal(text, std::string(vocab::kWktLiteral)); }
Term ex(const std::string& local) { return Term::iri(kEx + local); }
Term num(const std::string& lexical) { return Term::literal(lexical, std::string(vocab::kXsdDecimal)); }

query::ExprPtr lit(Term t) { return Expression::constantTerm(std::move(t)); }
query::ExprPtr fn(const std::string& iri, std::vector<query::ExprPtr> args) { return Expression::call(iri, std::move(args)); }

// A graph holding raster A, a crossing road and a far-away point.
rdf::Graph fixtureGraph() {
  rdf::Graph g;
  g.insert({ex("a"), ex("cov"), covLiteral(fixtureA())});
  g.insert({ex("road"), ex("wkt"), wkt("LINESTRING(-1 1,3 1)")});
  g.insert({ex("far"), ex("wkt"), wkt("POINT(10 10)")});
  return g;
}

std::multiset<oracle::Row> rowsOf(const eval::ResultTable& t) { return {t.rows.begin(), t.rows.end()}; }

std::multiset<rdf::Binding> asMultiset(const rdf::BindingSet& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(Expressions, Constants) {
  rdf::Graph g;
  eval::Engine e(g);
  const Value v = e.evalExpression(*lit(num("5")), {});
  EXPECT_EQ(e.coercer().number(v), 5);
}

TEST(Expressions, RasterSmallerMatchesOracle) {
  rdf::Graph g;
  eval::Engine e(g);
  const Value v = e.evalExpression(*fn(kGeo2 + "rasterSmaller", {lit(covLiteral(fixtureA())), lit(num("10"))}), {});
  ASSERT_TRUE(std::holds_alternative<eval::RasterPtr>(v));
  EXPECT_EQ(std::get<eval::RasterPtr>(v)->values(), oracle::constant("Smaller", fixtureA(), 10));
  const Value three = e.evalExpression(*fn(kGeo2 + "rasterSmaller", {lit(covLiteral(fixtureA())), lit(num("3"))}), {});
  EXPECT_EQ(std::get<eval::RasterPtr>(three)->values(), (std::vector<double>{1, 2, -9999, -9999}));
}

TEST(Expressions, Distance) {
  rdf::Graph g;
  eval::Engine e(g);
  const Value v = e.evalExpression(*fn(kGeof + "distance", {lit(wkt("POINT(0 0)")), lit(wkt("POINT(3 4)"))}), {});
  EXPECT_EQ(e.coercer().number(v), 5);
}

TEST(Expressions, ErrorsAreValues) {
  rdf::Graph g;
  eval::Engine e(g);
  EXPECT_TRUE(eval::isError(e.evalExpression(*Expression::variable("nope"), {})));
  EXPECT_TRUE(eval::isError(e.evalExpression(*fn(kEx + "noSuchFunction", {}), {})));
  EXPECT_TRUE(eval::isError(e.evalExpression(*fn(kGeo2 + "rasterPlus", {lit(wkt("POINT(0 0)")), lit(num("1"))}), {})));
  EXPECT_TRUE(eval::isError(e.evalExpression(*fn(kGeof + "distance", {lit(wkt("POINT(0 0)"))}), {})));
  EXPECT_TRUE(eval::isError(e.evalExpression(
      *Expression::comparison(Expression::CompareOp::Lt, lit(ex("x")), lit(num("1"))), {})));
}

TEST(Expressions, DateTimeComparison) {
  rdf::Graph g;
  eval::Engine e(g);
  const std::string dt(vocab::kXsdDateTime);
  auto before = [&](const std::string& a, const std::string& b) {
    const Value v = e.evalExpression(
        *Expression::comparison(Expression::CompareOp::Lt, lit(Term::literal(a, dt)), lit(Term::literal(b, dt))), {});
    return std::get<bool>(v);
  };
  EXPECT_TRUE(before("2019-05-23T04:50:12Z", "2019-05-23T10:20:13+05:30"));
  EXPECT_FALSE(before("2019-05-23T04:50:13Z", "2019-05-23T10:20:13+05:30"));
  EXPECT_TRUE(before("2019-05-22T23:59:59Z", "2019-05-23T00:00:00"));
}

TEST(Filters, RasterAndGeometryOverloads) {
  const rdf::Graph g = fixtureGraph();
  eval::Engine e(g);
  const Term a = covLiteral(fixtureA());
  auto holds = [&](const std::string& f, Term x, Term y) { return e.satisfies(*fn(f, {lit(x), lit(y)}), {}); };
  EXPECT_TRUE(holds(kGeo2 + "intersects", wkt("LINESTRING(-1 1,3 1)"), a));
  EXPECT_TRUE(holds(kGeo2 + "equals", a, a));
  EXPECT_FALSE(holds(kGeo2 + "intersects", wkt("POINT(10 10)"), a));
  EXPECT_TRUE(e.satisfies(*Expression::negation(fn(kGeo + "intersects", {lit(wkt("POINT(10 10)")), lit(a)})), {}));
  // Feature IRIs stand for their literals.
  EXPECT_FALSE(holds(kGeo2 + "intersects", ex("nothing"), a));
}

TEST(Filters, IntersectsIsSymmetricOverAllOverloads) {
  rdf::Graph g;
  eval::Engine e(g);
  std::mt19937_64 rng(31);
  auto coord = [&]() { return std::round(std::uniform_real_distribution<double>(-3, 7)(rng) * 2) / 2; };
  auto randomTerm = [&]() -> Term {
    std::ostringstream s;
    switch (rng() % 4) {
      case 0: {
        const Raster r = oracle::random4x4(rng, coord(), coord());
        return covLiteral(r);
      }
      case 1: s << "POINT(" << coord() << " " << coord() << ")"; break;
      case 2: {
        const double x = coord(), y = coord();
        s << "LINESTRING(" << x << " " << y << "," << x + 1 + rng() % 3 << " " << coord() << ")";
        break;
      }
      default: {
        const double x = coord(), y = coord();
        s << "POLYGON((" << x << " " << y << "," << x + 2 << " " << y << "," << x + 2 << " " << y + 1.5 << "," << x
          << " " << y << "))";
      }
    }
    return wkt(s.str());
  };
  for (int t = 0; t < 400; ++t) {
    const Term x = randomTerm(), y = randomTerm();
    for (const std::string& f : {kGeo2 + "intersects", kGeo + "intersects", kGeo2 + "equals"}) {
      const Value xy = e.evalExpression(*fn(f, {lit(x), lit(y)}), {});
      const Value yx = e.evalExpression(*fn(f, {lit(y), lit(x)}), {});
      ASSERT_FALSE(eval::isError(xy)) << std::get<eval::ErrorValue>(xy).message;
      EXPECT_EQ(std::get<bool>(xy), std::get<bool>(yx)) << f << " " << x.value() << " / " << y.value();
    }
  }
}

TEST(Filters, ErrorsRejectWithoutThrowing) {
  rdf::Graph g;
  g.insert({ex("s"), ex("p"), Term::literal("abc")});
  g.insert({ex("t"), ex("p"), num("3")});
  const auto t = eval::runQuery(g, "SELECT ?s WHERE { ?s ex:p ?o FILTER(?o > 1) }");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(*t.rows[0][0], ex("t"));
  EXPECT_TRUE(eval::runQuery(g, "SELECT ?s WHERE { ?s ex:p ?o FILTER(geo2:rasterPlus(?o, 1)) }").rows.empty());
  EXPECT_TRUE(eval::runQuery(g, "SELECT ?s WHERE { ?s ex:p ?o FILTER(ex:unknown(?o)) }").rows.empty());
  EXPECT_TRUE(eval::runQuery(g, "SELECT ?s WHERE { ?s ex:p ?o FILTER(1 > 2) }").rows.empty());
  // A false disjunct does not hide an error; a true one does.
  EXPECT_EQ(eval::runQuery(g, "SELECT ?s WHERE { ?s ex:p ?o FILTER(?o > 1 || true) }").rows.size(), 2u);
  EXPECT_EQ(eval::runQuery(g, "SELECT ?s WHERE { ?s ex:p ?o FILTER(?o > 1 || false) }").rows.size(), 1u);
}

TEST(Bind, CellValuesExpandAndAggregate) {
  const rdf::Graph g = fixtureGraph();
  const auto t = eval::runQuery(g, "SELECT ?v WHERE { ex:a ex:cov ?c BIND(geo2:cellval2(?c) AS ?v) }");
  ASSERT_EQ(t.rows.size(), 4u);
  std::set<double> seen;
  for (const auto& row : t.rows) seen.insert(std::stod(row[0]->value()));
  EXPECT_EQ(seen, (std::set<double>{1, 2, 3, 4}));

  const auto m = eval::runQuery(g, "SELECT ?x (MAX(?v) AS ?m) WHERE { ?x ex:cov ?c BIND(geo2:cellval2(?c) AS ?v) }");
  ASSERT_EQ(m.rows.size(), 1u);
  EXPECT_EQ(*m.rows[0][0], ex("a"));
  EXPECT_EQ(std::stod(m.rows[0][1]->value()), 4);
}

TEST(Bind, ErrorsAndBoundTargetsDropTheSolution) {
  rdf::Graph g;
  g.insert({ex("s"), ex("p"), num("3")});
  g.insert({ex("t"), ex("p"), Term::literal("x")});
  const auto t = eval::runQuery(g, "SELECT ?s ?d WHERE { ?s ex:p ?o BIND(?o * 2 AS ?d) }");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][1]->value(), "6");
  EXPECT_EQ(t.rows[0][1]->datatype(), vocab::kXsdDouble);
  EXPECT_TRUE(eval::runQuery(g, "SELECT ?s WHERE { ?s ex:p ?o BIND(1 AS ?o) }").rows.empty());
}

TEST(Bind, RasterEqualsDispatchesOnArguments) {
  rdf::Graph g;
  eval::Engine e(g);
  const Term a = covLiteral(fixtureA());
  const Value cellwise = e.evalExpression(*fn(kGeo2 + "rasterEquals", {lit(a), lit(a)}), {});
  ASSERT_TRUE(std::holds_alternative<eval::RasterPtr>(cellwise));
  EXPECT_EQ(std::get<eval::RasterPtr>(cellwise)->values(), (std::vector<double>{1, 1, 1, 1}));
  const Value relation = e.evalExpression(*fn(kGeo2 + "rasterEquals", {lit(a), lit(wkt("POLYGON((0 0,2 0,2 2,0 2,0 0))"))}), {});
  ASSERT_TRUE(std::holds_alternative<bool>(relation));
  EXPECT_TRUE(std::get<bool>(relation));
  const Value st = e.evalExpression(*fn(kGeo2 + "ST_rasterEquals", {lit(a), lit(a)}), {});
  EXPECT_TRUE(std::get<bool>(st));
}

TEST(Bgp, ConjunctionMatchesNestedLoops) {
  rdf::Graph g;
  g.insert({ex("a"), ex("knows"), ex("b")});
  g.insert({ex("b"), ex("knows"), ex("c")});
  g.insert({ex("c"), ex("knows"), ex("a")});
  g.insert({ex("a"), ex("age"), num("30")});
  g.insert({ex("b"), ex("age"), num("40")});
  g.insert({ex("b"), ex("knows"), ex("a")});
  const auto q = query::parseQuery("SELECT * WHERE { ?x ex:knows ?y . ?y ex:age ?z }");
  eval::Engine e(g);
  EXPECT_EQ(rowsOf(e.select(q)), oracle::select(q, g));
  EXPECT_EQ(e.select(q).rows.size(), 3u);
}

TEST(Bgp, JoinIsAssociative) {
  std::mt19937_64 rng(77);
  auto v = [](const char* n) { return rdf::PatternTerm(rdf::Variable{n}); };
  for (int t = 0; t < 200; ++t) {
    const rdf::Graph g = oracle::randomGraph(rng);
    auto pattern = [&]() {
      const char* names[] = {"a", "b", "c"};
      return BgpNode::triple({v(names[rng() % 3]), rdf::PatternTerm(Term::iri(kEx + "p" + std::to_string(rng() % 3))),
                              v(names[rng() % 3])});
    };
    const auto b1 = pattern(), b2 = pattern(), b3 = pattern();
    eval::Engine e(g);
    const auto left = e.evalBgp(BgpNode::conj(BgpNode::conj(b1, b2), b3));
    const auto right = e.evalBgp(BgpNode::conj(b1, BgpNode::conj(b2, b3)));
    EXPECT_EQ(asMultiset(left), asMultiset(right));
  }
}

TEST(Select, RandomQueriesMatchReferenceEvaluator) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 300; ++t) {
    const rdf::Graph g = oracle::randomGraph(rng);
    const std::string text = oracle::randomQuery(rng);
    const auto q = query::parseQuery(text);
    eval::Engine e(g);
    ASSERT_EQ(rowsOf(e.select(q)), oracle::select(q, g)) << text;
  }
}

TEST(Select, UnboundFirstAndDeterministicOrder) {
  rdf::Graph g;
  g.insert({ex("b"), ex("p"), num("1")});
  g.insert({ex("a"), ex("p"), num("2")});
  const auto t = eval::runQuery(g, "SELECT ?s ?q WHERE { ?s ex:p ?o }");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(*t.rows[0][0], ex("a"));
  EXPECT_FALSE(t.rows[0][1]);
}

TEST(Results, TsvAndJsonAgree) {
  const rdf::Graph g = fixtureGraph();
  const auto t = eval::runQuery(g, "SELECT ?s ?o ?none WHERE { ?s ex:wkt ?o }");
  const std::string tsv = eval::toTsv(t);
  const auto doc = nlohmann::json::parse(eval::toJson(t));
  EXPECT_EQ(doc["head"]["vars"], (nlohmann::json{"s", "o", "none"}));
  std::istringstream in(tsv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "?s\t?o\t?none");
  std::size_t k = 0;
  while (std::getline(in, line)) {
    const auto& b = doc["results"]["bindings"][k];
    const Term s = Term::iri(b["s"]["value"].get<std::string>());
    const Term o = Term::literal(b["o"]["value"].get<std::string>(), b["o"]["datatype"].get<std::string>());
    EXPECT_EQ(line, s.toNTriples() + "\t" + o.toNTriples() + "\t");
    EXPECT_FALSE(b.contains("none"));
    ++k;
  }
  EXPECT_EQ(k, t.rows.size());
  EXPECT_EQ(k, 2u);
}
