#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rastergraph/error.hpp"
#include "rastergraph/query.hpp"
#include "rastergraph/vocab.hpp"

using namespace rastergraph;
using query::BgpNode;
using query::Expression;

namespace {

const char* kListing2 = R"q(SELECT ?road WHERE {
?road a ex:Road ; geo:hasGeometry ?roadseg . ?roadseg geo:asWKT ?roadseg_wkt .
?floodarea a ex:FloodRiskArea ; geo2:asCoverage ?floodarea_cov .
?floodarea_cov geo2:asCoverageJSON ?floodarea_covjson .
BIND(geo2:rasterSmaller(?floodarea_covjson,10) AS ?relfloodarea)
FILTER(geo2:intersects(?roadseg_wkt,?relfloodarea))})q";

const char* kListing3 = R"q(SELECT ?building (MAX(?riskvalue) AS ?riskmax) WHERE {
?building a ex:Building ; geo:hasGeometry ?building_geom .
?building_geom geo:asWKT ?building_wkt .
?floodarea a ex:FloodRiskArea ; geo2:hasCoverage ?floodcov.
?floodcov geo2:asCoverageJSON ?floodcov_covjson .
?firearea rdf:type ex:FireRiskArea ; geo2:hasCoverage ?firecov.
?firecov geo2:asCoverageJSON ?firecov_covjson .
BIND (geo2:rasterPlus(?firecov_covjson,?floodcov_covjson) AS ?riskarea)
BIND (geo2:cellval2(geo2:rasterIntersection(?building_wkt,?riskarea)) AS ?riskvalue)
FILTER(geo2:intersects(?building_wkt,?riskarea))})q";

const char* kListing4 = R"q(SELECT ?road WHERE{
?road a ex:Road ; geo:hasGeometry ?roadgeom . ?roadgeom geo:asWKT ?road_wkt .
?ear a ear:ElementAtRisk ; geo:hasGeometry ?eargeom ; ex:openTime ?earopen ; ex:closeTime ?earclose .
?eargeom geo:asWKT ?ear_wkt .
?floodarea a ex:FloodRiskArea ; geo2:hasCoverage ?floodcov. ?floodcov geo2:asCoverageJSON ?floodcov_covjson .
?firearea rdf:type ex:FireRiskArea ; geo2:hasCoverage ?firecov. ?firecov geo2:asCoverageJSON ?firecov_covjson .
BIND (geo2:rasterPlus(?firecov_covjson,?floodcov_covjson) AS ?riskarea)
BIND("2019-05-23T10:20:13+05:30"^^xsd:dateTime AS ?givendate)
FILTER(?givendate>?earopen AND ?givendate<?earclose)
FILTER(geo:intersects(geo:buffer(?road_wkt,2,uom:meter),?ear))
FILTER(!geo:intersects(?road_wkt,?riskarea))})q";

const char* kListing5 = R"q(SELECT ?hazardcoveragepercentage WHERE {
?floodarea a ex:FloodRiskArea; geo2:hasCoverage ?floodcov.
?floodcov geo2:asCoverageJSON ?floodcov_covjson .
?firearea rdf:type ex:FireRiskArea ; geo2:hasCoverage ?firecov.
?firecov geo2:asCoverageJSON ?firecov_covjson .
BIND(geo2:rasterUnion(?firecov_covjson,?floodcov_covjson) AS ?hazardriskarea)
BIND(geo2:geometryIntersection(?hazardriskarea,geo:buffer(?locationtocheck,10,uom:km)) AS ?intersectarea)
BIND(geo:area(?intersectarea)/geo2:raster2geom(?hazardriskarea) AS ?hazardcoveragepercentage)
BIND("POINT(49.2,36.2)"^^geo:wktLiteral AS ?locationtocheck)})q";

struct Counts {
  int patterns = 0, binds = 0, filters = 0, blocks = 0;
  std::vector<std::string> bindHeads, filterHeads;
};

void count(const query::BgpPtr& n, Counts& c) {
  if (!n) return;
  switch (n->kind) {
    case BgpNode::Kind::Pattern: ++c.patterns; break;
    case BgpNode::Kind::Block: ++c.blocks; break;
    case BgpNode::Kind::Bind:
      ++c.binds;
      c.bindHeads.push_back(n->expr->kind == Expression::Kind::Call ? n->expr->name : "");
      break;
    case BgpNode::Kind::Filter:
      ++c.filters;
      c.filterHeads.push_back(n->expr->kind == Expression::Kind::Call ? n->expr->name : "");
      break;
    case BgpNode::Kind::Conj: break;
  }
  count(n->left, c);
  count(n->right, c);
}

Counts countOf(const query::SelectQuery& q) {
  Counts c;
  count(q.body, c);
  return c;
}

std::size_t errorColumn(const std::string& text, std::size_t* line) {
  try {
    query::parseQuery(text);
  } catch (const ParseError& e) {
    *line = e.line();
    return e.column();
  }
  ADD_FAILURE() << "no error for: " << text;
  return 0;
}

}  // namespace

TEST(Parser, Minimal) {
  const auto q = query::parseQuery("SELECT ?x WHERE { ?x a ex:Road }");
  ASSERT_EQ(q.projection, std::vector<std::string>{"x"});
  ASSERT_TRUE(q.body);
  ASSERT_EQ(q.body->kind, BgpNode::Kind::Pattern);
  EXPECT_EQ(q.body->pattern.predicate, rdf::PatternTerm(rdf::Term::iri(std::string(vocab::kRdfType))));
  EXPECT_EQ(q.body->pattern.object, rdf::PatternTerm(rdf::Term::iri("http://example.org/ns#Road")));
  EXPECT_FALSE(q.aggregate);
}

TEST(Parser, ListingFloodAltitude) {
  const auto q = query::parseQuery(kListing2);
  const Counts c = countOf(q);
  // Both `;` lists expand to two patterns each: 2 + 1 + 2 + 1.
  EXPECT_EQ(c.patterns, 6);
  EXPECT_EQ(c.binds, 1);
  EXPECT_EQ(c.filters, 1);
  EXPECT_EQ(c.bindHeads, std::vector<std::string>{std::string(vocab::kGeo2) + "rasterSmaller"});
  EXPECT_EQ(c.filterHeads, std::vector<std::string>{std::string(vocab::kGeo2) + "intersects"});
  // FILTER wraps everything before it.
  EXPECT_EQ(q.body->kind, BgpNode::Kind::Filter);
  EXPECT_EQ(q.body->left->kind, BgpNode::Kind::Bind);
  EXPECT_EQ(q.body->left->variable, "relfloodarea");
}

TEST(Parser, ListingRiskAssessmentAggregate) {
  const auto q = query::parseQuery(kListing3);
  EXPECT_EQ(q.projection, std::vector<std::string>{"building"});
  ASSERT_TRUE(q.aggregate);
  EXPECT_EQ(q.aggregate->over, "riskvalue");
  EXPECT_EQ(q.aggregate->as, "riskmax");
  EXPECT_EQ(q.columns(), (std::vector<std::string>{"building", "riskmax"}));
  const Counts c = countOf(q);
  EXPECT_EQ(c.patterns, 9);
  EXPECT_EQ(c.binds, 2);
  EXPECT_EQ(c.filters, 1);
}

TEST(Parser, ListingRescuePlanning) {
  const auto q = query::parseQuery(kListing4);
  const Counts c = countOf(q);
  EXPECT_EQ(c.patterns, 14);
  EXPECT_EQ(c.binds, 2);
  EXPECT_EQ(c.filters, 3);
  // The keyword AND parses as a conjunction.
  const BgpNode* n = q.body.get();
  while (n->kind == BgpNode::Kind::Filter && n->left->kind == BgpNode::Kind::Filter) n = n->left.get();
  EXPECT_EQ(n->expr->kind, Expression::Kind::And);
  EXPECT_EQ(n->expr->args[0]->kind, Expression::Kind::Compare);
}

TEST(Parser, ListingCityPlanning) {
  const auto q = query::parseQuery(kListing5);
  const Counts c = countOf(q);
  EXPECT_EQ(c.patterns, 6);
  EXPECT_EQ(c.binds, 4);
  EXPECT_EQ(c.filters, 0);
  // The outermost BIND carries the WKT literal with its comma.
  ASSERT_EQ(q.body->kind, BgpNode::Kind::Bind);
  EXPECT_EQ(q.body->expr->constant.value(), "POINT(49.2,36.2)");
  EXPECT_EQ(q.body->expr->constant.datatype(), vocab::kWktLiteral);
}

TEST(Parser, NumbersAreDecimal) {
  const auto q = query::parseQuery("SELECT * WHERE { ?s ?p ?o FILTER(?o > 10 && ?o < 1.5e1) }");
  const auto& cmp = *q.body->expr->args[0];
  EXPECT_EQ(cmp.args[1]->constant.datatype(), std::string(vocab::kXsd) + "decimal");
  EXPECT_EQ(q.body->expr->args[1]->args[1]->constant.datatype(), std::string(vocab::kXsd) + "double");
}

TEST(Parser, DeclaredPrefixShadowsBuiltin) {
  const auto q = query::parseQuery("PREFIX ex: <urn:x:> SELECT ?s WHERE { ?s ex:p ex:o }");
  EXPECT_EQ(q.body->pattern.predicate, rdf::PatternTerm(rdf::Term::iri("urn:x:p")));
  EXPECT_EQ(q.prefixes.at("ex"), "urn:x:");
}

TEST(Parser, CommaObjectLists) {
  const auto q = query::parseQuery("SELECT * WHERE { ?s ex:p ex:a, ex:b ; ex:q ?o }");
  EXPECT_EQ(countOf(q).patterns, 3);
}

TEST(Parser, GroupsBecomeBlocks) {
  const auto q = query::parseQuery("SELECT * WHERE { { ?s ex:p ?o } ?o ex:q ?z }");
  EXPECT_EQ(countOf(q).blocks, 1);
  EXPECT_EQ(query::parseQuery("SELECT * WHERE { }").body, nullptr);
}

TEST(Parser, OrKeyword) {
  const auto a = query::parseQuery("SELECT * WHERE { ?s ?p ?o FILTER(?o > 1 OR ?o < 0) }");
  const auto b = query::parseQuery("SELECT * WHERE { ?s ?p ?o FILTER(?o > 1 || ?o < 0) }");
  EXPECT_EQ(a, b);
}

TEST(Parser, Errors) {
  std::size_t line = 0;
  EXPECT_EQ(errorColumn("SELECT ?x WHERE {\n  ?x a }", &line), 8u);
  EXPECT_EQ(line, 2u);
  EXPECT_GT(errorColumn("SELECT ?x WHERE { ?x nope:p ?y }", &line), 0u);
  EXPECT_EQ(line, 1u);
  EXPECT_THROW(query::parseQuery("SELECT ?x WHERE { _:b ex:p ?x }"), ParseError);
  EXPECT_THROW(query::parseQuery("SELECT ?x WHERE { ?x ex:p ?y "), ParseError);
  EXPECT_THROW(query::parseQuery("SELECT WHERE { ?x ex:p ?y }"), ParseError);
  EXPECT_THROW(query::parseQuery("SELECT ?x WHERE { BIND(1 ?x) }"), ParseError);
  EXPECT_THROW(query::parseQuery("ASK { ?x ex:p ?y }"), ParseError);
}

TEST(Parser, UnknownPrefixMessage) {
  try {
    query::parseQuery("SELECT ?x WHERE { ?x zz:p ?y }");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
    EXPECT_EQ(e.column(), 22u);
  }
}

TEST(Printer, ListingsRoundTrip) {
  for (const char* text : {kListing2, kListing3, kListing4, kListing5}) {
    const auto q = query::parseQuery(text);
    const std::string printed = query::toString(q);
    const auto again = query::parseQuery(printed);
    EXPECT_EQ(q, again) << printed;
    EXPECT_EQ(query::toString(again), printed);
  }
}

TEST(Printer, RandomQueriesRoundTrip) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    const std::string text = oracle::randomQuery(rng);
    const auto q = query::parseQuery(text);
    EXPECT_EQ(query::parseQuery(query::toString(q)), q) << text;
  }
}
