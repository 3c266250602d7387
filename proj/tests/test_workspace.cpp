#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "rastergraph/error.hpp"
#include "rastergraph/evaluator.hpp"
#include "rastergraph/raster_io.hpp"
#include "rastergraph/vocab.hpp"
#include "rastergraph/workspace.hpp"

using namespace rastergraph;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = FIXTURE_DIR;
const std::string kEx(vocab::kEx);

std::string fixture(const std::string& name) { return readTextFile(fs::path(kFixtures) / name); }

struct CliRun {
  int status = 0;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
CliRun cli(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("rastergraph-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::size_t countPredicate(const rdf::Graph& g, std::string_view p) {
  std::size_t n = 0;
  for (const auto& t : g.triples()) n += t.predicate.value() == p;
  return n;
}

}  // namespace

TEST(Ingest, RoadsGiveFourTriplesPerFeature) {
  Workspace ws("http://example.org/data");
  EXPECT_EQ(ws.ingestGeoJson(fixture("roads3.geojson"), kEx + "Road"), 12u);
  EXPECT_EQ(countPredicate(ws.graph, vocab::kAsWkt), 3u);
  EXPECT_EQ(countPredicate(ws.graph, vocab::kHasGeometry), 3u);
  const auto t = eval::runQuery(ws.graph, "SELECT ?r ?w WHERE { ?r a ex:Road ; geo:hasGeometry ?g . ?g geo:asWKT ?w }");
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0][0]->value(), "http://example.org/data/feature/0");
  EXPECT_EQ(t.rows[0][1]->value(), "LINESTRING(0 0,10 0)");
}

TEST(Ingest, EmptyCollection) {
  Workspace ws("http://example.org/data");
  EXPECT_EQ(ws.ingestGeoJson(R"({"type":"FeatureCollection","features":[]})", kEx + "Road"), 0u);
  EXPECT_TRUE(ws.graph.empty());
}

TEST(Ingest, PropertiesBecomeTypedLiterals) {
  Workspace ws("http://example.org/data");
  // 4 + openTime + closeTime, then 4 + name, capacity, share, open.
  EXPECT_EQ(ws.ingestGeoJson(fixture("elements.geojson"), std::string(vocab::kEar) + "ElementAtRisk"), 14u);
  const auto open = ws.graph.objects(rdf::Term::iri("http://example.org/data/feature/0"), rdf::Term::iri(kEx + "openTime"));
  ASSERT_EQ(open.size(), 1u);
  EXPECT_EQ(open[0].datatype(), vocab::kXsdDateTime);
  const auto cap = ws.graph.objects(rdf::Term::iri("http://example.org/data/feature/1"), rdf::Term::iri(kEx + "capacity"));
  ASSERT_EQ(cap.size(), 1u);
  EXPECT_EQ(cap[0].datatype(), vocab::kXsdInteger);
}

TEST(Ingest, FeatureIndicesContinueAcrossCalls) {
  Workspace ws("http://example.org/data");
  ws.ingestGeoJson(fixture("roads3.geojson"), kEx + "Road");
  ws.ingestGeoJson(fixture("roads3.geojson"), kEx + "Road");
  EXPECT_EQ(ws.nextIndex(), 6u);
}

TEST(Ingest, RejectsUnsupportedInput) {
  Workspace ws("http://example.org/data");
  EXPECT_THROW(ws.ingestGeoJson(R"({"type":"FeatureCollection","features":[{"type":"Feature","geometry":{"type":"Curve","coordinates":[]}}]})",
                                kEx + "Road"),
               ValidationError);
  EXPECT_THROW(ws.ingestGeoJson("not json", kEx + "Road"), ParseError);
  EXPECT_TRUE(ws.graph.empty());
}

TEST(Ingest, AscRasterShape) {
  Workspace ws("http://example.org/data");
  EXPECT_EQ(ws.ingestAscRaster(fixture("flood_small.asc"), kEx + "FloodRiskArea", "cm"), 9u);
  const auto covs = eval::runQuery(ws.graph, "SELECT ?j ?u ?nd WHERE { ?f a ex:FloodRiskArea ; geo2:hasCoverage ?c . "
                                             "?c geo2:asCoverageJSON ?j ; geo2:hasScale ?s . ?s om:hasUnit ?u ; geo2:nodata ?nd }");
  ASSERT_EQ(covs.rows.size(), 1u);
  const raster::Raster fromLiteral = raster::parseCoverageJson(covs.rows[0][0]->value());
  raster::Raster direct = raster::parseAscGrid(fixture("flood_small.asc"));
  EXPECT_EQ(fromLiteral.values(), direct.values());
  EXPECT_EQ(fromLiteral.domainRect(), direct.domainRect());
  EXPECT_EQ(fromLiteral.nodata(), -9999);
  EXPECT_NE(covs.rows[0][0]->value().find("-9999"), std::string::npos);
  EXPECT_EQ(covs.rows[0][1]->value(), "cm");
  EXPECT_EQ(covs.rows[0][2]->value(), "-9999");
  // Both coverage links are present.
  EXPECT_EQ(countPredicate(ws.graph, vocab::kAsCoverage), 1u);
}

TEST(Ingest, BaseIriFromEnvironment) {
  ::setenv("RASTERGRAPH_BASE_IRI", "urn:test:base", 1);
  Workspace ws;
  ::unsetenv("RASTERGRAPH_BASE_IRI");
  EXPECT_EQ(ws.baseIri, "urn:test:base");
  ws.ingestGeoJson(fixture("roads3.geojson"), kEx + "Road");
  EXPECT_TRUE(ws.graph.contains({rdf::Term::iri("urn:test:base/feature/2"), rdf::Term::iri(std::string(vocab::kRdfType)),
                                 rdf::Term::iri(kEx + "Road")}));
  Workspace fallback;
  EXPECT_EQ(fallback.baseIri, "http://example.org/data");
}

TEST(Ingest, StoreRoundTrip) {
  TempDir dir;
  Workspace ws("http://example.org/data");
  ws.ingestGeoJson(fixture("roads3.geojson"), kEx + "Road");
  ws.ingestAscRaster(fixture("flood_small.asc"), kEx + "FloodRiskArea", "cm");
  ws.save(dir / "store.nt");
  Workspace back("http://example.org/data");
  back.load(dir / "store.nt");
  EXPECT_EQ(back.graph.size(), ws.graph.size());
  for (const auto& t : ws.graph.triples()) EXPECT_TRUE(back.graph.contains(t));
  Workspace none("http://example.org/data");
  none.load(dir / "missing.nt");
  EXPECT_TRUE(none.graph.empty());
}

TEST(Cli, LoadAndQuery) {
  TempDir dir;
  const std::string store = "--store " + (dir / "s.nt");
  CliRun r = cli(store + " load-geojson " + kFixtures + "/roads3.geojson --class " + kEx + "Road");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("12 triples added"), std::string::npos);
  r = cli(store + " load-asc " + kFixtures + "/flood_small.asc --class " + kEx + "FloodRiskArea --unit cm");
  ASSERT_EQ(r.status, 0) << r.out;
  r = cli(store + " query -e 'SELECT ?r WHERE { ?r a ex:Road }'");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out, "?r\n<http://example.org/data/feature/0>\n<http://example.org/data/feature/1>\n"
                   "<http://example.org/data/feature/2>\n");
  r = cli(store + " query --format json -e 'SELECT ?r WHERE { ?r a ex:FloodRiskArea }'");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("\"bindings\""), std::string::npos);
  EXPECT_NE(r.out.find("feature/3"), std::string::npos);
}

TEST(Cli, ErrorsGiveNonzeroStatus) {
  TempDir dir;
  const std::string store = "--store " + (dir / "s.nt");
  CliRun r = cli(store + " query -e 'SELECT ?r WHERE { ?r a nope:Road }'");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("nope"), std::string::npos);
  writeTextFile(dir / "bad.asc", "ncols 2\nnrows 2\nxllcorner 0\n");
  r = cli("convert " + (dir / "bad.asc") + " --to covjson " + (dir / "out.json"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("error"), std::string::npos);
  EXPECT_NE(cli("frobnicate").status, 0);
  EXPECT_NE(cli(store + " query").status, 0);
}

TEST(Cli, ConvertRoundTrips) {
  TempDir dir;
  ASSERT_EQ(cli("convert " + kFixtures + "/flood_small.asc --to covjson " + (dir / "a.json")).status, 0);
  ASSERT_EQ(cli("convert " + (dir / "a.json") + " --to hexwkb " + (dir / "a.hex")).status, 0);
  ASSERT_EQ(cli("convert " + (dir / "a.hex") + " --to asc " + (dir / "a.asc")).status, 0);
  const raster::Raster original = raster::parseAscGrid(fixture("flood_small.asc"));
  EXPECT_EQ(raster::parseAscGrid(readTextFile(dir / "a.asc")).values(), original.values());
  EXPECT_EQ(raster::parseCoverageJson(readTextFile(dir / "a.json")), original);
  // Hex output is deterministic.
  ASSERT_EQ(cli("convert " + (dir / "a.json") + " --to hexwkb " + (dir / "b.hex")).status, 0);
  EXPECT_EQ(readTextFile(dir / "a.hex"), readTextFile(dir / "b.hex"));
}

TEST(Cli, CorpusAndBench) {
  TempDir dir;
  CliRun r = cli("gen-corpus --roads 40 --buildings 20 " + (dir / "c"));
  ASSERT_EQ(r.status, 0) << r.out;
  for (const char* f : {"roads.geojson", "buildings.geojson", "elements.geojson", "flood.asc", "fire.asc", "u1.rq", "u4.rq"})
    EXPECT_TRUE(fs::exists(dir.path() / "c" / f)) << f;
  r = cli("bench " + (dir / "c"));
  ASSERT_EQ(r.status, 0) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_NE(line.find("millis"), std::string::npos);
  int rows = 0;
  while (std::getline(lines, line)) rows += line.rfind("u", 0) == 0;
  EXPECT_EQ(rows, 4);
}

TEST(Cli, QueryOutputIsByteIdentical) {
  TempDir dir;
  ASSERT_EQ(cli("gen-corpus --roads 30 --buildings 10 " + (dir / "c")).status, 0);
  const std::string store = "--store " + (dir / "s.nt");
  const fs::path c = dir.path() / "c";
  ASSERT_EQ(cli(store + " load-geojson " + (c / "roads.geojson").string() + " --class " + kEx + "Road").status, 0);
  ASSERT_EQ(cli(store + " load-asc " + (c / "flood.asc").string() + " --class " + kEx + "FloodRiskArea --unit cm").status, 0);
  const CliRun a = cli(store + " query " + (c / "u1.rq").string());
  const CliRun b = cli(store + " query " + (c / "u1.rq").string());
  ASSERT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_GT(a.out.size(), 6u);
}
