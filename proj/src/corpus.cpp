#include "rastergraph/corpus.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <json.hpp>

#include "rastergraph/raster_io.hpp"
#include "rastergraph/vocab.hpp"

namespace rastergraph::corpus {

namespace {

using nlohmann::json;

constexpr double kExtent = 20000;
constexpr std::size_t kCells = 50;
constexpr double kCell = kExtent / kCells;

double round2(double v) { return std::round(v * 100) / 100; }

json feature(json geometry, json properties = json::object()) {
  return {{"type", "Feature"}, {"geometry", std::move(geometry)}, {"properties", std::move(properties)}};
}

json collection(json features) { return {{"type", "FeatureCollection"}, {"features", std::move(features)}}; }

json ring(const std::vector<std::pair<double, double>>& pts) {
  json r = json::array();
  for (const auto& [x, y] : pts) r.push_back({x, y});
  r.push_back(r.front());
  return json::array({r});
}

std::string isoTime(long long secondsSinceEpoch) {
  const long long days = secondsSinceEpoch / 86400, rem = secondsSinceEpoch % 86400;
  // civil-from-days
  long long z = days + 719468;
  const long long era = z / 146097;
  const long long doe = z - era * 146097;
  const long long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const long long mp = (5 * doy + 2) / 153;
  const long long d = doy - (153 * mp + 2) / 5 + 1;
  const long long m = mp < 10 ? mp + 3 : mp - 9;
  const long long y = yoe + era * 400 + (m <= 2);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld-%02lld-%02lldT%02lld:%02lld:%02lldZ", y, m, d, rem / 3600, rem / 60 % 60,
                rem % 60);
  return buf;
}

raster::Raster grid(std::vector<double> values, const std::string& unit) {
  raster::Scale scale;
  scale.unitLabel = unit;
  return raster::Raster(0, 0, kCell, kCell, kCells, kCells, std::move(values), scale);
}

}  // namespace

Corpus generate(const Options& o) {
  std::mt19937_64 rng(o.seed);
  auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  Corpus c;

  // Flood depth: a smooth wave with noise and a NODATA block in the west.
  std::vector<double> flood(kCells * kCells), fire(kCells * kCells);
  const double fx = uniform(0, 2 * std::numbers::pi), fy = uniform(0, 2 * std::numbers::pi);
  for (std::size_t j = 0; j < kCells; ++j) {
    for (std::size_t i = 0; i < kCells; ++i) {
      const double x = (i + 0.5) * kCell, y = (j + 0.5) * kCell;
      double v = 30 + 28 * std::sin(x / 3000 + fx) * std::cos(y / 2500 + fy) + uniform(0, 4);
      if (i >= 5 && i < 13 && j >= 30 && j < 41) v = -9999;
      flood[j * kCells + i] = v < 0 && v != -9999 ? 0 : (v == -9999 ? v : round2(v));
    }
  }
  // Fire index: present in the east only.
  for (std::size_t j = 0; j < kCells; ++j) {
    for (std::size_t i = 0; i < kCells; ++i) {
      const double x = (i + 0.5) * kCell;
      double v = -9999;
      if (i >= 28 && !(j >= 10 && j < 14)) v = round2(5 + 20 * (x - 11200) / 8800 + uniform(0, 10));
      fire[j * kCells + i] = v;
    }
  }
  c.flood = raster::writeAscGrid(grid(std::move(flood), "cm"));
  c.fire = raster::writeAscGrid(grid(std::move(fire), "index"));

  json roads = json::array();
  for (std::size_t k = 0; k < o.roads; ++k) {
    double x = uniform(200, kExtent - 200), y = uniform(200, kExtent - 200);
    double heading = uniform(0, 2 * std::numbers::pi);
    json line = json::array({{round2(x), round2(y)}});
    const int segments = pick(1, 3);
    for (int s = 0; s < segments; ++s) {
      heading += uniform(-0.8, 0.8);
      const double len = uniform(300, 1800);
      x = std::clamp(x + len * std::cos(heading), 1.0, kExtent - 1);
      y = std::clamp(y + len * std::sin(heading), 1.0, kExtent - 1);
      json p = {round2(x), round2(y)};
      if (p != line.back()) line.push_back(p);
    }
    if (line.size() < 2) line.push_back({line[0][0].get<double>() + 10, line[0][1]});
    roads.push_back(feature({{"type", "LineString"}, {"coordinates", line}}, {{"name", "road " + std::to_string(k)}}));
  }
  c.roads = collection(std::move(roads)).dump();

  json buildings = json::array();
  for (std::size_t k = 0; k < o.buildings; ++k) {
    const double cx = uniform(100, kExtent - 100), cy = uniform(100, kExtent - 100);
    const double hw = uniform(8, 30), hh = uniform(8, 30), a = uniform(0, std::numbers::pi / 2);
    const double ca = std::cos(a), sa = std::sin(a);
    std::vector<std::pair<double, double>> pts;
    for (auto [u, v] : {std::pair{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}})
      pts.emplace_back(round2(cx + u * ca - v * sa), round2(cy + u * sa + v * ca));
    buildings.push_back(feature({{"type", "Polygon"}, {"coordinates", ring(pts)}}));
  }
  c.buildings = collection(std::move(buildings)).dump();

  json elements = json::array();
  const long long base = 1558483200;  // 2019-05-22T00:00:00Z
  for (std::size_t k = 0; k < o.elementsAtRisk; ++k) {
    const double x0 = uniform(100, kExtent - 500), y0 = uniform(100, kExtent - 500), s = uniform(60, 400);
    const double x1 = round2(x0 + s), y1 = round2(y0 + s);
    const long long open = base + pick(0, 48 * 3600 - 1);
    const long long close = open + pick(2 * 3600, 30 * 3600);
    elements.push_back(feature(
        {{"type", "Polygon"}, {"coordinates", ring({{round2(x0), round2(y0)}, {x1, round2(y0)}, {x1, y1}, {round2(x0), y1}})}},
        {{"openTime", isoTime(open)}, {"closeTime", isoTime(close)}}));
  }
  c.elements = collection(std::move(elements)).dump();
  return c;
}

void write(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  writeTextFile(dir / "roads.geojson", corpus.roads);
  writeTextFile(dir / "buildings.geojson", corpus.buildings);
  writeTextFile(dir / "elements.geojson", corpus.elements);
  writeTextFile(dir / "flood.asc", corpus.flood);
  writeTextFile(dir / "fire.asc", corpus.fire);
  for (const auto& uc : useCases()) writeTextFile(dir / (uc.name + ".rq"), uc.query);
}

void load(Workspace& ws, const std::filesystem::path& dir) {
  const std::string ex(vocab::kEx);
  ws.ingestGeoJson(readTextFile(dir / "roads.geojson"), ex + "Road");
  ws.ingestGeoJson(readTextFile(dir / "buildings.geojson"), ex + "Building");
  ws.ingestGeoJson(readTextFile(dir / "elements.geojson"), std::string(vocab::kEar) + "ElementAtRisk");
  ws.ingestAscRaster(readTextFile(dir / "flood.asc"), ex + "FloodRiskArea", "cm");
  ws.ingestAscRaster(readTextFile(dir / "fire.asc"), ex + "FireRiskArea", "index");
}

const std::vector<UseCase>& useCases() {
  static const std::vector<UseCase> cases = {
      {"u1", R"q(SELECT ?road WHERE {
  ?road a ex:Road ; geo:hasGeometry ?roadseg . ?roadseg geo:asWKT ?roadseg_wkt .
  ?floodarea a ex:FloodRiskArea ; geo2:asCoverage ?floodarea_cov .
  ?floodarea_cov geo2:asCoverageJSON ?floodarea_covjson .
  BIND(geo2:rasterSmaller(?floodarea_covjson,10) AS ?relfloodarea)
  FILTER(geo2:intersects(?roadseg_wkt,?relfloodarea))}
)q"},
      {"u2", R"q(SELECT ?building (MAX(?riskvalue) AS ?riskmax) WHERE {
  ?building a ex:Building ; geo:hasGeometry ?building_geom .
  ?building_geom geo:asWKT ?building_wkt .
  ?floodarea a ex:FloodRiskArea ; geo2:hasCoverage ?floodcov.
  ?floodcov geo2:asCoverageJSON ?floodcov_covjson .
  ?firearea rdf:type ex:FireRiskArea ; geo2:hasCoverage ?firecov.
  ?firecov geo2:asCoverageJSON ?firecov_covjson .
  BIND (geo2:rasterPlus(?firecov_covjson,?floodcov_covjson) AS ?riskarea)
  BIND (geo2:cellval2(geo2:rasterIntersection(?building_wkt,?riskarea)) AS ?riskvalue)
  FILTER(geo2:intersects(?building_wkt,?riskarea))}
)q"},
      {"u3", R"q(SELECT ?road WHERE{
  ?road a ex:Road ; geo:hasGeometry ?roadgeom . ?roadgeom geo:asWKT ?road_wkt .
  ?ear a ear:ElementAtRisk ; geo:hasGeometry ?eargeom ; ex:openTime ?earopen ; ex:closeTime ?earclose .
  ?eargeom geo:asWKT ?ear_wkt .
  ?floodarea a ex:FloodRiskArea ; geo2:hasCoverage ?floodcov. ?floodcov geo2:asCoverageJSON ?floodcov_covjson .
  ?firearea rdf:type ex:FireRiskArea ; geo2:hasCoverage ?firecov. ?firecov geo2:asCoverageJSON ?firecov_covjson .
  BIND (geo2:rasterPlus(?firecov_covjson,?floodcov_covjson) AS ?riskarea)
  BIND("2019-05-23T10:20:13+05:30"^^xsd:dateTime AS ?givendate)
  FILTER(?givendate>?earopen AND ?givendate<?earclose)
  FILTER(geo:intersects(geo:buffer(?road_wkt,2,uom:meter),?ear))
  FILTER(!geo:intersects(?road_wkt,?riskarea))}
)q"},
      {"u4", R"q(SELECT ?hazardcoveragepercentage WHERE {
  BIND("POINT(49.2,36.2)"^^geo:wktLiteral AS ?locationtocheck)
  ?floodarea a ex:FloodRiskArea; geo2:hasCoverage ?floodcov.
  ?floodcov geo2:asCoverageJSON ?floodcov_covjson .
  ?firearea rdf:type ex:FireRiskArea ; geo2:hasCoverage ?firecov.
  ?firecov geo2:asCoverageJSON ?firecov_covjson .
  BIND(geo2:rasterUnion(?firecov_covjson,?floodcov_covjson) AS ?hazardriskarea)
  BIND(geo2:geometryIntersection(?hazardriskarea,geo:buffer(?locationtocheck,10,uom:km)) AS ?intersectarea)
  BIND(geo:area(?intersectarea)/geo:area(geo2:raster2geom(?hazardriskarea)) AS ?hazardcoveragepercentage)}
)q"},
  };
  return cases;
}

std::vector<BenchRow> bench(const Workspace& ws) {
  std::vector<BenchRow> out;
  for (const auto& uc : useCases()) {
    const auto start = std::chrono::steady_clock::now();
    eval::ResultTable table = eval::runQuery(ws.graph, uc.query);
    const auto stop = std::chrono::steady_clock::now();
    BenchRow row;
    row.name = uc.name;
    row.millis = std::chrono::duration<double, std::milli>(stop - start).count();
    row.rows = table.rows.size();
    row.result = std::move(table);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace rastergraph::corpus
