#include "rastergraph/workspace.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "rastergraph/error.hpp"
#include "rastergraph/geometry.hpp"
#include "rastergraph/raster_io.hpp"
#include "rastergraph/rdf_io.hpp"
#include "rastergraph/vocab.hpp"

namespace rastergraph {

namespace {

using nlohmann::json;

rdf::Term iri(std::string_view s) { return rdf::Term::iri(std::string(s)); }

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

geom::Point readPoint(const json& c) {
  if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number())
    throw ValidationError("GeoJSON: a position needs two numbers");
  return {c[0].get<double>(), c[1].get<double>()};
}

std::vector<geom::Point> readPoints(const json& c) {
  if (!c.is_array()) throw ValidationError("GeoJSON: coordinates must be an array");
  std::vector<geom::Point> pts;
  for (const auto& p : c) pts.push_back(readPoint(p));
  return pts;
}

geom::Geometry readGeometry(const json& g) {
  if (!g.is_object() || !g.contains("type")) throw ValidationError("GeoJSON: feature without geometry");
  const std::string type = g["type"].get<std::string>();
  const json& c = g.value("coordinates", json());
  if (type == "Point") return geom::Geometry(readPoint(c));
  if (type == "LineString") return geom::Geometry::lineString(readPoints(c));
  if (type == "Polygon") {
    if (!c.is_array() || c.empty()) throw ValidationError("GeoJSON: polygon without rings");
    if (c.size() > 1) throw ValidationError("GeoJSON: polygons with holes are not supported");
    return geom::Geometry::polygon(readPoints(c[0]));
  }
  throw ValidationError("GeoJSON: unsupported geometry type '" + type + "'");
}

std::string propertyIri(const std::string& key) {
  if (key.find("://") != std::string::npos) return key;
  if (auto colon = key.find(':'); colon != std::string::npos) {
    const auto& prefixes = rdf::defaultPrefixes();
    if (auto it = prefixes.find(key.substr(0, colon)); it != prefixes.end()) return it->second + key.substr(colon + 1);
  }
  return std::string(vocab::kEx) + key;
}

std::optional<rdf::Term> propertyValue(const json& v) {
  const std::string xsd(vocab::kXsd);
  if (v.is_boolean()) return rdf::Term::literal(v.get<bool>() ? "true" : "false", xsd + "boolean");
  if (v.is_number_integer()) return rdf::Term::literal(v.dump(), xsd + "integer");
  if (v.is_number()) return rdf::Term::literal(shortest(v.get<double>()), xsd + "double");
  if (v.is_string()) {
    static const std::regex dateTime(R"(-?\d{4,}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:\d{2})?)");
    const std::string s = v.get<std::string>();
    if (std::regex_match(s, dateTime)) return rdf::Term::literal(s, xsd + "dateTime");
    return rdf::Term::literal(s, xsd + "string");
  }
  return std::nullopt;  // null, arrays and objects are skipped
}

}  // namespace

Workspace::Workspace() {
  const char* env = std::getenv("RASTERGRAPH_BASE_IRI");
  baseIri = env && *env ? env : "http://example.org/data";
}

std::size_t Workspace::nextIndex() const {
  const std::string prefix = baseIri + "/feature/";
  std::size_t next = 0;
  for (const auto& t : graph.triples()) {
    const std::string& s = t.subject.value();
    if (!t.subject.isIri() || s.compare(0, prefix.size(), prefix) != 0) continue;
    std::size_t n = 0;
    const char* first = s.data() + prefix.size();
    if (auto [p, ec] = std::from_chars(first, s.data() + s.size(), n); ec == std::errc() && p == s.data() + s.size())
      next = std::max(next, n + 1);
  }
  return next;
}

std::size_t Workspace::ingestGeoJson(std::string_view text, const std::string& classIri) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("GeoJSON: ") + e.what(), 0, 0);
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
      !doc["features"].is_array())
    throw ValidationError("GeoJSON: expected a FeatureCollection");

  // Validate everything before touching the graph.
  std::vector<geom::Geometry> geometries;
  for (const auto& f : doc["features"]) geometries.push_back(readGeometry(f.value("geometry", json())));

  std::size_t n = nextIndex(), added = 0;
  const rdf::Term type = iri(vocab::kRdfType);
  for (std::size_t k = 0; k < geometries.size(); ++k, ++n) {
    const rdf::Term feature = iri(baseIri + "/feature/" + std::to_string(n));
    const rdf::Term geometry = iri(baseIri + "/geom/" + std::to_string(n));
    added += graph.insert({feature, type, iri(classIri)});
    added += graph.insert({feature, iri(vocab::kHasGeometry), geometry});
    added += graph.insert({geometry, type, iri(vocab::kGeometryClass)});
    added += graph.insert(
        {geometry, iri(vocab::kAsWkt), rdf::Term::literal(geom::toWkt(geometries[k]), std::string(vocab::kWktLiteral))});
    const json& props = doc["features"][k].value("properties", json());
    if (!props.is_object()) continue;
    for (const auto& [key, value] : props.items()) {
      if (auto term = propertyValue(value)) added += graph.insert({feature, iri(propertyIri(key)), *term});
    }
  }
  return added;
}

std::size_t Workspace::ingestAscRaster(std::string_view text, const std::string& classIri, const std::string& unitLabel) {
  raster::Raster r = raster::parseAscGrid(text);
  if (!unitLabel.empty()) {
    raster::Scale scale = r.scale();
    scale.unitLabel = unitLabel;
    r = raster::Raster(r.originX(), r.originY(), r.cellWidth(), r.cellHeight(), r.nCols(), r.nRows(), r.values(), scale);
  }
  const std::size_t n = nextIndex();
  const std::string id = std::to_string(n);
  const rdf::Term feature = iri(baseIri + "/feature/" + id);
  const rdf::Term coverage = iri(baseIri + "/coverage/" + id);
  const rdf::Term scale = iri(baseIri + "/scale/" + id);
  const rdf::Term type = iri(vocab::kRdfType);

  std::size_t added = 0;
  added += graph.insert({feature, type, iri(classIri)});
  added += graph.insert({feature, iri(vocab::kHasCoverage), coverage});
  added += graph.insert({feature, iri(vocab::kAsCoverage), coverage});
  added += graph.insert({coverage, type, iri(vocab::kRasterClass)});
  added += graph.insert({coverage, iri(vocab::kAsCoverageJson),
                         rdf::Term::literal(raster::writeCoverageJson(r), std::string(vocab::kCovJsonLiteral))});
  added += graph.insert({coverage, iri(vocab::kHasScale), scale});
  added += graph.insert({scale, type, iri(vocab::kScaleClass)});
  added += graph.insert({scale, iri(vocab::kHasUnit), rdf::Term::literal(r.scale().unitLabel, std::string(vocab::kXsdString))});
  added += graph.insert(
      {scale, iri(vocab::kNodata), rdf::Term::literal(shortest(r.nodata()), std::string(vocab::kXsdDouble))});
  rasters.insert_or_assign(feature.value(), std::move(r));
  return added;
}

void Workspace::load(const std::filesystem::path& store) {
  if (!std::filesystem::exists(store)) return;
  rdf::parseRdfDocumentInto(readTextFile(store), graph);
}

void Workspace::save(const std::filesystem::path& store) const { writeTextFile(store, rdf::toNTriples(graph)); }

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace rastergraph
