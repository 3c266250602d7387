#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "rastergraph/raster.hpp"
#include "rastergraph/rdf.hpp"

namespace rastergraph {

/// A graph plus the rasters ingested into it, keyed by feature IRI.
struct Workspace {
  rdf::Graph graph;
  std::map<std::string, raster::Raster> rasters;
  std::string baseIri;

  /// Base IRI from RASTERGRAPH_BASE_IRI, else http://example.org/data.
  Workspace();
  explicit Workspace(std::string base) : baseIri(std::move(base)) {}

  /// Every feature/geometry/coverage node is minted as <base>/<kind>/<n>.
  /// Returns the next unused n (scans the graph, so it survives reloads).
  std::size_t nextIndex() const;

  /// GeoJSON FeatureCollection of Point, LineString and Polygon features.
  /// Per feature: rdf:type, geo:hasGeometry, the geometry's type and its
  /// geo:asWKT literal, then one triple per non-null scalar property
  /// (key `p` becomes ex:p unless it is an IRI or a known prefixed name).
  /// Strings shaped like xsd:dateTime are typed as such. Returns the number of
  /// triples added. Throws ValidationError for other geometry types or holes.
  std::size_t ingestGeoJson(std::string_view text, const std::string& classIri);

  /// ESRI ASCII grid as a feature typed classIri with geo2:hasCoverage and
  /// geo2:asCoverage pointing at a coverage node that holds the CoverageJSON
  /// literal and an om:Scale node with the unit label and NODATA value.
  std::size_t ingestAscRaster(std::string_view text, const std::string& classIri, const std::string& unitLabel);

  /// Flat N-Triples file. Loading a missing file leaves the workspace empty.
  void load(const std::filesystem::path& store);
  void save(const std::filesystem::path& store) const;
};

std::string readTextFile(const std::filesystem::path& path);
void writeTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace rastergraph
