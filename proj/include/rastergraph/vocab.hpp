#pragma once

#include <string_view>

// IRIs used across the engine. Namespaces first, then the individual terms.
namespace rastergraph::vocab {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kGeo = "http://www.opengis.net/ont/geosparql#";
inline constexpr std::string_view kGeof = "http://www.opengis.net/def/function/geosparql/";
inline constexpr std::string_view kGeo2 = "http://example.org/geo2#";
inline constexpr std::string_view kEx = "http://example.org/ns#";
inline constexpr std::string_view kEar = "http://example.org/ear#";
inline constexpr std::string_view kUom = "http://www.opengis.net/def/uom/OGC/1.0/";
inline constexpr std::string_view kOm = "http://www.ontology-of-units-of-measure.org/resource/om-2/";

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kLangString = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdDateTime = "http://www.w3.org/2001/XMLSchema#dateTime";

inline constexpr std::string_view kWktLiteral = "http://www.opengis.net/ont/geosparql#wktLiteral";
inline constexpr std::string_view kHasGeometry = "http://www.opengis.net/ont/geosparql#hasGeometry";
inline constexpr std::string_view kAsWkt = "http://www.opengis.net/ont/geosparql#asWKT";
inline constexpr std::string_view kGeometryClass = "http://www.opengis.net/ont/geosparql#Geometry";

inline constexpr std::string_view kCovJsonLiteral = "http://example.org/geo2#covJSONLiteral";
inline constexpr std::string_view kRasterHexWkbLiteral = "http://example.org/geo2#rasterHexWKBLiteral";
inline constexpr std::string_view kRasterClass = "http://example.org/geo2#Raster";
inline constexpr std::string_view kHasCoverage = "http://example.org/geo2#hasCoverage";
inline constexpr std::string_view kAsCoverage = "http://example.org/geo2#asCoverage";
inline constexpr std::string_view kAsCoverageJson = "http://example.org/geo2#asCoverageJSON";
inline constexpr std::string_view kHasScale = "http://example.org/geo2#hasScale";
inline constexpr std::string_view kNodata = "http://example.org/geo2#nodata";
inline constexpr std::string_view kScaleKind = "http://example.org/geo2#scaleKind";
inline constexpr std::string_view kScaleClass = "http://www.ontology-of-units-of-measure.org/resource/om-2/Scale";
inline constexpr std::string_view kHasUnit = "http://www.ontology-of-units-of-measure.org/resource/om-2/hasUnit";

inline constexpr std::string_view kUomMeter = "http://www.opengis.net/def/uom/OGC/1.0/meter";
inline constexpr std::string_view kUomKm = "http://www.opengis.net/def/uom/OGC/1.0/km";
inline constexpr std::string_view kUomKilometre = "http://www.opengis.net/def/uom/OGC/1.0/kilometre";

/// Placeholder CRS returned by geof:getSRID (CRS handling is not modelled).
inline constexpr std::string_view kDefaultCrs = "http://www.opengis.net/def/crs/OGC/1.3/CRS84";

}  // namespace rastergraph::vocab
