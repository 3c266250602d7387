#pragma once

#include <string>
#include <string_view>

#include "rastergraph/raster.hpp"

namespace rastergraph::raster {

/// Reads a Grid coverage. Axis values are cell centres with uniform spacing
/// (ascending or descending); `{"start","stop","num"}` axes are accepted too.
/// The single NdArray range may sit at top level or under observedProperty.
/// null entries become NODATA.
///
/// The writer adds two members that other readers ignore: "geo2:grid" in the
/// domain (exact origin and cell size, so round trips are bit-exact) and
/// "geo2:nodata"/"geo2:scaleKind" in the parameter.
///
/// Throws ParseError for malformed JSON and ValidationError for structural
/// problems (missing members, non-uniform axes, shape mismatches).
Raster parseCoverageJson(std::string_view text);
std::string writeCoverageJson(const Raster& r);

/// ESRI ASCII grid. Header keys are case-insensitive and may come in any
/// order; NODATA_value defaults to -9999. Rows are listed top row first.
/// Errors carry the offending line number.
Raster parseAscGrid(std::string_view text);
/// Throws ValidationError unless cells are square.
std::string writeAscGrid(const Raster& r);

/// Upper-case hex of a little-endian record: u16 version (0), u16 band count
/// (1), f64 cell width, f64 cell height, f64 originX, f64 originY, u16 nCols,
/// u16 nRows, f64 nodata, then nCols*nRows f64 values, bottom row first.
/// Throws ValidationError for grids wider or taller than 65535 cells.
std::string writeRasterHexWkb(const Raster& r);
/// Inverse of writeRasterHexWkb. Case-insensitive; throws ParseError on bad
/// hex, wrong length or an unknown version.
Raster parseRasterHexWkb(std::string_view hex);

}  // namespace rastergraph::raster
