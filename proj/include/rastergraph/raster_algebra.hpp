#pragma once

#include <variant>
#include <vector>

#include "rastergraph/geometry.hpp"
#include "rastergraph/raster.hpp"

namespace rastergraph::raster {

enum class BinaryOp { Plus, Subtract, Mult, Div, And, Or, Xor, Equals };
enum class ConstOp { Plus, Subtract, Mult, Div, And, Or, Xor, Equals, Exp, GreaterKeep, SmallerKeep };
enum class UnaryOp { Not, Invert };
enum class AggregateOp { Min, Max, Mean };

/// Result has r1's grid and scale. Each r1 cell is paired with the r2 cell
/// under its centre: no partner keeps the r1 value, r1 NODATA stays NODATA,
/// r2 NODATA keeps the r1 value. Boolean ops read nonzero as true and give
/// 1/0. Division by zero and non-finite results give NODATA.
Raster cellwiseBinary(BinaryOp op, const Raster& r1, const Raster& r2);

/// Exp raises each value to the power c. GreaterKeep/SmallerKeep keep values
/// strictly above/below c and turn the rest into NODATA.
Raster cellwiseBinaryConst(ConstOp op, const Raster& r, double c);

/// Not maps nonzero to 0 and 0 to 1; Invert negates. NODATA is preserved.
Raster cellwiseUnary(UnaryOp op, const Raster& r);

/// Over non-NODATA cells. Throws DomainError if every cell is NODATA.
double aggregate(AggregateOp op, const Raster& r);

/// Cells whose open rectangle meets the geometry (row-major flags). A point
/// on a cell edge selects the cell the half-open rule assigns it to.
std::vector<bool> cellsOverlapping(const Raster& r, const geom::Geometry& g);

/// True if some non-NODATA cell, taken as a closed rectangle, meets g.
bool validRegionIntersects(const Raster& r, const geom::Geometry& g);
/// True if a non-NODATA cell of a meets a non-NODATA cell of b.
bool validRegionIntersects(const Raster& a, const Raster& b);

/// Keeps the cells of r overlapping g (or dom(other)); others become NODATA.
Raster rasterIntersection(const Raster& r, const geom::Geometry& g);
Raster rasterIntersection(const Raster& r, const Raster& other);

/// Complement of rasterIntersection for a geometry: overlapping cells become
/// NODATA. For two rasters on the same grid, the first non-NODATA value of
/// (a, b) per cell; throws ValidationError when the grids differ.
Raster rasterUnion(const Raster& r, const geom::Geometry& g);
Raster rasterUnion(const Raster& a, const Raster& b);

/// A grid of nCols x nRows over buffer(g, 1 m); cells overlapping g get
/// `value`, the rest NODATA. Throws ValidationError unless the counts are
/// positive integers.
Raster geom2raster(const geom::Geometry& g, double value, double nCols, double nRows);

/// Nearest-neighbour resampling onto nCols x nRows over the same domain.
Raster rescale(const Raster& r, std::size_t nCols, std::size_t nRows);

/// Raster or geometry argument; rasters take part through their domain.
using Spatial = std::variant<const Raster*, const geom::Geometry*>;
geom::Geometry toGeometry(const Spatial& s);

enum class RasterRelation { CoveredBy, Overlaps, Touches, Within, Equals, EqualsContent, WithinDistance };

/// CoveredBy/Within: a lies inside b. EqualsContent needs two rasters
/// (TypeError otherwise) with equal domains and rasterValEq. WithinDistance
/// compares the distance with `d`.
bool rasterRelation(RasterRelation rel, const Spatial& a, const Spatial& b, double d = 0);

}  // namespace rastergraph::raster
