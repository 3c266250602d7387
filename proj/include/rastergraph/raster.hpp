#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rastergraph/geometry.hpp"

namespace rastergraph::raster {

enum class ScaleKind { Nominal, Ordinal, Interval, Ratio };

std::string_view scaleKindName(ScaleKind kind);
/// Case-insensitive; throws ValidationError for unknown names.
ScaleKind parseScaleKind(std::string_view name);

/// Legend of a raster: what its values mean and which value marks "no data".
struct Scale {
  ScaleKind kind = ScaleKind::Ratio;
  std::string unitLabel;
  double nodata = -9999.0;

  /// NaN sentinels match NaN values.
  bool isNodata(double v) const noexcept;
  friend bool operator==(const Scale& a, const Scale& b) noexcept;
};

/// A uniform, axis-aligned grid. Row 0 is the bottom row; values are stored
/// row-major starting at the lower-left cell.
class Raster {
 public:
  /// Throws ValidationError unless cell sizes are positive and finite, the
  /// grid is non-empty, the origin is finite, values.size() == nCols*nRows and
  /// every value is finite or the nodata sentinel.
  Raster(double originX, double originY, double cellWidth, double cellHeight, std::size_t nCols,
         std::size_t nRows, std::vector<double> values, Scale scale = {});

  double originX() const noexcept { return originX_; }
  double originY() const noexcept { return originY_; }
  double cellWidth() const noexcept { return cellWidth_; }
  double cellHeight() const noexcept { return cellHeight_; }
  std::size_t nCols() const noexcept { return nCols_; }
  std::size_t nRows() const noexcept { return nRows_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const Scale& scale() const noexcept { return scale_; }
  double nodata() const noexcept { return scale_.nodata; }

  /// Value of column i, row j.
  double at(std::size_t i, std::size_t j) const { return values_[j * nCols_ + i]; }
  bool isNodataAt(std::size_t i, std::size_t j) const { return scale_.isNodata(at(i, j)); }

  geom::Rectangle domainRect() const noexcept;
  geom::Rectangle cellRect(std::size_t i, std::size_t j) const noexcept;
  geom::Point cellCenter(std::size_t i, std::size_t j) const noexcept;

  /// Column/row of the cell holding (x, y). Interior edges belong to the
  /// higher-indexed cell; the domain's right and top edges are included.
  std::optional<std::pair<std::size_t, std::size_t>> cellIndexAt(double x, double y) const noexcept;

  /// Same layout, different values (validated like the constructor).
  Raster withValues(std::vector<double> values) const;

  /// Bitwise-equal grid, scale and values (NaN equals NaN).
  friend bool operator==(const Raster& a, const Raster& b) noexcept;

 private:
  double originX_, originY_, cellWidth_, cellHeight_;
  std::size_t nCols_, nRows_;
  std::vector<double> values_;
  Scale scale_;
};

/// Throws DomainError when (x, y) lies outside the domain.
double cellval(const Raster& r, double x, double y);

/// Values of all non-NODATA cells in row-major order.
std::vector<double> cellval2(const Raster& r);

/// Equal domain rectangles and grid shapes, and pairwise equal cells
/// (NODATA matches only NODATA).
bool rasterValEq(const Raster& a, const Raster& b);

/// Returns v, or its nearest representable neighbour when v equals the
/// sentinel, so computed values never read as NODATA.
double avoidNodata(double v, const Scale& scale) noexcept;

/// The domain rectangle as a geometry (raster2geom).
inline geom::Geometry domainGeometry(const Raster& r) { return geom::Geometry(r.domainRect()); }

}  // namespace rastergraph::raster
