#include "rastergraph/raster.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>

#include "rastergraph/error.hpp"

namespace rastergraph::raster {

std::string_view scaleKindName(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::Nominal: return "nominal";
    case ScaleKind::Ordinal: return "ordinal";
    case ScaleKind::Interval: return "interval";
    case ScaleKind::Ratio: return "ratio";
  }
  return "ratio";
}

ScaleKind parseScaleKind(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "nominal") return ScaleKind::Nominal;
  if (lower == "ordinal") return ScaleKind::Ordinal;
  if (lower == "interval") return ScaleKind::Interval;
  if (lower == "ratio") return ScaleKind::Ratio;
  throw ValidationError("unknown scale kind '" + std::string(name) + "'");
}

bool Scale::isNodata(double v) const noexcept {
  if (std::isnan(nodata)) return std::isnan(v);
  return v == nodata;
}

bool operator==(const Scale& a, const Scale& b) noexcept {
  return a.kind == b.kind && a.unitLabel == b.unitLabel &&
         std::bit_cast<std::uint64_t>(a.nodata) == std::bit_cast<std::uint64_t>(b.nodata);
}

Raster::Raster(double originX, double originY, double cellWidth, double cellHeight, std::size_t nCols,
               std::size_t nRows, std::vector<double> values, Scale scale)
    : originX_(originX),
      originY_(originY),
      cellWidth_(cellWidth),
      cellHeight_(cellHeight),
      nCols_(nCols),
      nRows_(nRows),
      values_(std::move(values)),
      scale_(std::move(scale)) {
  if (!std::isfinite(originX_) || !std::isfinite(originY_))
    throw ValidationError("raster origin must be finite");
  if (!(cellWidth_ > 0) || !(cellHeight_ > 0) || !std::isfinite(cellWidth_) || !std::isfinite(cellHeight_))
    throw ValidationError("raster cell size must be positive and finite");
  if (nCols_ == 0 || nRows_ == 0) throw ValidationError("raster must have at least one cell");
  if (values_.size() != nCols_ * nRows_)
    throw ValidationError("raster has " + std::to_string(values_.size()) + " values, expected " +
                          std::to_string(nCols_ * nRows_));
  for (double v : values_)
    if (!std::isfinite(v) && !scale_.isNodata(v))
      throw ValidationError("raster values must be finite or NODATA");
}

geom::Rectangle Raster::domainRect() const noexcept {
  return geom::Rectangle{originX_, originY_, originX_ + static_cast<double>(nCols_) * cellWidth_,
                         originY_ + static_cast<double>(nRows_) * cellHeight_};
}

geom::Rectangle Raster::cellRect(std::size_t i, std::size_t j) const noexcept {
  const double x0 = originX_ + static_cast<double>(i) * cellWidth_;
  const double y0 = originY_ + static_cast<double>(j) * cellHeight_;
  // The outermost edges are taken from the domain so cells tile it exactly.
  const double x1 = i + 1 == nCols_ ? domainRect().xmax : originX_ + static_cast<double>(i + 1) * cellWidth_;
  const double y1 = j + 1 == nRows_ ? domainRect().ymax : originY_ + static_cast<double>(j + 1) * cellHeight_;
  return geom::Rectangle{x0, y0, x1, y1};
}

geom::Point Raster::cellCenter(std::size_t i, std::size_t j) const noexcept {
  return geom::Point{originX_ + (static_cast<double>(i) + 0.5) * cellWidth_,
                     originY_ + (static_cast<double>(j) + 0.5) * cellHeight_};
}

namespace {

// Index along one axis under the half-open rule, or nullopt when outside.
std::optional<std::size_t> axisIndex(double v, double origin, double size, std::size_t n) {
  const double max = origin + static_cast<double>(n) * size;
  if (!(v >= origin && v <= max)) return std::nullopt;
  if (v == max) return n - 1;
  auto k = static_cast<std::size_t>(std::floor((v - origin) / size));
  k = std::min(k, n - 1);
  // Rounding in the division may land one cell off near an edge.
  while (k > 0 && v < origin + static_cast<double>(k) * size) --k;
  while (k + 1 < n && v >= origin + static_cast<double>(k + 1) * size) ++k;
  return k;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> Raster::cellIndexAt(double x, double y) const noexcept {
  auto i = axisIndex(x, originX_, cellWidth_, nCols_);
  auto j = axisIndex(y, originY_, cellHeight_, nRows_);
  if (!i || !j) return std::nullopt;
  return std::pair{*i, *j};
}

Raster Raster::withValues(std::vector<double> values) const {
  return Raster(originX_, originY_, cellWidth_, cellHeight_, nCols_, nRows_, std::move(values), scale_);
}

bool operator==(const Raster& a, const Raster& b) noexcept {
  auto same = [](double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); };
  if (!same(a.originX_, b.originX_) || !same(a.originY_, b.originY_) || !same(a.cellWidth_, b.cellWidth_) ||
      !same(a.cellHeight_, b.cellHeight_) || a.nCols_ != b.nCols_ || a.nRows_ != b.nRows_ || !(a.scale_ == b.scale_))
    return false;
  return std::equal(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end(), same);
}

double cellval(const Raster& r, double x, double y) {
  auto idx = r.cellIndexAt(x, y);
  if (!idx) throw DomainError("point outside the raster domain");
  return r.at(idx->first, idx->second);
}

std::vector<double> cellval2(const Raster& r) {
  std::vector<double> out;
  out.reserve(r.size());
  for (double v : r.values())
    if (!r.scale().isNodata(v)) out.push_back(v);
  return out;
}

bool rasterValEq(const Raster& a, const Raster& b) {
  if (!(a.domainRect() == b.domainRect()) || a.nCols() != b.nCols() || a.nRows() != b.nRows()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const bool na = a.scale().isNodata(a.values()[k]);
    const bool nb = b.scale().isNodata(b.values()[k]);
    if (na != nb) return false;
    if (!na && a.values()[k] != b.values()[k]) return false;
  }
  return true;
}

double avoidNodata(double v, const Scale& scale) noexcept {
  if (!scale.isNodata(v) || std::isnan(v)) return v;
  const double up = std::nextafter(v, std::numeric_limits<double>::infinity());
  return std::isfinite(up) ? up : std::nextafter(v, -std::numeric_limits<double>::infinity());
}

}  // namespace rastergraph::raster
