#include "rastergraph/raster_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "rastergraph/error.hpp"
#include "rastergraph/vocab.hpp"

namespace rastergraph::raster {

namespace {

bool truthy(double v) { return v != 0; }

double finish(double v, const Scale& scale) {
  if (!std::isfinite(v)) return scale.nodata;
  return avoidNodata(v, scale);
}

double applyBinary(BinaryOp op, double a, double b, const Scale& scale) {
  switch (op) {
    case BinaryOp::Plus: return finish(a + b, scale);
    case BinaryOp::Subtract: return finish(a - b, scale);
    case BinaryOp::Mult: return finish(a * b, scale);
    case BinaryOp::Div: return b == 0 ? scale.nodata : finish(a / b, scale);
    case BinaryOp::And: return finish(truthy(a) && truthy(b) ? 1 : 0, scale);
    case BinaryOp::Or: return finish(truthy(a) || truthy(b) ? 1 : 0, scale);
    case BinaryOp::Xor: return finish(truthy(a) != truthy(b) ? 1 : 0, scale);
    case BinaryOp::Equals: return finish(a == b ? 1 : 0, scale);
  }
  return scale.nodata;
}

}  // namespace

Raster cellwiseBinary(BinaryOp op, const Raster& r1, const Raster& r2) {
  std::vector<double> out(r1.size());
  const Scale& scale = r1.scale();
  for (std::size_t j = 0; j < r1.nRows(); ++j) {
    for (std::size_t i = 0; i < r1.nCols(); ++i) {
      const double v1 = r1.at(i, j);
      double& dst = out[j * r1.nCols() + i];
      if (scale.isNodata(v1)) {
        dst = scale.nodata;
        continue;
      }
      const geom::Point c = r1.cellCenter(i, j);
      auto idx = r2.cellIndexAt(c.x, c.y);
      if (!idx || r2.isNodataAt(idx->first, idx->second)) {
        dst = v1;
        continue;
      }
      dst = applyBinary(op, v1, r2.at(idx->first, idx->second), scale);
    }
  }
  return r1.withValues(std::move(out));
}

Raster cellwiseBinaryConst(ConstOp op, const Raster& r, double c) {
  const Scale& scale = r.scale();
  std::vector<double> out(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double v = r.values()[k];
    if (scale.isNodata(v)) {
      out[k] = scale.nodata;
      continue;
    }
    switch (op) {
      case ConstOp::Plus: out[k] = applyBinary(BinaryOp::Plus, v, c, scale); break;
      case ConstOp::Subtract: out[k] = applyBinary(BinaryOp::Subtract, v, c, scale); break;
      case ConstOp::Mult: out[k] = applyBinary(BinaryOp::Mult, v, c, scale); break;
      case ConstOp::Div: out[k] = applyBinary(BinaryOp::Div, v, c, scale); break;
      case ConstOp::And: out[k] = applyBinary(BinaryOp::And, v, c, scale); break;
      case ConstOp::Or: out[k] = applyBinary(BinaryOp::Or, v, c, scale); break;
      case ConstOp::Xor: out[k] = applyBinary(BinaryOp::Xor, v, c, scale); break;
      case ConstOp::Equals: out[k] = applyBinary(BinaryOp::Equals, v, c, scale); break;
      case ConstOp::Exp: out[k] = finish(std::pow(v, c), scale); break;
      case ConstOp::GreaterKeep: out[k] = v > c ? v : scale.nodata; break;
      case ConstOp::SmallerKeep: out[k] = v < c ? v : scale.nodata; break;
    }
  }
  return r.withValues(std::move(out));
}

Raster cellwiseUnary(UnaryOp op, const Raster& r) {
  const Scale& scale = r.scale();
  std::vector<double> out(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double v = r.values()[k];
    if (scale.isNodata(v)) out[k] = scale.nodata;
    else if (op == UnaryOp::Not) out[k] = finish(truthy(v) ? 0 : 1, scale);
    else out[k] = finish(-v, scale);
  }
  return r.withValues(std::move(out));
}

double aggregate(AggregateOp op, const Raster& r) {
  const std::vector<double> vals = cellval2(r);
  if (vals.empty()) throw DomainError("raster has no valid cells");
  switch (op) {
    case AggregateOp::Min: return *std::min_element(vals.begin(), vals.end());
    case AggregateOp::Max: return *std::max_element(vals.begin(), vals.end());
    case AggregateOp::Mean: {
      double sum = 0;
      for (double v : vals) sum += v;
      return sum / static_cast<double>(vals.size());
    }
  }
  return 0;
}

// ---- rasterization ------------------------------------------------------------

namespace {

using geom::Point;
using geom::Rectangle;

// A geometry flattened into the pieces that matter for cell tests.
struct Primitives {
  std::vector<Point> points;
  std::vector<std::pair<Point, Point>> segments;
  std::vector<std::vector<Point>> rings;  // closed, for area membership
};

void flatten(const geom::Geometry& g, Primitives& p) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, geom::Point>) {
          p.points.push_back(v);
        } else if constexpr (std::is_same_v<T, geom::LineString>) {
          for (std::size_t k = 0; k + 1 < v.points.size(); ++k) p.segments.emplace_back(v.points[k], v.points[k + 1]);
          if (v.points.size() == 1) p.points.push_back(v.points.front());
        } else if constexpr (std::is_same_v<T, geom::Polygon>) {
          for (std::size_t k = 0; k + 1 < v.ring.size(); ++k) p.segments.emplace_back(v.ring[k], v.ring[k + 1]);
          p.rings.push_back(v.ring);
        } else if constexpr (std::is_same_v<T, geom::Rectangle>) {
          const std::vector<Point> ring{{v.xmin, v.ymin}, {v.xmax, v.ymin}, {v.xmax, v.ymax}, {v.xmin, v.ymax},
                                        {v.xmin, v.ymin}};
          if (v.width() > 0 && v.height() > 0) {
            for (std::size_t k = 0; k + 1 < ring.size(); ++k) p.segments.emplace_back(ring[k], ring[k + 1]);
            p.rings.push_back(ring);
          } else if (v.width() > 0 || v.height() > 0) {
            p.segments.emplace_back(Point{v.xmin, v.ymin}, Point{v.xmax, v.ymax});
          } else {
            p.points.push_back({v.xmin, v.ymin});
          }
        } else {
          for (const geom::Geometry& m : v.members) flatten(m, p);
        }
      },
      g.variant());
}

// Parameter range of the segment inside the closed rectangle (Liang-Barsky).
std::optional<std::pair<double, double>> clip(Point a, Point b, const Rectangle& r) {
  double t0 = 0, t1 = 1;
  const double dx = b.x - a.x, dy = b.y - a.y;
  auto edge = [&](double p, double q) {
    if (p == 0) return q >= 0;
    const double t = q / p;
    if (p < 0) {
      if (t > t1) return false;
      t0 = std::max(t0, t);
    } else {
      if (t < t0) return false;
      t1 = std::min(t1, t);
    }
    return true;
  };
  if (edge(-dx, a.x - r.xmin) && edge(dx, r.xmax - a.x) && edge(-dy, a.y - r.ymin) && edge(dy, r.ymax - a.y))
    return std::pair{t0, t1};
  return std::nullopt;
}

bool strictlyInside(Point p, const Rectangle& r) {
  return r.xmin < p.x && p.x < r.xmax && r.ymin < p.y && p.y < r.ymax;
}

bool closedInside(Point p, const Rectangle& r) {
  return r.xmin <= p.x && p.x <= r.xmax && r.ymin <= p.y && p.y <= r.ymax;
}

bool segmentMeetsClosed(Point a, Point b, const Rectangle& r) { return clip(a, b, r).has_value(); }

bool segmentMeetsOpen(Point a, Point b, const Rectangle& r) {
  auto t = clip(a, b, r);
  if (!t || !(t->second > t->first)) return false;
  const double tm = (t->first + t->second) / 2;
  return strictlyInside(Point{a.x + tm * (b.x - a.x), a.y + tm * (b.y - a.y)}, r);
}

// Even-odd test; boundary points may go either way, callers do not rely on it.
bool insideRing(Point p, const std::vector<Point>& ring) {
  bool in = false;
  for (std::size_t k = 0, m = ring.size() - 1; k < ring.size(); m = k++) {
    const Point& a = ring[k];
    const Point& b = ring[m];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

struct IndexRange {
  std::size_t i0, i1, j0, j1;  // inclusive
  bool empty;
};

// Cells whose closed rectangles may meet [xmin,xmax]x[ymin,ymax].
IndexRange candidates(const Raster& r, double xmin, double ymin, double xmax, double ymax) {
  const Rectangle d = r.domainRect();
  if (xmax < d.xmin || xmin > d.xmax || ymax < d.ymin || ymin > d.ymax) return {0, 0, 0, 0, true};
  auto lo = [](double v, double origin, double size, std::size_t n) {
    const double k = std::floor((v - origin) / size) - 1;
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(n - 1)));
  };
  auto hi = [](double v, double origin, double size, std::size_t n) {
    const double k = std::floor((v - origin) / size) + 1;
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(n - 1)));
  };
  return {lo(xmin, r.originX(), r.cellWidth(), r.nCols()), hi(xmax, r.originX(), r.cellWidth(), r.nCols()),
          lo(ymin, r.originY(), r.cellHeight(), r.nRows()), hi(ymax, r.originY(), r.cellHeight(), r.nRows()),
          false};
}

template <class Fn>
void forRange(const IndexRange& range, Fn fn) {
  if (range.empty) return;
  for (std::size_t j = range.j0; j <= range.j1; ++j)
    for (std::size_t i = range.i0; i <= range.i1; ++i) fn(i, j);
}

// Flags for cells that meet g: open cells when `interior`, closed otherwise.
std::vector<bool> markCells(const Raster& r, const geom::Geometry& g, bool interior) {
  Primitives prims;
  flatten(g, prims);
  std::vector<bool> hit(r.size(), false);
  auto mark = [&](std::size_t i, std::size_t j) { hit[j * r.nCols() + i] = true; };

  for (const Point& p : prims.points) {
    if (interior) {
      if (auto idx = r.cellIndexAt(p.x, p.y)) mark(idx->first, idx->second);
    } else {
      forRange(candidates(r, p.x, p.y, p.x, p.y), [&](std::size_t i, std::size_t j) {
        if (closedInside(p, r.cellRect(i, j))) mark(i, j);
      });
    }
  }
  for (const auto& [a, b] : prims.segments) {
    forRange(candidates(r, std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)),
             [&](std::size_t i, std::size_t j) {
               if (hit[j * r.nCols() + i]) return;
               const Rectangle cell = r.cellRect(i, j);
               if (interior ? segmentMeetsOpen(a, b, cell) : segmentMeetsClosed(a, b, cell)) mark(i, j);
             });
  }
  // Cells not crossed by any boundary are either wholly inside an area or
  // wholly outside; their centre decides.
  for (const auto& ring : prims.rings) {
    double xmin = ring[0].x, xmax = ring[0].x, ymin = ring[0].y, ymax = ring[0].y;
    for (const Point& p : ring) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    forRange(candidates(r, xmin, ymin, xmax, ymax), [&](std::size_t i, std::size_t j) {
      if (!hit[j * r.nCols() + i] && insideRing(r.cellCenter(i, j), ring)) mark(i, j);
    });
  }
  return hit;
}

}  // namespace

std::vector<bool> cellsOverlapping(const Raster& r, const geom::Geometry& g) { return markCells(r, g, true); }

bool validRegionIntersects(const Raster& r, const geom::Geometry& g) {
  const std::vector<bool> hit = markCells(r, g, false);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (hit[k] && !r.scale().isNodata(r.values()[k])) return true;
  return false;
}

bool validRegionIntersects(const Raster& a, const Raster& b) {
  for (std::size_t j = 0; j < a.nRows(); ++j) {
    for (std::size_t i = 0; i < a.nCols(); ++i) {
      if (a.isNodataAt(i, j)) continue;
      const Rectangle c = a.cellRect(i, j);
      bool found = false;
      forRange(candidates(b, c.xmin, c.ymin, c.xmax, c.ymax), [&](std::size_t bi, std::size_t bj) {
        if (found || b.isNodataAt(bi, bj)) return;
        const Rectangle d = b.cellRect(bi, bj);
        if (c.xmin <= d.xmax && d.xmin <= c.xmax && c.ymin <= d.ymax && d.ymin <= c.ymax) found = true;
      });
      if (found) return true;
    }
  }
  return false;
}

namespace {

Raster keepWhere(const Raster& r, const std::vector<bool>& flags, bool keep) {
  std::vector<double> out(r.values());
  for (std::size_t k = 0; k < out.size(); ++k)
    if (flags[k] != keep) out[k] = r.nodata();
  return r.withValues(std::move(out));
}

bool sameGrid(const Raster& a, const Raster& b) {
  auto close = [](double x, double y, double scale) { return std::abs(x - y) <= 1e-9 * scale; };
  return a.nCols() == b.nCols() && a.nRows() == b.nRows() &&
         close(a.cellWidth(), b.cellWidth(), a.cellWidth()) && close(a.cellHeight(), b.cellHeight(), a.cellHeight()) &&
         close(a.originX(), b.originX(), a.cellWidth()) && close(a.originY(), b.originY(), a.cellHeight());
}

}  // namespace

Raster rasterIntersection(const Raster& r, const geom::Geometry& g) {
  return keepWhere(r, cellsOverlapping(r, g), true);
}

Raster rasterIntersection(const Raster& r, const Raster& other) {
  return rasterIntersection(r, domainGeometry(other));
}

Raster rasterUnion(const Raster& r, const geom::Geometry& g) {
  return keepWhere(r, cellsOverlapping(r, g), false);
}

Raster rasterUnion(const Raster& a, const Raster& b) {
  if (!sameGrid(a, b)) throw ValidationError("rasterUnion of two rasters needs identical grids");
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double va = a.values()[k], vb = b.values()[k];
    if (!a.scale().isNodata(va)) out[k] = va;
    else if (!b.scale().isNodata(vb)) out[k] = avoidNodata(vb, a.scale());
    else out[k] = a.nodata();
  }
  return a.withValues(std::move(out));
}

Raster geom2raster(const geom::Geometry& g, double value, double nCols, double nRows) {
  auto count = [](double v, const char* what) {
    if (!(v >= 1) || v != std::floor(v) || v > 1e7)
      throw ValidationError(std::string(what) + " must be a positive integer");
    return static_cast<std::size_t>(v);
  };
  const std::size_t cols = count(nCols, "column count"), rows = count(nRows, "row count");
  if (!std::isfinite(value)) throw ValidationError("geom2raster value must be finite");
  const Rectangle box = geom::buffer(g, 1, vocab::kUomMeter);
  Scale scale;
  const double cell = avoidNodata(value, scale);
  Raster grid(box.xmin, box.ymin, box.width() / static_cast<double>(cols), box.height() / static_cast<double>(rows),
              cols, rows, std::vector<double>(cols * rows, scale.nodata), scale);
  const std::vector<bool> hit = cellsOverlapping(grid, g);
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = hit[k] ? cell : scale.nodata;
  return grid.withValues(std::move(out));
}

Raster rescale(const Raster& r, std::size_t nCols, std::size_t nRows) {
  if (nCols == 0 || nRows == 0) throw ValidationError("rescale needs positive dimensions");
  if (nCols == r.nCols() && nRows == r.nRows()) return r;
  const Rectangle d = r.domainRect();
  const double cw = d.width() / static_cast<double>(nCols);
  const double ch = d.height() / static_cast<double>(nRows);
  std::vector<double> out(nCols * nRows);
  for (std::size_t j = 0; j < nRows; ++j) {
    for (std::size_t i = 0; i < nCols; ++i) {
      const double x = d.xmin + (static_cast<double>(i) + 0.5) * cw;
      const double y = d.ymin + (static_cast<double>(j) + 0.5) * ch;
      auto idx = r.cellIndexAt(x, y);
      out[j * nCols + i] = idx ? r.at(idx->first, idx->second) : r.nodata();
    }
  }
  return Raster(r.originX(), r.originY(), cw, ch, nCols, nRows, std::move(out), r.scale());
}

geom::Geometry toGeometry(const Spatial& s) {
  if (const auto* r = std::get_if<const Raster*>(&s)) return domainGeometry(**r);
  return *std::get<const geom::Geometry*>(s);
}

bool rasterRelation(RasterRelation rel, const Spatial& a, const Spatial& b, double d) {
  if (rel == RasterRelation::EqualsContent) {
    const auto* ra = std::get_if<const Raster*>(&a);
    const auto* rb = std::get_if<const Raster*>(&b);
    if (!ra || !rb) throw TypeError("rasterEqualsContent needs two rasters");
    return rasterValEq(**ra, **rb);
  }
  const geom::Geometry ga = toGeometry(a), gb = toGeometry(b);
  switch (rel) {
    case RasterRelation::CoveredBy:
    case RasterRelation::Within: return geom::covers(gb, ga);
    case RasterRelation::Overlaps: return geom::overlaps(ga, gb);
    case RasterRelation::Touches: return geom::touches(ga, gb);
    case RasterRelation::Equals: return geom::equals(ga, gb);
    case RasterRelation::WithinDistance: return geom::distance(ga, gb) <= d;
    case RasterRelation::EqualsContent: break;
  }
  return false;
}

}  // namespace rastergraph::raster
