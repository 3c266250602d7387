#include "rastergraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/geometry/geometries/multi_linestring.hpp>
#include <boost/geometry/geometries/multi_point.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "rastergraph/error.hpp"
#include "rastergraph/vocab.hpp"

namespace bg = boost::geometry;

namespace rastergraph::geom {

bool operator==(const GeometryCollection& a, const GeometryCollection& b) {
  return a.members == b.members;
}

// ---- validation ---------------------------------------------------------------

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool onSegment(Point p, Point q, Point r) {
  return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) && std::min(p.y, r.y) <= q.y &&
         q.y <= std::max(p.y, r.y);
}

int orientation(Point a, Point b, Point c) {
  const double v = cross(a, b, c);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

// Closed segment intersection (touching counts).
bool segmentsIntersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && onSegment(p1, q1, p2)) return true;
  if (o2 == 0 && onSegment(p1, q2, p2)) return true;
  if (o3 == 0 && onSegment(q1, p1, q2)) return true;
  if (o4 == 0 && onSegment(q1, p2, q2)) return true;
  return false;
}

double signedRingArea(const std::vector<Point>& ring) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i)
    s += ring[i].x * ring[i + 1].y - ring[i + 1].x * ring[i].y;
  return s / 2;
}

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

bool isValidRing(const std::vector<Point>& ring) {
  if (ring.size() < 4 || ring.front() != ring.back()) return false;
  if (!std::all_of(ring.begin(), ring.end(), finite)) return false;
  const std::size_t n = ring.size() - 1;  // distinct vertices
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (ring[i] == ring[j]) return false;
  if (std::abs(signedRingArea(ring)) <= 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share their common vertex: reject folds back
        // along the same line.
        const Point a = ring[i], b = ring[i + 1], c = ring[j + 1];
        const Point shared = (j == i + 1) ? b : a;
        const Point other1 = (j == i + 1) ? a : b;
        const Point other2 = (j == i + 1) ? c : ring[j];
        if (orientation(other1, shared, other2) == 0 &&
            ((other2.x - shared.x) * (other1.x - shared.x) + (other2.y - shared.y) * (other1.y - shared.y)) > 0)
          return false;
        continue;
      }
      if (segmentsIntersect(ring[i], ring[i + 1], ring[j], ring[j + 1])) return false;
    }
  }
  return true;
}

Geometry Geometry::rectangle(double xmin, double ymin, double xmax, double ymax) {
  if (!(std::isfinite(xmin) && std::isfinite(ymin) && std::isfinite(xmax) && std::isfinite(ymax)))
    throw ValidationError("rectangle coordinates must be finite");
  if (xmin > xmax || ymin > ymax) throw ValidationError("rectangle requires xmin <= xmax and ymin <= ymax");
  return Geometry(Rectangle{xmin, ymin, xmax, ymax});
}

Geometry Geometry::polygon(std::vector<Point> ring) {
  if (!isValidRing(ring))
    throw ValidationError("invalid polygon: ring must be closed, simple and non-degenerate");
  return Geometry(Polygon{std::move(ring)});
}

Geometry Geometry::lineString(std::vector<Point> points) {
  if (points.size() < 2) throw ValidationError("a LineString needs at least two points");
  if (!std::all_of(points.begin(), points.end(), finite))
    throw ValidationError("LineString coordinates must be finite");
  const bool distinct = std::any_of(points.begin(), points.end(),
                                    [&](const Point& p) { return p != points.front(); });
  if (!distinct) throw ValidationError("a LineString needs two distinct points");
  return Geometry(LineString{std::move(points)});
}

bool Geometry::isEmpty() const { return dimension() < 0; }

int Geometry::dimension() const {
  return std::visit(
      [](const auto& g) -> int {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Point>) return 0;
        else if constexpr (std::is_same_v<T, LineString>) return 1;
        else if constexpr (std::is_same_v<T, Polygon>) return 2;
        else if constexpr (std::is_same_v<T, Rectangle>) {
          if (g.width() > 0 && g.height() > 0) return 2;
          return (g.width() > 0 || g.height() > 0) ? 1 : 0;
        } else {
          int d = -1;
          for (const Geometry& m : g.members) d = std::max(d, m.dimension());
          return d;
        }
      },
      v_);
}

// ---- Boost bridge ---------------------------------------------------------------

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BLine = bg::model::linestring<BPoint>;
using BPoly = bg::model::polygon<BPoint>;
using BRing = BPoly::ring_type;
using BMultiPoint = bg::model::multi_point<BPoint>;
using BMultiLine = bg::model::multi_linestring<BLine>;
using BMultiPoly = bg::model::multi_polygon<BPoly>;

// A geometry split by dimension. Polygons are unioned into a valid
// multipolygon so the parts can be fed to Boost's relate machinery.
struct Parts {
  BMultiPoint points;
  BMultiLine lines;
  BMultiPoly polys;

  bool empty() const { return points.empty() && lines.empty() && polys.empty(); }
  int dimension() const { return !polys.empty() ? 2 : (!lines.empty() ? 1 : (!points.empty() ? 0 : -1)); }
};

BPoint toB(Point p) { return BPoint(p.x, p.y); }
Point fromB(const BPoint& p) { return Point{p.x(), p.y()}; }

BPoly rectPoly(const Rectangle& r) {
  BPoly p;
  bg::append(p.outer(), BPoint(r.xmin, r.ymin));
  bg::append(p.outer(), BPoint(r.xmin, r.ymax));
  bg::append(p.outer(), BPoint(r.xmax, r.ymax));
  bg::append(p.outer(), BPoint(r.xmax, r.ymin));
  bg::append(p.outer(), BPoint(r.xmin, r.ymin));
  return p;
}

BMultiPoly unionAll(const std::vector<BPoly>& polys) {
  BMultiPoly acc;
  for (const BPoly& p : polys) {
    if (acc.empty()) {
      acc.push_back(p);
      continue;
    }
    BMultiPoly next;
    bg::union_(acc, p, next);
    acc = std::move(next);
  }
  return acc;
}

void collect(const Geometry& g, Parts& parts, std::vector<BPoly>& polys) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Point>) {
          parts.points.push_back(toB(v));
        } else if constexpr (std::is_same_v<T, LineString>) {
          BLine l;
          for (const Point& p : v.points) bg::append(l, toB(p));
          parts.lines.push_back(std::move(l));
        } else if constexpr (std::is_same_v<T, Polygon>) {
          BPoly p;
          for (const Point& q : v.ring) bg::append(p.outer(), toB(q));
          bg::correct(p);
          polys.push_back(std::move(p));
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          if (v.width() > 0 && v.height() > 0) {
            polys.push_back(rectPoly(v));
          } else if (v.width() > 0 || v.height() > 0) {
            BLine l;
            bg::append(l, BPoint(v.xmin, v.ymin));
            bg::append(l, BPoint(v.xmax, v.ymax));
            parts.lines.push_back(std::move(l));
          } else {
            parts.points.push_back(BPoint(v.xmin, v.ymin));
          }
        } else {
          for (const Geometry& m : v.members) collect(m, parts, polys);
        }
      },
      g.variant());
}

Parts toParts(const Geometry& g) {
  Parts parts;
  std::vector<BPoly> polys;
  collect(g, parts, polys);
  if (polys.size() == 1) {
    parts.polys.push_back(std::move(polys.front()));
  } else if (!polys.empty()) {
    parts.polys = unionAll(polys);
  }
  return parts;
}

double partsTolerance(const BMultiPoly& a) {
  return kEpsilon * std::max(1.0, std::abs(bg::area(a)));
}

void dropSlivers(BMultiPoly& polys, double tolerance) {
  std::erase_if(polys, [&](const BPoly& p) { return std::abs(bg::area(p)) <= tolerance; });
}

bool pointTouchesParts(const BPoint& p, const Parts& parts) {
  if (!parts.polys.empty() && bg::intersects(p, parts.polys)) return true;
  if (!parts.lines.empty() && bg::intersects(p, parts.lines)) return true;
  for (const BPoint& q : parts.points)
    if (bg::distance(p, q) <= 0) return true;
  return false;
}

double lineLength(const BMultiLine& lines) { return lines.empty() ? 0.0 : bg::length(lines); }

BMultiLine linesMinusPolys(const BMultiLine& lines, const BMultiPoly& polys) {
  if (lines.empty() || polys.empty()) return lines;
  BMultiLine out;
  bg::difference(lines, polys, out);
  return out;
}

BMultiLine linesMinusLines(const BMultiLine& lines, const BMultiLine& other) {
  if (lines.empty() || other.empty()) return lines;
  BMultiLine out;
  bg::difference(lines, other, out);
  return out;
}

void dropShortLines(BMultiLine& lines) {
  std::erase_if(lines, [](const BLine& l) { return bg::length(l) <= kEpsilon; });
}

// Removes lower-dimensional pieces already contained in higher-dimensional
// ones and de-duplicates points.
void normalize(Parts& parts) {
  dropSlivers(parts.polys, kEpsilon);
  parts.lines = linesMinusPolys(parts.lines, parts.polys);
  dropShortLines(parts.lines);
  BMultiPoint pts;
  for (const BPoint& p : parts.points) {
    Parts higher;
    higher.polys = parts.polys;
    higher.lines = parts.lines;
    higher.points = pts;
    if (!pointTouchesParts(p, higher)) pts.push_back(p);
  }
  parts.points = std::move(pts);
}

std::vector<Point> ringFromB(const BRing& ring) {
  std::vector<Point> out;
  for (const BPoint& p : ring) {
    Point q = fromB(p);
    if (out.empty() || out.back() != q) out.push_back(q);
  }
  if (!out.empty() && out.front() != out.back()) out.push_back(out.front());
  return out;
}

// The public model has no holes: polygons with interior rings are split by a
// vertical cut through the first hole until no holes remain.
void splitHoles(const BPoly& poly, std::vector<BPoly>& out) {
  if (poly.inners().empty()) {
    out.push_back(poly);
    return;
  }
  bg::model::box<BPoint> holeBox, polyBox;
  bg::envelope(poly.inners().front(), holeBox);
  bg::envelope(poly, polyBox);
  const double cut = (holeBox.min_corner().x() + holeBox.max_corner().x()) / 2;
  const double ymin = polyBox.min_corner().y() - 1, ymax = polyBox.max_corner().y() + 1;
  for (const Rectangle& half :
       {Rectangle{polyBox.min_corner().x() - 1, ymin, cut, ymax},
        Rectangle{cut, ymin, polyBox.max_corner().x() + 1, ymax}}) {
    BMultiPoly pieces;
    bg::intersection(poly, rectPoly(half), pieces);
    for (const BPoly& piece : pieces)
      if (std::abs(bg::area(piece)) > kEpsilon) splitHoles(piece, out);
  }
}

Geometry fromParts(Parts parts) {
  normalize(parts);
  std::vector<Geometry> members;
  for (const BPoly& p : parts.polys) {
    std::vector<BPoly> pieces;
    splitHoles(p, pieces);
    for (const BPoly& piece : pieces) members.emplace_back(Polygon{ringFromB(piece.outer())});
  }
  for (const BLine& l : parts.lines) {
    LineString ls;
    for (const BPoint& p : l) {
      Point q = fromB(p);
      if (ls.points.empty() || ls.points.back() != q) ls.points.push_back(q);
    }
    if (ls.points.size() >= 2) members.emplace_back(std::move(ls));
  }
  for (const BPoint& p : parts.points) members.emplace_back(fromB(p));
  if (members.size() == 1) return std::move(members.front());
  return Geometry(GeometryCollection{std::move(members)});
}

template <class A, class B>
bool anyIntersects(const A& a, const B& b) {
  return !a.empty() && !b.empty() && bg::intersects(a, b);
}

bool partsIntersect(const Parts& a, const Parts& b) {
  return anyIntersects(a.points, b.points) || anyIntersects(a.points, b.lines) ||
         anyIntersects(a.points, b.polys) || anyIntersects(a.lines, b.points) ||
         anyIntersects(a.lines, b.lines) || anyIntersects(a.lines, b.polys) ||
         anyIntersects(a.polys, b.points) || anyIntersects(a.polys, b.lines) ||
         anyIntersects(a.polys, b.polys);
}

// Does `a` cover every point of `b`? Areas are compared by the area of the
// regularized difference so floating-point slivers do not count.
bool partsCover(const Parts& a, const Parts& b) {
  if (!b.polys.empty()) {
    if (a.polys.empty()) return false;
    BMultiPoly rest;
    bg::difference(b.polys, a.polys, rest);
    if (std::abs(bg::area(rest)) > partsTolerance(b.polys)) return false;
  }
  if (!b.lines.empty()) {
    BMultiLine rest = linesMinusPolys(b.lines, a.polys);
    rest = linesMinusLines(rest, a.lines);
    if (lineLength(rest) > kEpsilon * std::max(1.0, lineLength(b.lines))) return false;
  }
  for (const BPoint& p : b.points)
    if (!pointTouchesParts(p, a)) return false;
  return true;
}

// Dimension of interior(a) ∩ interior(b): -1 (empty), 0, 1 or 2. Collections
// are evaluated part by part.
int interiorMeetDimension(const Parts& a, const Parts& b) {
  int best = -1;
  auto consider = [&](const auto& x, const auto& y) {
    if (x.empty() || y.empty()) return;
    const std::string m = bg::relation(x, y).str();
    const char c = m[0];
    if (c >= '0' && c <= '2') best = std::max(best, c - '0');
  };
  consider(a.points, b.points);
  consider(a.points, b.lines);
  consider(a.points, b.polys);
  consider(a.lines, b.points);
  consider(a.lines, b.lines);
  consider(a.lines, b.polys);
  consider(a.polys, b.points);
  consider(a.polys, b.lines);
  consider(a.polys, b.polys);
  return best;
}

}  // namespace

// ---- set operations -----------------------------------------------------------

namespace {

std::optional<Rectangle> rectOverlap(const Rectangle& a, const Rectangle& b) {
  Rectangle r{std::max(a.xmin, b.xmin), std::max(a.ymin, b.ymin), std::min(a.xmax, b.xmax),
              std::min(a.ymax, b.ymax)};
  if (r.xmin < r.xmax && r.ymin < r.ymax) return r;
  return std::nullopt;
}

bool properRect(const Geometry& g) {
  return g.is<Rectangle>() && g.as<Rectangle>().width() > 0 && g.as<Rectangle>().height() > 0;
}

}  // namespace

Geometry intersection(const Geometry& a, const Geometry& b) {
  if (properRect(a) && properRect(b)) {
    if (auto r = rectOverlap(a.as<Rectangle>(), b.as<Rectangle>())) return Geometry(*r);
    return Geometry::empty();
  }
  const Parts pa = toParts(a), pb = toParts(b);
  Parts out;
  if (!pa.polys.empty() && !pb.polys.empty()) bg::intersection(pa.polys, pb.polys, out.polys);
  auto addLines = [&](const BMultiLine& lines, const BMultiPoly& polys) {
    if (lines.empty() || polys.empty()) return;
    BMultiLine r;
    bg::intersection(lines, polys, r);
    out.lines.insert(out.lines.end(), r.begin(), r.end());
  };
  addLines(pa.lines, pb.polys);
  addLines(pb.lines, pa.polys);
  if (!pa.lines.empty() && !pb.lines.empty()) {
    BMultiLine shared;
    bg::intersection(pa.lines, pb.lines, shared);
    out.lines.insert(out.lines.end(), shared.begin(), shared.end());
    BMultiPoint crossings;
    bg::intersection(pa.lines, pb.lines, crossings);
    out.points.insert(out.points.end(), crossings.begin(), crossings.end());
  }
  for (const BPoint& p : pa.points)
    if (pointTouchesParts(p, pb)) out.points.push_back(p);
  for (const BPoint& p : pb.points)
    if (pointTouchesParts(p, pa)) out.points.push_back(p);
  return fromParts(std::move(out));
}

Geometry unionOf(const Geometry& a, const Geometry& b) {
  const Parts pa = toParts(a), pb = toParts(b);
  Parts out;
  if (pa.polys.empty()) out.polys = pb.polys;
  else if (pb.polys.empty()) out.polys = pa.polys;
  else bg::union_(pa.polys, pb.polys, out.polys);
  out.lines = pa.lines;
  for (const BLine& l : linesMinusLines(pb.lines, pa.lines)) out.lines.push_back(l);
  out.points = pa.points;
  out.points.insert(out.points.end(), pb.points.begin(), pb.points.end());
  return fromParts(std::move(out));
}

namespace {

Parts differenceParts(const Parts& pa, const Parts& pb) {
  Parts out;
  if (pb.polys.empty()) out.polys = pa.polys;
  else if (!pa.polys.empty()) bg::difference(pa.polys, pb.polys, out.polys);
  out.lines = linesMinusLines(linesMinusPolys(pa.lines, pb.polys), pb.lines);
  for (const BPoint& p : pa.points)
    if (!pointTouchesParts(p, pb)) out.points.push_back(p);
  return out;
}

}  // namespace

Geometry difference(const Geometry& a, const Geometry& b) {
  return fromParts(differenceParts(toParts(a), toParts(b)));
}

Geometry symDifference(const Geometry& a, const Geometry& b) {
  const Parts pa = toParts(a), pb = toParts(b);
  Parts ab = differenceParts(pa, pb), ba = differenceParts(pb, pa);
  Parts out;
  out.polys = ab.polys;
  out.polys.insert(out.polys.end(), ba.polys.begin(), ba.polys.end());
  out.lines = ab.lines;
  out.lines.insert(out.lines.end(), ba.lines.begin(), ba.lines.end());
  out.points = ab.points;
  out.points.insert(out.points.end(), ba.points.begin(), ba.points.end());
  return fromParts(std::move(out));
}

Geometry setOp(SetOp op, const Geometry& a, const Geometry& b) {
  switch (op) {
    case SetOp::Union: return unionOf(a, b);
    case SetOp::Difference: return difference(a, b);
    case SetOp::SymDifference: return symDifference(a, b);
  }
  return Geometry::empty();
}

namespace {

void vertices(const Geometry& g, std::vector<Point>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Point>) out.push_back(v);
        else if constexpr (std::is_same_v<T, LineString>) out.insert(out.end(), v.points.begin(), v.points.end());
        else if constexpr (std::is_same_v<T, Polygon>) out.insert(out.end(), v.ring.begin(), v.ring.end());
        else if constexpr (std::is_same_v<T, Rectangle>) {
          out.push_back({v.xmin, v.ymin});
          out.push_back({v.xmax, v.ymin});
          out.push_back({v.xmax, v.ymax});
          out.push_back({v.xmin, v.ymax});
        } else {
          for (const Geometry& m : v.members) vertices(m, out);
        }
      },
      g.variant());
}

}  // namespace

Geometry convexHull(const Geometry& g) {
  std::vector<Point> pts;
  vertices(g, pts);
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return Geometry::empty();
  if (pts.size() == 1) return Geometry(pts.front());
  const bool collinear = std::all_of(pts.begin(), pts.end(), [&](Point p) {
    return orientation(pts.front(), pts.back(), p) == 0;
  });
  if (collinear) return Geometry(LineString{{pts.front(), pts.back()}});
  BMultiPoint mp;
  for (Point p : pts) mp.push_back(toB(p));
  BPoly hull;
  bg::convex_hull(mp, hull);
  return Geometry(Polygon{ringFromB(hull.outer())});
}

Geometry boundary(const Geometry& g) {
  return std::visit(
      [](const auto& v) -> Geometry {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Point>) {
          return Geometry::empty();
        } else if constexpr (std::is_same_v<T, LineString>) {
          if (v.points.front() == v.points.back()) return Geometry::empty();
          return Geometry(GeometryCollection{{Geometry(v.points.front()), Geometry(v.points.back())}});
        } else if constexpr (std::is_same_v<T, Polygon>) {
          return Geometry(LineString{v.ring});
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          if (v.width() > 0 && v.height() > 0)
            return Geometry(LineString{{{v.xmin, v.ymin}, {v.xmax, v.ymin}, {v.xmax, v.ymax},
                                        {v.xmin, v.ymax}, {v.xmin, v.ymin}}});
          if (v.width() > 0 || v.height() > 0)
            return Geometry(GeometryCollection{{Geometry(Point{v.xmin, v.ymin}), Geometry(Point{v.xmax, v.ymax})}});
          return Geometry::empty();
        } else {
          std::vector<Geometry> members;
          for (const Geometry& m : v.members) {
            Geometry b = boundary(m);
            if (!b.isEmpty()) members.push_back(std::move(b));
          }
          if (members.size() == 1) return std::move(members.front());
          return Geometry(GeometryCollection{std::move(members)});
        }
      },
      g.variant());
}

Rectangle envelope(const Geometry& g) {
  std::vector<Point> pts;
  vertices(g, pts);
  if (pts.empty()) throw ValidationError("envelope of an empty geometry");
  Rectangle r{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (Point p : pts) {
    r.xmin = std::min(r.xmin, p.x);
    r.ymin = std::min(r.ymin, p.y);
    r.xmax = std::max(r.xmax, p.x);
    r.ymax = std::max(r.ymax, p.y);
  }
  return r;
}

Rectangle buffer(const Geometry& g, double radius, std::string_view unitIri) {
  double factor = 0;
  if (unitIri == vocab::kUomMeter) factor = 1;
  else if (unitIri == vocab::kUomKm || unitIri == vocab::kUomKilometre) factor = 1000;
  else throw ValidationError("unknown unit <" + std::string(unitIri) + ">");
  if (!(radius >= 0)) throw ValidationError("buffer radius must be non-negative");
  const double d = radius * factor;
  Rectangle r = envelope(g);
  return Rectangle{r.xmin - d, r.ymin - d, r.xmax + d, r.ymax + d};
}

double distance(const Geometry& a, const Geometry& b) {
  const Parts pa = toParts(a), pb = toParts(b);
  if (pa.empty() || pb.empty()) throw ValidationError("distance to an empty geometry");
  if (partsIntersect(pa, pb)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const auto& x, const auto& y) {
    if (!x.empty() && !y.empty()) best = std::min(best, static_cast<double>(bg::distance(x, y)));
  };
  consider(pa.points, pb.points);
  consider(pa.points, pb.lines);
  consider(pa.points, pb.polys);
  consider(pa.lines, pb.points);
  consider(pa.lines, pb.lines);
  consider(pa.lines, pb.polys);
  consider(pa.polys, pb.points);
  consider(pa.polys, pb.lines);
  consider(pa.polys, pb.polys);
  return best;
}

double area(const Geometry& g) {
  if (g.is<Rectangle>()) {
    const auto& r = g.as<Rectangle>();
    return r.width() * r.height();
  }
  if (g.is<Polygon>()) return std::abs(signedRingArea(g.as<Polygon>().ring));
  const Parts p = toParts(g);
  return p.polys.empty() ? 0.0 : std::abs(bg::area(p.polys));
}

// ---- predicates -----------------------------------------------------------------

bool intersects(const Geometry& a, const Geometry& b) {
  if (a.is<Rectangle>() && b.is<Rectangle>()) {
    const auto& r = a.as<Rectangle>();
    const auto& s = b.as<Rectangle>();
    return r.xmin <= s.xmax && s.xmin <= r.xmax && r.ymin <= s.ymax && s.ymin <= r.ymax;
  }
  return partsIntersect(toParts(a), toParts(b));
}

bool disjoint(const Geometry& a, const Geometry& b) { return !intersects(a, b); }

bool covers(const Geometry& a, const Geometry& b) { return partsCover(toParts(a), toParts(b)); }

bool contains(const Geometry& a, const Geometry& b) { return covers(a, b); }

bool within(const Geometry& a, const Geometry& b) { return covers(b, a); }

bool equals(const Geometry& a, const Geometry& b) {
  const Parts pa = toParts(a), pb = toParts(b);
  return partsCover(pa, pb) && partsCover(pb, pa);
}

bool overlaps(const Geometry& a, const Geometry& b) {
  const Parts pa = toParts(a), pb = toParts(b);
  const int d = pa.dimension();
  if (d < 0 || d != pb.dimension()) return false;
  if (interiorMeetDimension(pa, pb) != d) return false;
  return !partsCover(pa, pb) && !partsCover(pb, pa);
}

bool touches(const Geometry& a, const Geometry& b) {
  const Parts pa = toParts(a), pb = toParts(b);
  if (!partsIntersect(pa, pb)) return false;
  return interiorMeetDimension(pa, pb) < 0;
}

bool crosses(const Geometry& a, const Geometry& b) {
  const Parts pa = toParts(a), pb = toParts(b);
  const int da = pa.dimension(), db = pb.dimension();
  if (da < 0 || db < 0) return false;
  const int meet = interiorMeetDimension(pa, pb);
  if (meet < 0) return false;
  if (da != db) {
    const Parts& higher = da > db ? pa : pb;
    const Parts& lower = da > db ? pb : pa;
    return !partsCover(higher, lower);
  }
  return da == 1 && meet == 0;
}

bool sfPredicate(Predicate pred, const Geometry& a, const Geometry& b) {
  switch (pred) {
    case Predicate::Equals: return equals(a, b);
    case Predicate::Intersects: return intersects(a, b);
    case Predicate::Disjoint: return disjoint(a, b);
    case Predicate::Contains: return contains(a, b);
    case Predicate::Within: return within(a, b);
    case Predicate::Covers: return covers(a, b);
    case Predicate::Overlaps: return overlaps(a, b);
    case Predicate::Touches: return touches(a, b);
    case Predicate::Crosses: return crosses(a, b);
  }
  return false;
}

bool containsPoint(const Geometry& g, Point p) {
  if (g.is<Rectangle>()) {
    const auto& r = g.as<Rectangle>();
    return r.xmin <= p.x && p.x <= r.xmax && r.ymin <= p.y && p.y <= r.ymax;
  }
  return pointTouchesParts(toB(p), toParts(g));
}

}  // namespace rastergraph::geom
