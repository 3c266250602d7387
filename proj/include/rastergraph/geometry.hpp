#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rastergraph::geom {

/// Tolerance for coincidence tests and for dropping zero-area slivers.
inline constexpr double kEpsilon = 1e-9;

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct LineString {
  std::vector<Point> points;
  friend bool operator==(const LineString&, const LineString&) = default;
};

/// A single closed ring, interior included. No holes.
struct Polygon {
  std::vector<Point> ring;  // first == last
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct Rectangle {
  double xmin = 0;
  double ymin = 0;
  double xmax = 0;
  double ymax = 0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

class Geometry;

struct GeometryCollection {
  std::vector<Geometry> members;
  friend bool operator==(const GeometryCollection&, const GeometryCollection&);
};

/// Tagged union of the supported planar geometries.
///
/// Constructors take the value as given. The named factories (and parseWkt)
/// validate and throw ValidationError: a LineString needs two distinct
/// points, a Polygon a closed, non-self-intersecting ring with unique
/// vertices and non-zero area, a Rectangle xmin <= xmax and ymin <= ymax.
class Geometry {
 public:
  using Variant = std::variant<Point, LineString, Polygon, Rectangle, GeometryCollection>;

  Geometry() : v_(GeometryCollection{}) {}
  Geometry(Point p) : v_(p) {}
  Geometry(LineString l) : v_(std::move(l)) {}
  Geometry(Polygon p) : v_(std::move(p)) {}
  Geometry(Rectangle r) : v_(r) {}
  Geometry(GeometryCollection c) : v_(std::move(c)) {}

  static Geometry point(double x, double y) { return Geometry(Point{x, y}); }
  static Geometry rectangle(double xmin, double ymin, double xmax, double ymax);
  static Geometry polygon(std::vector<Point> ring);
  static Geometry lineString(std::vector<Point> points);
  static Geometry empty() { return Geometry(GeometryCollection{}); }

  const Variant& variant() const noexcept { return v_; }
  template <class T>
  bool is() const noexcept { return std::holds_alternative<T>(v_); }
  template <class T>
  const T& as() const { return std::get<T>(v_); }

  /// True for collections without any (recursively) non-empty member.
  bool isEmpty() const;
  /// 0 for points, 1 for lines, 2 for areas, -1 for empty; collections report
  /// their highest member dimension.
  int dimension() const;

  /// Structural equality; use geom::equals for point-set equality.
  friend bool operator==(const Geometry&, const Geometry&) = default;

 private:
  Variant v_;
};

/// True if the polygon ring is closed, has unique vertices, non-zero area and
/// no two non-adjacent edges touch.
bool isValidRing(const std::vector<Point>& ring);

// ---- WKT --------------------------------------------------------------------

/// Parses 2D WKT: POINT, LINESTRING, POLYGON (single ring), MULTIPOINT,
/// MULTILINESTRING, MULTIPOLYGON, GEOMETRYCOLLECTION, with EMPTY forms.
/// Keywords are case-insensitive; POINT also accepts "x,y". A leading CRS IRI
/// ("<http://...> POINT(...)") is skipped.
///
/// Throws ParseError with the character offset, ValidationError for invalid
/// polygons.
Geometry parseWkt(std::string_view text);

/// WKT with shortest round-trip coordinates. Rectangles print as POLYGON.
std::string toWkt(const Geometry& g);

// ---- Set operations -----------------------------------------------------------

/// Regularized intersection: lower-dimensional slivers from area∩area are
/// dropped. Returns an empty collection when nothing remains.
Geometry intersection(const Geometry& a, const Geometry& b);
Geometry unionOf(const Geometry& a, const Geometry& b);
Geometry difference(const Geometry& a, const Geometry& b);
Geometry symDifference(const Geometry& a, const Geometry& b);

enum class SetOp { Union, Difference, SymDifference };
Geometry setOp(SetOp op, const Geometry& a, const Geometry& b);

Geometry convexHull(const Geometry& g);
/// Polygon -> its ring; open LineString -> its end points; Point -> empty.
Geometry boundary(const Geometry& g);
/// Minimal axis-aligned rectangle. Throws ValidationError for empty input.
Rectangle envelope(const Geometry& g);

/// Envelope grown by `radius` on every side; `unitIri` must be uom:meter or
/// uom:km/kilometre (x1000). Throws ValidationError on other units or a
/// negative radius.
Rectangle buffer(const Geometry& g, double radius, std::string_view unitIri);

// ---- Metrics ------------------------------------------------------------------

/// Minimum Euclidean distance; 0 when the geometries intersect. Throws
/// ValidationError when either side is empty.
double distance(const Geometry& a, const Geometry& b);
/// Area of the areal part; lines and points contribute 0, overlapping
/// collection members are counted once.
double area(const Geometry& g);

// ---- Predicates ---------------------------------------------------------------

bool intersects(const Geometry& a, const Geometry& b);
bool disjoint(const Geometry& a, const Geometry& b);
/// No point of b lies outside a.
bool covers(const Geometry& a, const Geometry& b);
/// pointset(b) ⊆ pointset(a).
bool contains(const Geometry& a, const Geometry& b);
/// pointset(a) ⊆ pointset(b).
bool within(const Geometry& a, const Geometry& b);
bool equals(const Geometry& a, const Geometry& b);
/// Same dimension, interiors meet, neither covers the other.
bool overlaps(const Geometry& a, const Geometry& b);
/// They intersect but only on boundaries.
bool touches(const Geometry& a, const Geometry& b);
/// Some but not all interior points shared, with a lower-dimensional meet.
bool crosses(const Geometry& a, const Geometry& b);

enum class Predicate { Equals, Intersects, Disjoint, Contains, Within, Covers, Overlaps, Touches, Crosses };
bool sfPredicate(Predicate pred, const Geometry& a, const Geometry& b);

/// Closed point-in-geometry test (boundary points are members).
bool containsPoint(const Geometry& g, Point p);

}  // namespace rastergraph::geom
