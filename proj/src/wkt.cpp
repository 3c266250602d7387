#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "rastergraph/error.hpp"
#include "rastergraph/geometry.hpp"

namespace rastergraph::geom {

namespace {

class WktParser {
 public:
  explicit WktParser(std::string_view text) : text_(text) {}

  Geometry run() {
    skipSpace();
    if (peek() == '<') {
      while (!atEnd() && peek() != '>') ++pos_;
      if (atEnd()) fail("unterminated CRS IRI");
      ++pos_;
    }
    Geometry g = geometry();
    skipSpace();
    if (!atEnd()) fail("trailing characters after geometry");
    return g;
  }

 private:
  bool atEnd() const { return pos_ >= text_.size(); }
  char peek() const { return atEnd() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("WKT offset " + std::to_string(pos_) + ": " + message);
  }

  void skipSpace() {
    while (!atEnd() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string keyword() {
    skipSpace();
    std::string word;
    while (!atEnd() && std::isalpha(static_cast<unsigned char>(peek())))
      word += static_cast<char>(std::toupper(static_cast<unsigned char>(text_[pos_++])));
    return word;
  }

  bool tryEmpty() {
    const std::size_t save = pos_;
    if (keyword() == "EMPTY") return true;
    pos_ = save;
    return false;
  }

  void expect(char c) {
    skipSpace();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skipSpace();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  double number() {
    skipSpace();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin != end && *begin == '+') ++begin;
    double v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr == begin) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (!std::isfinite(v)) fail("coordinate must be finite");
    return v;
  }

  Point coordinate() {
    Point p;
    p.x = number();
    skipSpace();
    accept(',');  // "x,y" form
    p.y = number();
    return p;
  }

  std::vector<Point> coordinateList() {
    expect('(');
    std::vector<Point> pts{coordinate()};
    while (accept(',')) pts.push_back(coordinate());
    expect(')');
    return pts;
  }

  // A POINT body may be "(x y)" or "(x, y)".
  Point pointBody() {
    expect('(');
    Point p = coordinate();
    expect(')');
    return p;
  }

  Geometry polygonBody() {
    expect('(');
    std::vector<Point> ring = coordinateList();
    if (accept(',')) fail("polygons with holes are not supported");
    expect(')');
    return Geometry::polygon(std::move(ring));
  }

  Geometry lineBody() {
    const std::size_t at = pos_;
    std::vector<Point> pts = coordinateList();
    try {
      return Geometry::lineString(std::move(pts));
    } catch (const ValidationError& e) {
      pos_ = at;
      throw;
    }
  }

  Geometry collectionOf(std::vector<Geometry> members) {
    return Geometry(GeometryCollection{std::move(members)});
  }

  Geometry geometry() {
    const std::string kw = keyword();
    if (kw.empty()) fail("expected a geometry keyword");
    if (kw == "POINT") {
      if (tryEmpty()) return Geometry::empty();
      return Geometry(pointBody());
    }
    if (kw == "LINESTRING") {
      if (tryEmpty()) return Geometry::empty();
      return lineBody();
    }
    if (kw == "POLYGON") {
      if (tryEmpty()) return Geometry::empty();
      return polygonBody();
    }
    if (kw == "MULTIPOINT") {
      if (tryEmpty()) return Geometry::empty();
      expect('(');
      std::vector<Geometry> members;
      do {
        skipSpace();
        if (peek() == '(') members.emplace_back(pointBody());
        else members.emplace_back(coordinate());
      } while (accept(','));
      expect(')');
      return collectionOf(std::move(members));
    }
    if (kw == "MULTILINESTRING") {
      if (tryEmpty()) return Geometry::empty();
      expect('(');
      std::vector<Geometry> members{lineBody()};
      while (accept(',')) members.push_back(lineBody());
      expect(')');
      return collectionOf(std::move(members));
    }
    if (kw == "MULTIPOLYGON") {
      if (tryEmpty()) return Geometry::empty();
      expect('(');
      std::vector<Geometry> members{polygonBody()};
      while (accept(',')) members.push_back(polygonBody());
      expect(')');
      return collectionOf(std::move(members));
    }
    if (kw == "GEOMETRYCOLLECTION") {
      if (tryEmpty()) return Geometry::empty();
      expect('(');
      std::vector<Geometry> members{geometry()};
      while (accept(',')) members.push_back(geometry());
      expect(')');
      return collectionOf(std::move(members));
    }
    fail("unknown geometry type '" + kw + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void appendNumber(std::string& out, double v) {
  if (v == 0) v = 0;  // no "-0"
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void appendPoint(std::string& out, Point p) {
  appendNumber(out, p.x);
  out += ' ';
  appendNumber(out, p.y);
}

void appendList(std::string& out, const std::vector<Point>& pts) {
  out += '(';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ',';
    appendPoint(out, pts[i]);
  }
  out += ')';
}

std::vector<Point> rectRing(const Rectangle& r) {
  return {{r.xmin, r.ymin}, {r.xmax, r.ymin}, {r.xmax, r.ymax}, {r.xmin, r.ymax}, {r.xmin, r.ymin}};
}

// Body of a simple geometry, without its keyword.
void appendBody(std::string& out, const Geometry& g) {
  if (g.is<Point>()) {
    out += '(';
    appendPoint(out, g.as<Point>());
    out += ')';
  } else if (g.is<LineString>()) {
    appendList(out, g.as<LineString>().points);
  } else if (g.is<Polygon>()) {
    out += '(';
    appendList(out, g.as<Polygon>().ring);
    out += ')';
  } else if (g.is<Rectangle>()) {
    out += '(';
    appendList(out, rectRing(g.as<Rectangle>()));
    out += ')';
  }
}

const char* simpleKeyword(const Geometry& g) {
  if (g.is<Point>()) return "POINT";
  if (g.is<LineString>()) return "LINESTRING";
  return "POLYGON";
}

void appendWkt(std::string& out, const Geometry& g) {
  if (!g.is<GeometryCollection>()) {
    out += simpleKeyword(g);
    appendBody(out, g);
    return;
  }
  const auto& members = g.as<GeometryCollection>().members;
  if (members.empty()) {
    out += "GEOMETRYCOLLECTION EMPTY";
    return;
  }
  bool homogeneous = true;
  for (const Geometry& m : members) {
    if (m.is<GeometryCollection>() || std::string_view(simpleKeyword(m)) != simpleKeyword(members.front()))
      homogeneous = false;
  }
  if (homogeneous) {
    out += "MULTI";
    out += simpleKeyword(members.front());
    out += '(';
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) out += ',';
      appendBody(out, members[i]);
    }
    out += ')';
    return;
  }
  out += "GEOMETRYCOLLECTION(";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ',';
    appendWkt(out, members[i]);
  }
  out += ')';
}

}  // namespace

Geometry parseWkt(std::string_view text) { return WktParser(text).run(); }

std::string toWkt(const Geometry& g) {
  std::string out;
  appendWkt(out, g);
  return out;
}

}  // namespace rastergraph::geom
