#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "rastergraph/error.hpp"
#include "rastergraph/evaluator.hpp"
#include "rastergraph/raster_io.hpp"
#include "rastergraph/vocab.hpp"

namespace rastergraph::eval {

namespace {

bool isNumericType(const std::string& datatype) {
  static const std::set<std::string, std::less<>> kNumeric = [] {
    std::set<std::string, std::less<>> s;
    for (const char* local : {"integer", "decimal", "double", "float", "long", "int", "short", "byte",
                              "nonNegativeInteger", "nonPositiveInteger", "positiveInteger", "negativeInteger",
                              "unsignedLong", "unsignedInt", "unsignedShort", "unsignedByte"})
      s.insert(std::string(vocab::kXsd) + local);
    return s;
  }();
  return kNumeric.contains(datatype);
}

std::optional<double> parseXsdNumber(std::string_view s) {
  if (s == "INF" || s == "+INF") return std::numeric_limits<double>::infinity();
  if (s == "-INF") return -std::numeric_limits<double>::infinity();
  if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;  // "inf"/"nan" spellings are not xsd
  return v;
}

std::optional<double> termNumber(const rdf::Term& t) {
  if (!t.isLiteral() || !isNumericType(t.datatype())) return std::nullopt;
  return parseXsdNumber(t.value());
}

std::string shortest(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "INF" : "-INF";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

const char* kindName(const Value& v) {
  switch (v.index()) {
    case 0: return "error";
    case 1: return "term";
    case 2: return "number";
    case 3: return "boolean";
    case 4: return "geometry";
    case 5: return "raster";
    default: return "list";
  }
}

bool isRasterDatatype(const std::string& dt) {
  return dt == vocab::kCovJsonLiteral || dt == vocab::kRasterHexWkbLiteral;
}

}  // namespace

double Coercer::number(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* t = std::get_if<rdf::Term>(&v)) {
    if (auto n = termNumber(*t)) return *n;
    throw TypeError("not a number: " + t->toNTriples().substr(0, 80));
  }
  throw TypeError(std::string("expected a number, got a ") + kindName(v));
}

std::optional<rdf::Term> Coercer::resolveLiteral(const rdf::Term& resource, bool wantRaster) {
  auto& cache = wantRaster ? rasterOf_ : geometryOf_;
  if (auto it = cache.find(resource); it != cache.end()) return it->second;
  std::optional<rdf::Term> found;
  auto first = [&](const rdf::Term& s, std::string_view p) -> std::optional<rdf::Term> {
    for (const auto& o : graph_->objects(s, rdf::Term::iri(std::string(p))))
      if (o.isLiteral()) return o;
    return std::nullopt;
  };
  if (wantRaster) {
    found = first(resource, vocab::kAsCoverageJson);
    for (std::string_view link : {vocab::kHasCoverage, vocab::kAsCoverage}) {
      if (found) break;
      for (const auto& cov : graph_->objects(resource, rdf::Term::iri(std::string(link)))) {
        if ((found = first(cov, vocab::kAsCoverageJson))) break;
      }
    }
  } else {
    found = first(resource, vocab::kAsWkt);
    if (!found) {
      for (const auto& g : graph_->objects(resource, rdf::Term::iri(std::string(vocab::kHasGeometry)))) {
        if ((found = first(g, vocab::kAsWkt))) break;
      }
    }
  }
  cache.emplace(resource, found);
  return found;
}

RasterPtr Coercer::raster(const Value& v) {
  if (const auto* r = std::get_if<RasterPtr>(&v)) return *r;
  const auto* t = std::get_if<rdf::Term>(&v);
  if (!t) throw TypeError(std::string("expected a raster, got a ") + kindName(v));
  if (auto it = parsed_.find(*t); it != parsed_.end()) {
    if (const auto* r = std::get_if<RasterPtr>(&it->second)) return *r;
  }
  if (t->isLiteral()) {
    if (!isRasterDatatype(t->datatype())) throw TypeError("not a raster literal: <" + t->datatype() + ">");
    RasterPtr r = std::make_shared<const raster::Raster>(t->datatype() == vocab::kCovJsonLiteral
                                                            ? raster::parseCoverageJson(t->value())
                                                            : raster::parseRasterHexWkb(t->value()));
    parsed_[*t] = r;
    return r;
  }
  if (auto lit = resolveLiteral(*t, true)) return raster(Value(*lit));
  throw TypeError(t->toNTriples() + " has no coverage");
}

bool Coercer::isRaster(const Value& v) {
  if (std::holds_alternative<RasterPtr>(v)) return true;
  const auto* t = std::get_if<rdf::Term>(&v);
  if (!t) return false;
  if (t->isLiteral()) return isRasterDatatype(t->datatype());
  if (resolveLiteral(*t, false)) return false;
  return resolveLiteral(*t, true).has_value();
}

GeometryPtr Coercer::geometry(const Value& v) {
  if (const auto* g = std::get_if<GeometryPtr>(&v)) return *g;
  if (const auto* r = std::get_if<RasterPtr>(&v)) return std::make_shared<const geom::Geometry>(raster::domainGeometry(**r));
  const auto* t = std::get_if<rdf::Term>(&v);
  if (!t) throw TypeError(std::string("expected a geometry, got a ") + kindName(v));
  if (auto it = parsed_.find(*t); it != parsed_.end()) {
    if (const auto* g = std::get_if<GeometryPtr>(&it->second)) return *g;
  }
  if (t->isLiteral()) {
    if (isRasterDatatype(t->datatype())) return geometry(Value(raster(v)));
    if (t->datatype() != vocab::kWktLiteral) throw TypeError("not a WKT literal: <" + t->datatype() + ">");
    GeometryPtr g = std::make_shared<const geom::Geometry>(geom::parseWkt(t->value()));
    parsed_[*t] = g;
    return g;
  }
  if (auto lit = resolveLiteral(*t, false)) return geometry(Value(*lit));
  if (auto lit = resolveLiteral(*t, true)) return geometry(Value(*lit));
  throw TypeError(t->toNTriples() + " has no geometry");
}

std::variant<RasterPtr, GeometryPtr> Coercer::spatial(const Value& v) {
  if (isRaster(v)) return raster(v);
  return geometry(v);
}

std::string Coercer::iri(const Value& v) {
  const auto* t = std::get_if<rdf::Term>(&v);
  if (!t || !t->isIri()) throw TypeError("expected an IRI");
  return t->value();
}

bool Coercer::boolean(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  if (const auto* d = std::get_if<double>(&v)) return *d != 0 && !std::isnan(*d);
  if (const auto* t = std::get_if<rdf::Term>(&v)) {
    if (t->isLiteral()) {
      if (t->datatype() == vocab::kXsdBoolean) {
        if (t->value() == "true" || t->value() == "1") return true;
        if (t->value() == "false" || t->value() == "0") return false;
        throw TypeError("malformed boolean");
      }
      if (isNumericType(t->datatype())) {
        auto n = termNumber(*t);
        if (!n) throw TypeError("malformed number");
        return *n != 0 && !std::isnan(*n);
      }
      if (t->datatype() == vocab::kXsdString || t->datatype() == vocab::kLangString) return !t->value().empty();
    }
  }
  throw TypeError(std::string("no boolean value for a ") + kindName(v));
}

rdf::Term Coercer::toTerm(const Value& v) {
  if (const auto* t = std::get_if<rdf::Term>(&v)) return *t;
  if (const auto* d = std::get_if<double>(&v)) return rdf::Term::literal(shortest(*d), std::string(vocab::kXsdDouble));
  if (const auto* b = std::get_if<bool>(&v))
    return rdf::Term::literal(*b ? "true" : "false", std::string(vocab::kXsdBoolean));
  if (const auto* g = std::get_if<GeometryPtr>(&v)) {
    if (auto it = termsByObject_.find(g->get()); it != termsByObject_.end()) return it->second;
    rdf::Term t = rdf::Term::literal(geom::toWkt(**g), std::string(vocab::kWktLiteral));
    parsed_[t] = *g;
    termsByObject_.emplace(g->get(), t);
    return t;
  }
  if (const auto* r = std::get_if<RasterPtr>(&v)) {
    if (auto it = termsByObject_.find(r->get()); it != termsByObject_.end()) return it->second;
    rdf::Term t = rdf::Term::literal(raster::writeCoverageJson(**r), std::string(vocab::kCovJsonLiteral));
    parsed_[t] = *r;
    termsByObject_.emplace(r->get(), t);
    return t;
  }
  throw TypeError(std::string("a ") + kindName(v) + " has no RDF term");
}

// ---- comparison ---------------------------------------------------------------

double parseDateTime(std::string_view s) {
  auto fail = [&]() -> double { throw ValidationError("malformed xsd:dateTime '" + std::string(s) + "'"); };
  auto digits = [&](std::size_t pos, std::size_t n) -> long long {
    if (pos + n > s.size()) fail();
    long long v = 0;
    for (std::size_t k = pos; k < pos + n; ++k) {
      if (s[k] < '0' || s[k] > '9') fail();
      v = v * 10 + (s[k] - '0');
    }
    return v;
  };
  std::size_t p = 0;
  bool negativeYear = false;
  if (!s.empty() && s[0] == '-') {
    negativeYear = true;
    p = 1;
  }
  std::size_t yearEnd = s.find('-', p);
  if (yearEnd == std::string_view::npos || yearEnd - p < 4) fail();
  long long year = digits(p, yearEnd - p);
  if (negativeYear) year = -year;
  p = yearEnd + 1;
  const long long month = digits(p, 2);
  if (s.size() <= p + 2 || s[p + 2] != '-') fail();
  const long long day = digits(p + 3, 2);
  p += 5;
  if (s.size() <= p || s[p] != 'T') fail();
  const long long hour = digits(p + 1, 2);
  if (s.size() <= p + 3 || s[p + 3] != ':') fail();
  const long long minute = digits(p + 4, 2);
  if (s.size() <= p + 6 || s[p + 6] != ':') fail();
  double second = static_cast<double>(digits(p + 7, 2));
  p += 9;
  if (p < s.size() && s[p] == '.') {
    std::size_t q = p + 1;
    double scale = 0.1;
    while (q < s.size() && s[q] >= '0' && s[q] <= '9') {
      second += (s[q] - '0') * scale;
      scale /= 10;
      ++q;
    }
    if (q == p + 1) fail();
    p = q;
  }
  long long offsetMinutes = 0;
  if (p < s.size()) {
    if (s[p] == 'Z') {
      ++p;
    } else if (s[p] == '+' || s[p] == '-') {
      const long long sign = s[p] == '-' ? -1 : 1;
      const long long oh = digits(p + 1, 2);
      if (s.size() <= p + 3 || s[p + 3] != ':') fail();
      const long long om = digits(p + 4, 2);
      if (oh > 14 || om > 59) fail();
      offsetMinutes = sign * (oh * 60 + om);
      p += 6;
    } else {
      fail();
    }
  }
  if (p != s.size()) fail();
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 24 || minute > 59 || second >= 61) fail();
  // Days from civil (proleptic Gregorian).
  const long long y = year - (month <= 2 ? 1 : 0);
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const long long yoe = y - era * 400;
  const long long mp = (month + 9) % 12;
  const long long doy = (153 * mp + 2) / 5 + day - 1;
  const long long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  const long long days = era * 146097 + doe - 719468;
  return static_cast<double>(days) * 86400.0 + static_cast<double>(hour * 3600 + minute * 60 - offsetMinutes * 60) +
         second;
}

namespace {

template <class T>
Value ordered(query::Expression::CompareOp op, const T& a, const T& b) {
  using Op = query::Expression::CompareOp;
  switch (op) {
    case Op::Eq: return a == b;
    case Op::Ne: return !(a == b);
    case Op::Lt: return a < b;
    case Op::Gt: return b < a;
    case Op::Le: return !(b < a);
    case Op::Ge: return !(a < b);
  }
  return ErrorValue{"bad operator"};
}

std::optional<double> numberOf(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* t = std::get_if<rdf::Term>(&v)) return termNumber(*t);
  return std::nullopt;
}

std::optional<bool> boolOf(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  if (const auto* t = std::get_if<rdf::Term>(&v); t && t->isLiteral() && t->datatype() == vocab::kXsdBoolean) {
    if (t->value() == "true" || t->value() == "1") return true;
    if (t->value() == "false" || t->value() == "0") return false;
  }
  return std::nullopt;
}

}  // namespace

Value compareValues(query::Expression::CompareOp op, const Value& a, const Value& b, Coercer& c) {
  using Op = query::Expression::CompareOp;
  if (isError(a)) return a;
  if (isError(b)) return b;
  const auto na = numberOf(a), nb = numberOf(b);
  if (na && nb) {
    if (std::isnan(*na) || std::isnan(*nb)) return op == Op::Ne;
    return ordered(op, *na, *nb);
  }
  if (const auto ba = boolOf(a), bb = boolOf(b); ba && bb) return ordered(op, *ba, *bb);
  const auto* ta = std::get_if<rdf::Term>(&a);
  const auto* tb = std::get_if<rdf::Term>(&b);
  if (ta && tb) {
    if (ta->isLiteral() && tb->isLiteral()) {
      if (ta->datatype() == vocab::kXsdDateTime && tb->datatype() == vocab::kXsdDateTime) {
        try {
          return ordered(op, parseDateTime(ta->value()), parseDateTime(tb->value()));
        } catch (const Error& e) {
          return ErrorValue{e.what()};
        }
      }
      const bool sa = ta->datatype() == vocab::kXsdString, sb = tb->datatype() == vocab::kXsdString;
      if (sa && sb) return ordered(op, ta->value(), tb->value());
    }
    if (op == Op::Eq) return *ta == *tb;
    if (op == Op::Ne) return !(*ta == *tb);
    return ErrorValue{"terms are not ordered"};
  }
  if (op == Op::Eq || op == Op::Ne) {
    // Geometry and raster values compare through their RDF terms.
    try {
      const bool same = c.toTerm(a) == c.toTerm(b);
      return op == Op::Eq ? same : !same;
    } catch (const Error& e) {
      return ErrorValue{e.what()};
    }
  }
  return ErrorValue{"incomparable values"};
}

}  // namespace rastergraph::eval
