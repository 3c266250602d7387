#include <algorithm>
#include <cmath>

#include "rastergraph/error.hpp"
#include "rastergraph/evaluator.hpp"
#include "rastergraph/raster_algebra.hpp"
#include "rastergraph/raster_io.hpp"
#include "rastergraph/vocab.hpp"

namespace rastergraph::eval {

void FunctionRegistry::add(std::string iri, Function f) {
  if (iri.empty()) throw ValidationError("function IRI must not be empty");
  if (f.minArgs > f.maxArgs) throw ValidationError("function <" + iri + ">: minArgs exceeds maxArgs");
  if (!f.impl) throw ValidationError("function <" + iri + "> has no implementation");
  functions_[std::move(iri)] = std::move(f);
}

const Function* FunctionRegistry::find(const std::string& iri) const {
  auto it = functions_.find(iri);
  return it == functions_.end() ? nullptr : &it->second;
}

std::vector<std::string> FunctionRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, f] : functions_) out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Args = std::vector<Value>;
using raster::Raster;

Value geometryValue(geom::Geometry g) { return std::make_shared<const geom::Geometry>(std::move(g)); }
Value rasterValue(Raster r) { return std::make_shared<const Raster>(std::move(r)); }

double unitFactor(Coercer& c, const Args& a, std::size_t index) {
  if (a.size() <= index) return 1.0;
  const std::string unit = c.iri(a[index]);
  if (unit == vocab::kUomMeter) return 1.0;
  if (unit == vocab::kUomKm || unit == vocab::kUomKilometre) return 1000.0;
  throw ValidationError("unsupported unit <" + unit + ">");
}

std::size_t cellCount(double v, const char* what) {
  if (!(v >= 1) || v != std::floor(v) || v > 65535) throw ValidationError(std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

raster::Spatial asSpatial(const std::variant<RasterPtr, GeometryPtr>& s) {
  if (const auto* r = std::get_if<RasterPtr>(&s)) return r->get();
  return std::get<GeometryPtr>(s).get();
}

// intersects over all four argument kinds; rasters count where they hold data.
bool spatialIntersects(Coercer& c, const Value& a, const Value& b) {
  const auto sa = c.spatial(a), sb = c.spatial(b);
  const auto* ra = std::get_if<RasterPtr>(&sa);
  const auto* rb = std::get_if<RasterPtr>(&sb);
  if (ra && rb) return raster::validRegionIntersects(**ra, **rb);
  if (ra) return raster::validRegionIntersects(**ra, *std::get<GeometryPtr>(sb));
  if (rb) return raster::validRegionIntersects(**rb, *std::get<GeometryPtr>(sa));
  return geom::intersects(*std::get<GeometryPtr>(sa), *std::get<GeometryPtr>(sb));
}

FunctionRegistry makeBuiltins() {
  FunctionRegistry reg;
  const std::string geo(vocab::kGeo), geof(vocab::kGeof), geo2(vocab::kGeo2);

  auto standard = [&](const std::string& local, Function f) {
    reg.add(geof + local, f);
    reg.add(geo + local, std::move(f));
  };

  // ---- GeoSPARQL functions ----
  standard("buffer", {2, 3, [](Coercer& c, const Args& a) -> Value {
                        const double radius = c.number(a[1]) * unitFactor(c, a, 2);
                        return geometryValue(geom::buffer(*c.geometry(a[0]), radius, vocab::kUomMeter));
                      }});
  standard("distance", {2, 3, [](Coercer& c, const Args& a) -> Value {
                          return geom::distance(*c.geometry(a[0]), *c.geometry(a[1])) / unitFactor(c, a, 2);
                        }});
  standard("area", {1, 2, [](Coercer& c, const Args& a) -> Value {
                      const double f = unitFactor(c, a, 1);
                      return geom::area(*c.geometry(a[0])) / (f * f);
                    }});
  standard("intersection", {2, 2, [](Coercer& c, const Args& a) -> Value {
                              return geometryValue(geom::intersection(*c.geometry(a[0]), *c.geometry(a[1])));
                            }});
  standard("union", {2, 2, [](Coercer& c, const Args& a) -> Value {
                       return geometryValue(geom::unionOf(*c.geometry(a[0]), *c.geometry(a[1])));
                     }});
  standard("difference", {2, 2, [](Coercer& c, const Args& a) -> Value {
                            return geometryValue(geom::difference(*c.geometry(a[0]), *c.geometry(a[1])));
                          }});
  standard("symDifference", {2, 2, [](Coercer& c, const Args& a) -> Value {
                               return geometryValue(geom::symDifference(*c.geometry(a[0]), *c.geometry(a[1])));
                             }});
  standard("convexHull", {1, 1, [](Coercer& c, const Args& a) -> Value {
                            return geometryValue(geom::convexHull(*c.geometry(a[0])));
                          }});
  standard("boundary", {1, 1, [](Coercer& c, const Args& a) -> Value {
                          return geometryValue(geom::boundary(*c.geometry(a[0])));
                        }});
  standard("envelope", {1, 1, [](Coercer& c, const Args& a) -> Value {
                          return geometryValue(geom::Geometry(geom::envelope(*c.geometry(a[0]))));
                        }});
  standard("getSRID", {1, 1, [](Coercer& c, const Args& a) -> Value {
                         c.geometry(a[0]);
                         return rdf::Term::iri(std::string(vocab::kDefaultCrs));
                       }});

  const std::pair<const char*, geom::Predicate> predicates[] = {
      {"Equals", geom::Predicate::Equals},     {"Disjoint", geom::Predicate::Disjoint},
      {"Intersects", geom::Predicate::Intersects}, {"Touches", geom::Predicate::Touches},
      {"Crosses", geom::Predicate::Crosses},   {"Within", geom::Predicate::Within},
      {"Contains", geom::Predicate::Contains}, {"Overlaps", geom::Predicate::Overlaps},
  };
  for (const auto& [name, pred] : predicates) {
    Function f{2, 2, {}};
    if (pred == geom::Predicate::Intersects) {
      f.impl = [](Coercer& c, const Args& a) -> Value { return spatialIntersects(c, a[0], a[1]); };
    } else if (pred == geom::Predicate::Disjoint) {
      f.impl = [](Coercer& c, const Args& a) -> Value { return !spatialIntersects(c, a[0], a[1]); };
    } else {
      f.impl = [pred](Coercer& c, const Args& a) -> Value {
        return geom::sfPredicate(pred, *c.geometry(a[0]), *c.geometry(a[1]));
      };
    }
    std::string lower = name;
    lower[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lower[0])));
    standard(std::string("sf") + name, f);
    standard(lower, f);
    if (pred == geom::Predicate::Intersects || pred == geom::Predicate::Equals) reg.add(geo2 + lower, f);
  }

  // ---- raster <-> geometry ----
  reg.add(geo2 + "geometryIntersection", {2, 2, [](Coercer& c, const Args& a) -> Value {
                                            return geometryValue(geom::intersection(*c.geometry(a[0]), *c.geometry(a[1])));
                                          }});
  reg.add(geo2 + "rasterIntersection", {2, 2, [](Coercer& c, const Args& a) -> Value {
                                          const auto sa = c.spatial(a[0]), sb = c.spatial(a[1]);
                                          const auto* ra = std::get_if<RasterPtr>(&sa);
                                          const auto* rb = std::get_if<RasterPtr>(&sb);
                                          if (ra && rb) return rasterValue(raster::rasterIntersection(**ra, **rb));
                                          if (ra) return rasterValue(raster::rasterIntersection(**ra, *std::get<GeometryPtr>(sb)));
                                          if (rb) return rasterValue(raster::rasterIntersection(**rb, *std::get<GeometryPtr>(sa)));
                                          throw TypeError("rasterIntersection needs a raster argument");
                                        }});
  reg.add(geo2 + "rasterUnion", {2, 2, [](Coercer& c, const Args& a) -> Value {
                                   const auto sa = c.spatial(a[0]), sb = c.spatial(a[1]);
                                   const auto* ra = std::get_if<RasterPtr>(&sa);
                                   const auto* rb = std::get_if<RasterPtr>(&sb);
                                   if (ra && rb) return rasterValue(raster::rasterUnion(**ra, **rb));
                                   if (ra) return rasterValue(raster::rasterUnion(**ra, *std::get<GeometryPtr>(sb)));
                                   if (rb) return rasterValue(raster::rasterUnion(**rb, *std::get<GeometryPtr>(sa)));
                                   throw TypeError("rasterUnion needs a raster argument");
                                 }});
  reg.add(geo2 + "raster2geom", {1, 1, [](Coercer& c, const Args& a) -> Value {
                                   return geometryValue(raster::domainGeometry(*c.raster(a[0])));
                                 }});
  reg.add(geo2 + "geom2raster", {4, 4, [](Coercer& c, const Args& a) -> Value {
                                   return rasterValue(raster::geom2raster(*c.geometry(a[0]), c.number(a[1]),
                                                                          c.number(a[2]), c.number(a[3])));
                                 }});

  // ---- map algebra ----
  const std::pair<const char*, raster::BinaryOp> binary[] = {
      {"Plus", raster::BinaryOp::Plus}, {"Subtract", raster::BinaryOp::Subtract}, {"Mult", raster::BinaryOp::Mult},
      {"Div", raster::BinaryOp::Div},   {"And", raster::BinaryOp::And},           {"Or", raster::BinaryOp::Or},
      {"Xor", raster::BinaryOp::Xor},   {"Equals", raster::BinaryOp::Equals},
  };
  const raster::ConstOp constOps[] = {raster::ConstOp::Plus, raster::ConstOp::Subtract, raster::ConstOp::Mult,
                                      raster::ConstOp::Div,  raster::ConstOp::And,      raster::ConstOp::Or,
                                      raster::ConstOp::Xor,  raster::ConstOp::Equals};
  for (std::size_t k = 0; k < std::size(binary); ++k) {
    const auto op = binary[k].second;
    const auto cop = constOps[k];
    reg.add(geo2 + "raster" + binary[k].first, {2, 2, [op](Coercer& c, const Args& a) -> Value {
                                                  return rasterValue(raster::cellwiseBinary(op, *c.raster(a[0]), *c.raster(a[1])));
                                                }});
    reg.add(geo2 + "raster" + binary[k].first + "Const",
            {2, 2, [cop](Coercer& c, const Args& a) -> Value {
               return rasterValue(raster::cellwiseBinaryConst(cop, *c.raster(a[0]), c.number(a[1])));
             }});
  }
  auto constFn = [](raster::ConstOp op) {
    return Function{2, 2, [op](Coercer& c, const Args& a) -> Value {
                      return rasterValue(raster::cellwiseBinaryConst(op, *c.raster(a[0]), c.number(a[1])));
                    }};
  };
  reg.add(geo2 + "rasterSmaller", constFn(raster::ConstOp::SmallerKeep));
  reg.add(geo2 + "rasterGreater", constFn(raster::ConstOp::GreaterKeep));
  reg.add(geo2 + "isGreater", constFn(raster::ConstOp::GreaterKeep));
  reg.add(geo2 + "rasterExp", constFn(raster::ConstOp::Exp));
  reg.add(geo2 + "rasterNot", {1, 1, [](Coercer& c, const Args& a) -> Value {
                                 return rasterValue(raster::cellwiseUnary(raster::UnaryOp::Not, *c.raster(a[0])));
                               }});
  reg.add(geo2 + "rasterInvert", {1, 1, [](Coercer& c, const Args& a) -> Value {
                                    return rasterValue(raster::cellwiseUnary(raster::UnaryOp::Invert, *c.raster(a[0])));
                                  }});

  auto aggregateFn = [](raster::AggregateOp op) {
    return Function{1, 1, [op](Coercer& c, const Args& a) -> Value { return raster::aggregate(op, *c.raster(a[0])); }};
  };
  reg.add(geo2 + "max", aggregateFn(raster::AggregateOp::Max));
  reg.add(geo2 + "rasterMax", aggregateFn(raster::AggregateOp::Max));
  reg.add(geo2 + "rasterMin", aggregateFn(raster::AggregateOp::Min));
  reg.add(geo2 + "rasterMean", aggregateFn(raster::AggregateOp::Mean));

  // ---- cell access and accessors ----
  Function cell{2, 3, [](Coercer& c, const Args& a) -> Value {
                  const RasterPtr r = c.raster(a[0]);
                  if (a.size() == 3) return raster::cellval(*r, c.number(a[1]), c.number(a[2]));
                  const GeometryPtr g = c.geometry(a[1]);
                  if (!g->is<geom::Point>()) throw TypeError("cellval needs a point");
                  return raster::cellval(*r, g->as<geom::Point>().x, g->as<geom::Point>().y);
                }};
  reg.add(geo2 + "cellval", cell);
  reg.add(geo2 + "rasterCell", cell);
  reg.add(geo2 + "cellval2", {1, 1, [](Coercer& c, const Args& a) -> Value { return raster::cellval2(*c.raster(a[0])); }});
  reg.add(geo2 + "rastervaleq", {2, 2, [](Coercer& c, const Args& a) -> Value {
                                   return raster::rasterValEq(*c.raster(a[0]), *c.raster(a[1]));
                                 }});
  reg.add(geo2 + "rasterCellWidth", {1, 1, [](Coercer& c, const Args& a) -> Value { return c.raster(a[0])->cellWidth(); }});
  reg.add(geo2 + "rasterCellHeight", {1, 1, [](Coercer& c, const Args& a) -> Value { return c.raster(a[0])->cellHeight(); }});
  reg.add(geo2 + "rasterWidth", {1, 1, [](Coercer& c, const Args& a) -> Value {
                                   return static_cast<double>(c.raster(a[0])->nCols());
                                 }});
  reg.add(geo2 + "rasterHeight", {1, 1, [](Coercer& c, const Args& a) -> Value {
                                    return static_cast<double>(c.raster(a[0])->nRows());
                                  }});
  reg.add(geo2 + "rasterEnvelope", {1, 1, [](Coercer& c, const Args& a) -> Value {
                                      return geometryValue(raster::domainGeometry(*c.raster(a[0])));
                                    }});
  Function resize{3, 3, [](Coercer& c, const Args& a) -> Value {
                    return rasterValue(raster::rescale(*c.raster(a[0]), cellCount(c.number(a[1]), "column count"),
                                                       cellCount(c.number(a[2]), "row count")));
                  }};
  reg.add(geo2 + "rasterRescale", resize);
  reg.add(geo2 + "rasterResize", resize);

  // ---- raster relations ----
  const std::pair<const char*, raster::RasterRelation> relations[] = {
      {"rasterCoveredBy", raster::RasterRelation::CoveredBy}, {"rasterOverlaps", raster::RasterRelation::Overlaps},
      {"rasterTouches", raster::RasterRelation::Touches},     {"rasterWithin", raster::RasterRelation::Within},
      {"rasterEquals", raster::RasterRelation::Equals},       {"rasterEqualsContent", raster::RasterRelation::EqualsContent},
  };
  for (const auto& [name, rel] : relations) {
    Function f{2, 2, [rel](Coercer& c, const Args& a) -> Value {
                 const auto sa = c.spatial(a[0]), sb = c.spatial(a[1]);
                 return raster::rasterRelation(rel, asSpatial(sa), asSpatial(sb));
               }};
    const std::string plain(name);
    reg.add(geo2 + "ST_" + plain, f);
    if (plain == "rasterEquals") {
      // Two rasters: the cellwise operator. Otherwise the relation.
      const Function cellwise = *reg.find(geo2 + "rasterEquals");
      reg.add(geo2 + plain, {2, 2, [cellwise, f](Coercer& c, const Args& a) -> Value {
                               if (c.isRaster(a[0]) && c.isRaster(a[1])) return cellwise.impl(c, a);
                               return f.impl(c, a);
                             }});
    } else {
      reg.add(geo2 + plain, std::move(f));
    }
  }
  Function withinDistance{3, 4, [](Coercer& c, const Args& a) -> Value {
                            const auto sa = c.spatial(a[0]), sb = c.spatial(a[1]);
                            const double d = c.number(a[2]) * unitFactor(c, a, 3);
                            return raster::rasterRelation(raster::RasterRelation::WithinDistance, asSpatial(sa),
                                                          asSpatial(sb), d);
                          }};
  reg.add(geo2 + "ST_rasterWithinDistance", withinDistance);
  reg.add(geo2 + "rasterWithinDistance", std::move(withinDistance));

  // ---- exporters ----
  reg.add(geo2 + "asCoverageJSON", {1, 1, [](Coercer& c, const Args& a) -> Value {
                                      return rdf::Term::literal(raster::writeCoverageJson(*c.raster(a[0])),
                                                                std::string(vocab::kCovJsonLiteral));
                                    }});
  reg.add(geo2 + "asRasterHexWKB", {1, 1, [](Coercer& c, const Args& a) -> Value {
                                      return rdf::Term::literal(raster::writeRasterHexWkb(*c.raster(a[0])),
                                                                std::string(vocab::kRasterHexWkbLiteral));
                                    }});
  return reg;
}

}  // namespace

const FunctionRegistry& FunctionRegistry::builtins() {
  static const FunctionRegistry registry = makeBuiltins();
  return registry;
}

}  // namespace rastergraph::eval
