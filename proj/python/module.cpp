#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rastergraph/corpus.hpp"
#include "rastergraph/error.hpp"
#include "rastergraph/evaluator.hpp"
#include "rastergraph/geometry.hpp"
#include "rastergraph/query.hpp"
#include "rastergraph/raster.hpp"
#include "rastergraph/raster_algebra.hpp"
#include "rastergraph/raster_io.hpp"
#include "rastergraph/rdf_io.hpp"
#include "rastergraph/results.hpp"
#include "rastergraph/workspace.hpp"

namespace py = pybind11;
using namespace rastergraph;
using raster::Raster;

namespace {

template <class E>
E enumByName(const std::vector<std::pair<std::string, E>>& names, const std::string& name) {
  for (const auto& [n, e] : names)
    if (n == name) return e;
  throw py::value_error("unknown operation: " + name);
}

const std::vector<std::pair<std::string, raster::BinaryOp>> kBinary = {
    {"plus", raster::BinaryOp::Plus}, {"subtract", raster::BinaryOp::Subtract},
    {"mult", raster::BinaryOp::Mult}, {"div", raster::BinaryOp::Div},
    {"and", raster::BinaryOp::And},   {"or", raster::BinaryOp::Or},
    {"xor", raster::BinaryOp::Xor},   {"equals", raster::BinaryOp::Equals}};

const std::vector<std::pair<std::string, raster::ConstOp>> kConst = {
    {"plus", raster::ConstOp::Plus},       {"subtract", raster::ConstOp::Subtract},
    {"mult", raster::ConstOp::Mult},       {"div", raster::ConstOp::Div},
    {"and", raster::ConstOp::And},         {"or", raster::ConstOp::Or},
    {"xor", raster::ConstOp::Xor},         {"equals", raster::ConstOp::Equals},
    {"exp", raster::ConstOp::Exp},         {"greater", raster::ConstOp::GreaterKeep},
    {"smaller", raster::ConstOp::SmallerKeep}};

py::dict tableToDict(const eval::ResultTable& t) {
  py::list rows;
  for (const auto& row : t.rows) {
    py::list cells;
    for (const auto& cell : row) {
      if (cell) cells.append(cell->toNTriples());
      else cells.append(py::none());
    }
    rows.append(py::tuple(cells));
  }
  py::dict d;
  d["columns"] = t.columns;
  d["rows"] = rows;
  return d;
}

geom::Geometry wkt(const std::string& text) { return geom::parseWkt(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "RDF graphs with vector geometries and raster coverages, queried with a SPARQL subset.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<TypeError>(m, "TypeError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());

  py::class_<Raster>(m, "Raster")
      .def(py::init([](double ox, double oy, double cw, double ch, std::size_t nc, std::size_t nr,
                       std::vector<double> values, double nodata, std::string unit, std::string kind) {
             raster::Scale s;
             s.nodata = nodata;
             s.unitLabel = std::move(unit);
             s.kind = raster::parseScaleKind(kind);
             return Raster(ox, oy, cw, ch, nc, nr, std::move(values), s);
           }),
           py::arg("origin_x"), py::arg("origin_y"), py::arg("cell_width"), py::arg("cell_height"),
           py::arg("n_cols"), py::arg("n_rows"), py::arg("values"), py::arg("nodata") = -9999.0,
           py::arg("unit") = "", py::arg("scale_kind") = "ratio")
      .def_property_readonly("origin_x", &Raster::originX)
      .def_property_readonly("origin_y", &Raster::originY)
      .def_property_readonly("cell_width", &Raster::cellWidth)
      .def_property_readonly("cell_height", &Raster::cellHeight)
      .def_property_readonly("n_cols", &Raster::nCols)
      .def_property_readonly("n_rows", &Raster::nRows)
      .def_property_readonly("values", &Raster::values)
      .def_property_readonly("nodata", &Raster::nodata)
      .def_property_readonly("unit", [](const Raster& r) { return r.scale().unitLabel; })
      .def_property_readonly("scale_kind",
                             [](const Raster& r) { return std::string(raster::scaleKindName(r.scale().kind)); })
      .def("at", &Raster::at, py::arg("i"), py::arg("j"))
      .def("is_nodata", &Raster::isNodataAt, py::arg("i"), py::arg("j"))
      .def("cellval", [](const Raster& r, double x, double y) { return raster::cellval(r, x, y); })
      .def("valid_values", [](const Raster& r) { return raster::cellval2(r); })
      .def("domain_wkt", [](const Raster& r) { return geom::toWkt(raster::domainGeometry(r)); })
      .def("__eq__", [](const Raster& a, const Raster& b) { return a == b; })
      .def("__repr__", [](const Raster& r) {
        return "<Raster " + std::to_string(r.nCols()) + "x" + std::to_string(r.nRows()) + ">";
      });

  m.def("read_asc", &raster::parseAscGrid, py::arg("text"));
  m.def("write_asc", &raster::writeAscGrid, py::arg("raster"));
  m.def("read_coverage_json", &raster::parseCoverageJson, py::arg("text"));
  m.def("write_coverage_json", &raster::writeCoverageJson, py::arg("raster"));
  m.def("read_hex_wkb", &raster::parseRasterHexWkb, py::arg("hex"));
  m.def("write_hex_wkb", &raster::writeRasterHexWkb, py::arg("raster"));

  m.def(
      "raster_binary",
      [](const std::string& op, const Raster& a, const Raster& b) {
        return raster::cellwiseBinary(enumByName(kBinary, op), a, b);
      },
      py::arg("op"), py::arg("r1"), py::arg("r2"));
  m.def(
      "raster_const",
      [](const std::string& op, const Raster& r, double c) {
        return raster::cellwiseBinaryConst(enumByName(kConst, op), r, c);
      },
      py::arg("op"), py::arg("raster"), py::arg("c"));
  m.def("raster_not", [](const Raster& r) { return raster::cellwiseUnary(raster::UnaryOp::Not, r); });
  m.def("raster_invert", [](const Raster& r) { return raster::cellwiseUnary(raster::UnaryOp::Invert, r); });
  m.def("raster_min", [](const Raster& r) { return raster::aggregate(raster::AggregateOp::Min, r); });
  m.def("raster_max", [](const Raster& r) { return raster::aggregate(raster::AggregateOp::Max, r); });
  m.def("raster_mean", [](const Raster& r) { return raster::aggregate(raster::AggregateOp::Mean, r); });
  m.def("raster_intersection",
        [](const Raster& r, const std::string& g) { return raster::rasterIntersection(r, wkt(g)); });
  m.def("raster_union", [](const Raster& r, const std::string& g) { return raster::rasterUnion(r, wkt(g)); });
  m.def("raster_merge", [](const Raster& a, const Raster& b) { return raster::rasterUnion(a, b); });
  m.def("rescale", &raster::rescale, py::arg("raster"), py::arg("n_cols"), py::arg("n_rows"));
  m.def(
      "geom2raster",
      [](const std::string& g, double value, double nc, double nr) { return raster::geom2raster(wkt(g), value, nc, nr); },
      py::arg("wkt"), py::arg("value"), py::arg("n_cols"), py::arg("n_rows"));

  m.def("normalize_wkt", [](const std::string& g) { return geom::toWkt(wkt(g)); });
  m.def("area", [](const std::string& g) { return geom::area(wkt(g)); });
  m.def("distance", [](const std::string& a, const std::string& b) { return geom::distance(wkt(a), wkt(b)); });
  m.def("intersects", [](const std::string& a, const std::string& b) { return geom::intersects(wkt(a), wkt(b)); });
  m.def("within", [](const std::string& a, const std::string& b) { return geom::within(wkt(a), wkt(b)); });
  m.def("intersection",
        [](const std::string& a, const std::string& b) { return geom::toWkt(geom::intersection(wkt(a), wkt(b))); });
  m.def(
      "buffer",
      [](const std::string& g, double radius, const std::string& unit) {
        return geom::toWkt(geom::Geometry(geom::buffer(wkt(g), radius, unit)));
      },
      py::arg("wkt"), py::arg("radius"), py::arg("unit") = "http://www.opengis.net/def/uom/OGC/1.0/metre");

  m.def("check_query", [](const std::string& text) { return query::toString(query::parseQuery(text)); });

  py::class_<Workspace>(m, "Workspace")
      .def(py::init<>())
      .def(py::init<std::string>(), py::arg("base_iri"))
      .def_readonly("base_iri", &Workspace::baseIri)
      .def("__len__", [](const Workspace& w) { return w.graph.size(); })
      .def("load_rdf", [](Workspace& w, const std::string& text) { return rdf::parseRdfDocumentInto(text, w.graph); })
      .def("ingest_geojson", &Workspace::ingestGeoJson, py::arg("text"), py::arg("class_iri"))
      .def("ingest_asc", &Workspace::ingestAscRaster, py::arg("text"), py::arg("class_iri"), py::arg("unit"))
      .def("load", &Workspace::load, py::arg("path"))
      .def("save", &Workspace::save, py::arg("path"))
      .def("ntriples", [](const Workspace& w) { return rdf::toNTriples(w.graph); })
      .def("query", [](const Workspace& w, const std::string& q) { return tableToDict(eval::runQuery(w.graph, q)); })
      .def("query_tsv", [](const Workspace& w, const std::string& q) { return eval::toTsv(eval::runQuery(w.graph, q)); })
      .def("query_json",
           [](const Workspace& w, const std::string& q) { return eval::toJson(eval::runQuery(w.graph, q)); });

  m.def(
      "generate_corpus",
      [](const std::filesystem::path& dir, std::size_t roads, std::size_t buildings, std::size_t elements,
         std::uint64_t seed) {
        corpus::write(corpus::generate({roads, buildings, elements, seed}), dir);
      },
      py::arg("dir"), py::arg("roads") = 200, py::arg("buildings") = 100, py::arg("elements") = 25,
      py::arg("seed") = 42);
  m.def("load_corpus", &corpus::load, py::arg("workspace"), py::arg("dir"));
  m.def("bench", [](const Workspace& w) {
    py::list out;
    for (const auto& row : corpus::bench(w)) out.append(py::make_tuple(row.name, row.millis, row.rows));
    return out;
  });
}
