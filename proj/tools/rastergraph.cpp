#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rastergraph/corpus.hpp"
#include "rastergraph/error.hpp"
#include "rastergraph/raster_io.hpp"
#include "rastergraph/rdf_io.hpp"
#include "rastergraph/results.hpp"
#include "rastergraph/workspace.hpp"

namespace fs = std::filesystem;
using namespace rastergraph;

namespace {

raster::Raster readRaster(const fs::path& path) {
  const std::string text = readTextFile(path);
  const std::string ext = path.extension().string();
  if (ext == ".asc") return raster::parseAscGrid(text);
  if (ext == ".hex" || ext == ".wkb") return raster::parseRasterHexWkb(text.substr(0, text.find_last_not_of(" \t\r\n") + 1));
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return raster::parseCoverageJson(text);
  if (first != std::string::npos && std::isxdigit(static_cast<unsigned char>(text[first])) &&
      text.find_first_not_of("0123456789abcdefABCDEF \t\r\n") == std::string::npos)
    return raster::parseRasterHexWkb(text.substr(first, text.find_last_not_of(" \t\r\n") + 1 - first));
  return raster::parseAscGrid(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rastergraph: RDF store and GeoSPARQL+ query engine"};
  app.require_subcommand(1);
  std::string store = "rastergraph.nt";
  app.add_option("--store", store, "N-Triples file holding the workspace")->capture_default_str();

  std::string file, classIri, unit, queryText, format = "tsv", to, out, dir;
  std::size_t roads = 200, buildings = 100;
  std::uint64_t seed = 42;

  auto* loadRdf = app.add_subcommand("load-rdf", "Add an N-Triples/Turtle-lite document");
  loadRdf->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* loadGeo = app.add_subcommand("load-geojson", "Add GeoJSON features");
  loadGeo->add_option("file", file)->required()->check(CLI::ExistingFile);
  loadGeo->add_option("--class", classIri, "Class IRI of the features")->required();

  auto* loadAsc = app.add_subcommand("load-asc", "Add an ESRI ASCII grid as a raster feature");
  loadAsc->add_option("file", file)->required()->check(CLI::ExistingFile);
  loadAsc->add_option("--class", classIri, "Class IRI of the raster feature")->required();
  loadAsc->add_option("--unit", unit, "Unit label of the cell values")->required();

  auto* query = app.add_subcommand("query", "Run a SELECT query");
  auto* queryFile = query->add_option("file", file, "Query file")->check(CLI::ExistingFile);
  auto* inlineQuery = query->add_option("-e", queryText, "Query text");
  queryFile->excludes(inlineQuery);
  query->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();

  auto* convert = app.add_subcommand("convert", "Convert a raster between formats");
  convert->add_option("in", file)->required()->check(CLI::ExistingFile);
  convert->add_option("--to", to)->required()->check(CLI::IsMember({"covjson", "asc", "hexwkb"}));
  convert->add_option("out", out)->required();

  auto* gen = app.add_subcommand("gen-corpus", "Write the synthetic hazard corpus");
  gen->add_option("--roads", roads)->capture_default_str();
  gen->add_option("--buildings", buildings)->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("dir", dir)->required();

  auto* bench = app.add_subcommand("bench", "Time the four use-case queries on a corpus");
  bench->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(loadRdf) || app.got_subcommand(loadGeo) || app.got_subcommand(loadAsc)) {
      Workspace ws;
      ws.load(store);
      std::size_t added = 0;
      if (app.got_subcommand(loadRdf)) added = rdf::parseRdfDocumentInto(readTextFile(file), ws.graph);
      else if (app.got_subcommand(loadGeo)) added = ws.ingestGeoJson(readTextFile(file), classIri);
      else added = ws.ingestAscRaster(readTextFile(file), classIri, unit);
      ws.save(store);
      std::cout << added << " triples added, " << ws.graph.size() << " in store\n";
    } else if (app.got_subcommand(query)) {
      if (file.empty() && queryText.empty()) throw Error("query: give a file or -e text");
      if (!file.empty()) queryText = readTextFile(file);
      Workspace ws;
      ws.load(store);
      const eval::ResultTable table = eval::runQuery(ws.graph, queryText);
      std::cout << (format == "json" ? eval::toJson(table) : eval::toTsv(table));
    } else if (app.got_subcommand(convert)) {
      const raster::Raster r = readRaster(file);
      std::string text;
      if (to == "covjson") text = raster::writeCoverageJson(r);
      else if (to == "asc") text = raster::writeAscGrid(r);
      else text = raster::writeRasterHexWkb(r) + "\n";
      writeTextFile(out, text);
    } else if (app.got_subcommand(gen)) {
      corpus::Options o;
      o.roads = roads;
      o.buildings = buildings;
      o.elementsAtRisk = std::max<std::size_t>(5, buildings / 4);
      o.seed = seed;
      corpus::write(corpus::generate(o), dir);
      std::cout << "corpus written to " << dir << "\n";
    } else if (app.got_subcommand(bench)) {
      Workspace ws;
      corpus::load(ws, dir);
      std::printf("%-6s %12s %8s\n", "query", "millis", "rows");
      for (const auto& row : corpus::bench(ws)) std::printf("%-6s %12.1f %8zu\n", row.name.c_str(), row.millis, row.rows);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
