#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rastergraph/evaluator.hpp"
#include "rastergraph/workspace.hpp"

namespace rastergraph::corpus {

struct Options {
  std::size_t roads = 200;
  std::size_t buildings = 100;
  std::size_t elementsAtRisk = 25;
  std::uint64_t seed = 42;
};

/// Synthetic hazard scenario over a 20 km square: a 50x50 flood raster (cm)
/// and fire raster (index) on the same 400 m grid, each with NODATA regions,
/// plus roads, buildings and elements at risk with opening hours.
struct Corpus {
  std::string roads;      // GeoJSON
  std::string buildings;  // GeoJSON
  std::string elements;   // GeoJSON
  std::string flood;      // ASC
  std::string fire;       // ASC
};

Corpus generate(const Options& options);

/// Writes the five data files and the four use-case queries (u1.rq .. u4.rq).
void write(const Corpus& corpus, const std::filesystem::path& dir);

/// Ingests the data files of a corpus directory with the expected classes.
void load(Workspace& ws, const std::filesystem::path& dir);

struct UseCase {
  std::string name;
  std::string query;
};
/// The four hazard-analysis queries. The last one declares its point before
/// use and divides by the area of the raster domain.
const std::vector<UseCase>& useCases();

struct BenchRow {
  std::string name;
  double millis = 0;
  std::size_t rows = 0;
  eval::ResultTable result;
};
std::vector<BenchRow> bench(const Workspace& ws);

}  // namespace rastergraph::corpus
