// Runs every registered cellwise raster function against the per-cell oracle.
#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rastergraph/evaluator.hpp"
#include "rastergraph/vocab.hpp"

namespace oracle {

struct AlgebraReport {
  std::vector<std::string> functions;
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

inline AlgebraReport checkAlgebra(std::size_t trials, std::uint64_t seed) {
  namespace ev = rastergraph::eval;
  const std::string geo2(rastergraph::vocab::kGeo2);
  const auto& registry = ev::FunctionRegistry::builtins();
  rastergraph::rdf::Graph empty;
  ev::Coercer coercer(empty);
  std::mt19937_64 rng(seed);
  AlgebraReport report;

  const std::vector<std::string> binaryOps = {"Plus", "Subtract", "Mult", "Div", "And", "Or", "Xor", "Equals"};
  for (const auto& op : binaryOps) report.functions.push_back("raster" + op);
  for (const auto& op : binaryOps) report.functions.push_back("raster" + op + "Const");
  for (const char* f : {"rasterSmaller", "rasterGreater", "rasterExp", "rasterNot", "rasterInvert", "rasterUnion"})
    report.functions.push_back(f);

  auto call = [&](const std::string& name, std::vector<ev::Value> args) -> std::vector<double> {
    const ev::Function* f = registry.find(geo2 + name);
    if (!f) throw std::runtime_error("not registered: " + name);
    const ev::Value out = f->impl(coercer, args);
    return std::get<ev::RasterPtr>(out)->values();
  };
  auto fail = [&](const std::string& name, std::size_t trial) {
    if (report.failures.size() < 20) report.failures.push_back(name + " (trial " + std::to_string(trial) + ")");
  };
  auto grid = [](const Raster& r, double ox, double oy, double cell) {
    return Raster(ox, oy, cell, cell, 4, 4, r.values(), r.scale());
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = std::make_shared<const Raster>(random4x4(rng));
    const Raster b0 = random4x4(rng);
    // Half the partners sit on a shifted and possibly resized grid.
    auto b = std::make_shared<const Raster>(b0);
    if (rng() % 2) {
      const double cells[] = {0.5, 1, 2};
      b = std::make_shared<const Raster>(grid(b0, (int(rng() % 9) - 4) * 0.5, (int(rng() % 9) - 4) * 0.5, cells[rng() % 3]));
    }
    const double consts[] = {0, 1, 2, -1.5, 0.5, 3, std::round(std::uniform_real_distribution<double>(-4, 4)(rng))};
    const double c = consts[rng() % 7];

    for (const auto& op : binaryOps) {
      ++report.checks;
      if (!sameBits(call("raster" + op, {a, b}), binary(op, *a, *b))) fail("raster" + op, t);
      ++report.checks;
      if (!sameBits(call("raster" + op + "Const", {a, c}), constant(op, *a, c))) fail("raster" + op + "Const", t);
    }
    for (const auto& [name, op] : std::vector<std::pair<std::string, std::string>>{
             {"rasterSmaller", "Smaller"}, {"rasterGreater", "Greater"}, {"rasterExp", "Exp"}}) {
      ++report.checks;
      if (!sameBits(call(name, {a, c}), constant(op, *a, c))) fail(name, t);
    }
    ++report.checks;
    if (!sameBits(call("rasterNot", {a}), unary("Not", *a))) fail("rasterNot", t);
    ++report.checks;
    if (!sameBits(call("rasterInvert", {a}), unary("Invert", *a))) fail("rasterInvert", t);
    ++report.checks;
    const auto same = std::make_shared<const Raster>(b0);
    if (!sameBits(call("rasterUnion", {a, same}), merge(*a, *same))) fail("rasterUnion", t);
  }
  return report;
}

}  // namespace oracle
