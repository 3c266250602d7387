#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "rastergraph/error.hpp"
#include "rastergraph/raster.hpp"
#include "rastergraph/raster_io.hpp"

using namespace rastergraph;
using namespace rastergraph::raster;

namespace {

constexpr double ND = -9999;

Raster A() { return Raster(0, 0, 1, 1, 2, 2, {1, 2, 3, 4}); }

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Raster randomRaster(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 9);
  std::uniform_real_distribution<double> v(-1e6, 1e6), o(-1e5, 1e5), c(0.001, 500);
  const std::size_t nc = dim(rng), nr = dim(rng);
  std::vector<double> vals(nc * nr);
  Scale s;
  s.nodata = rng() % 5 == 0 ? std::nan("") : -9999;
  s.unitLabel = rng() % 2 ? "m" : "cm";
  for (auto& x : vals) x = rng() % 7 == 0 ? s.nodata : v(rng);
  return Raster(o(rng), o(rng), c(rng), c(rng), nc, nr, vals, s);
}

}  // namespace

TEST(Raster, DomainRect) {
  EXPECT_EQ(A().domainRect(), (geom::Rectangle{0, 0, 2, 2}));
  EXPECT_EQ(Raster(-10, 40, 5, 10, 1, 1, {0}).domainRect(), (geom::Rectangle{-10, 40, -5, 50}));
}

TEST(Raster, ConstructorValidates) {
  EXPECT_THROW(Raster(0, 0, 0, 1, 1, 1, {1}), ValidationError);
  EXPECT_THROW(Raster(0, 0, 1, 1, 2, 2, {1, 2, 3}), ValidationError);
  EXPECT_THROW(Raster(0, 0, 1, 1, 1, 1, {std::nan("")}), ValidationError);
}

TEST(Raster, Cellval) {
  EXPECT_EQ(cellval(A(), 0.5, 0.5), 1);
  EXPECT_EQ(cellval(A(), 1.5, 1.5), 4);
  EXPECT_EQ(cellval(A(), 0.5, 1.5), 3);
  EXPECT_THROW(cellval(A(), 3, 0.5), DomainError);
  // half-open interior edges, closed outer edges
  EXPECT_EQ(cellval(A(), 1, 0.5), 2);
  EXPECT_EQ(cellval(A(), 2, 2), 4);
  EXPECT_EQ(cellval(A(), 0, 0), 1);
}

TEST(Raster, CellvalMatchesCellRectangles) {
  std::mt19937_64 rng(2);
  const Raster r(3, -7, 0.5, 2, 7, 5, std::vector<double>(35, 0));
  std::vector<double> vals(35);
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = double(k);
  const Raster idx = r.withValues(vals);
  std::uniform_real_distribution<double> x(3, 6.5), y(-7, 3);
  for (int k = 0; k < 1000; ++k) {
    const double px = x(rng), py = y(rng);
    // the one cell whose half-open rectangle holds the point
    int found = -1;
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t i = 0; i < 7; ++i) {
        const double x0 = 3 + i * 0.5, y0 = -7 + j * 2.0;
        if (px >= x0 && px < x0 + 0.5 && py >= y0 && py < y0 + 2) found = int(j * 7 + i);
      }
    ASSERT_GE(found, 0);
    EXPECT_EQ(cellval(idx, px, py), found);
  }
}

TEST(Raster, CellsTileDomain) {
  const Raster r(1, 2, 0.3, 0.7, 5, 4, std::vector<double>(20, 1));
  double total = 0;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 5; ++i) {
      const auto c = r.cellRect(i, j);
      total += c.width() * c.height();
      if (i + 1 < 5) {
        EXPECT_EQ(c.xmax, r.cellRect(i + 1, j).xmin);
      }
      if (j + 1 < 4) {
        EXPECT_EQ(c.ymax, r.cellRect(i, j + 1).ymin);
      }
    }
  EXPECT_NEAR(total, 1.5 * 2.8, 1e-12);
  EXPECT_EQ(r.cellRect(4, 3).xmax, r.domainRect().xmax);
  EXPECT_EQ(r.cellRect(4, 3).ymax, r.domainRect().ymax);
}

TEST(Raster, Cellval2) {
  EXPECT_EQ(cellval2(A()), (std::vector<double>{1, 2, 3, 4}));
  EXPECT_EQ(cellval2(Raster(0, 0, 1, 1, 2, 2, {1, ND, 3, ND})), (std::vector<double>{1, 3}));
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const Raster r = randomRaster(rng);
    std::size_t nodata = 0;
    for (double v : r.values()) nodata += r.scale().isNodata(v);
    EXPECT_EQ(cellval2(r).size(), r.size() - nodata);
  }
}

TEST(Raster, ValEq) {
  EXPECT_TRUE(rasterValEq(A(), A()));
  EXPECT_FALSE(rasterValEq(A(), Raster(0, 0, 1, 1, 2, 2, {1, 2, 3, 5})));
  EXPECT_FALSE(rasterValEq(A(), Raster(1, 0, 1, 1, 2, 2, {1, 2, 3, 4})));
  EXPECT_TRUE(rasterValEq(Raster(0, 0, 1, 1, 1, 2, {ND, 1}), Raster(0, 0, 1, 1, 1, 2, {ND, 1})));
  EXPECT_FALSE(rasterValEq(Raster(0, 0, 1, 1, 1, 2, {ND, 1}), Raster(0, 0, 1, 1, 1, 2, {0, 1})));
}

TEST(Raster, AvoidNodata) {
  Scale s;
  EXPECT_NE(avoidNodata(-9999, s), -9999);
  EXPECT_NEAR(avoidNodata(-9999, s), -9999, 1e-9);
  EXPECT_EQ(avoidNodata(3, s), 3);
}

TEST(CoverageJson, ListingOneRejected) {
  try {
    parseCoverageJson(fixture("listing1.json"));
    FAIL() << "expected a shape mismatch";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("shape mismatch"), std::string::npos) << e.what();
  }
}

TEST(CoverageJson, CorrectedListingOne) {
  const Raster r = parseCoverageJson(fixture("listing1_corrected.json"));
  EXPECT_EQ(r.nCols(), 2u);
  EXPECT_EQ(r.nRows(), 2u);
  EXPECT_DOUBLE_EQ(r.cellWidth(), 5);
  EXPECT_DOUBLE_EQ(r.cellHeight(), 10);
  EXPECT_EQ(r.values(), (std::vector<double>{0.5, 0.6, 0.4, 0.6}));
  EXPECT_EQ(r.domainRect(), (geom::Rectangle{-12.5, 35, -2.5, 55}));
  EXPECT_EQ(r.scale().unitLabel, "FloodAT");
  EXPECT_EQ(parseCoverageJson(writeCoverageJson(r)), r);
}

TEST(CoverageJson, NodataAsNullAndRoundTrip) {
  const Raster r(0, 0, 1, 1, 2, 2, {1, ND, 3, 4});
  const std::string doc = writeCoverageJson(r);
  EXPECT_NE(doc.find("null"), std::string::npos);
  EXPECT_EQ(parseCoverageJson(doc), r);
  EXPECT_EQ(parseCoverageJson(writeCoverageJson(A())), A());
}

TEST(CoverageJson, PlainAxesWithoutExtensions) {
  const std::string doc = R"({"type":"Coverage","domain":{"type":"Domain","domainType":"Grid",
    "axes":{"x":{"start":0.5,"stop":2.5,"num":3},"y":{"values":[15,5]}}},
    "ranges":{"depth":{"type":"NdArray","axisNames":["y","x"],"shape":[2,3],"values":[1,2,3,4,null,6]}}})";
  const Raster r = parseCoverageJson(doc);
  EXPECT_EQ(r.domainRect(), (geom::Rectangle{0, 0, 3, 20}));
  // first listed row is y=15, which is the top row
  EXPECT_EQ(cellval(r, 0.5, 15), 1);
  EXPECT_EQ(cellval(r, 2.5, 5), 6);
  EXPECT_TRUE(r.isNodataAt(1, 0));
  EXPECT_EQ(r.scale().unitLabel, "depth");
}

TEST(CoverageJson, StructuralErrors) {
  EXPECT_THROW(parseCoverageJson("{not json"), ParseError);
  EXPECT_THROW(parseCoverageJson(R"({"type":"Coverage"})"), ValidationError);
  const std::string uneven = R"({"type":"Coverage","domain":{"type":"Domain","domainType":"Grid",
    "axes":{"x":{"values":[0,1,3]},"y":{"values":[0,1]}}},
    "ranges":{"v":{"type":"NdArray","axisNames":["y","x"],"shape":[2,3],"values":[1,2,3,4,5,6]}}})";
  EXPECT_THROW(parseCoverageJson(uneven), ValidationError);
}

TEST(CoverageJson, RandomRoundTripsBitExact) {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 100; ++k) {
    const Raster r = randomRaster(rng);
    EXPECT_EQ(parseCoverageJson(writeCoverageJson(r)), r);
  }
}

TEST(AscGrid, LayoutAndNodata) {
  const Raster r = parseAscGrid("ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -9999\n3 4\n1 2\n");
  EXPECT_TRUE(rasterValEq(r, A()));
  const Raster n = parseAscGrid("NCOLS 2\nNROWS 1\nXLLCORNER 0\nYLLCORNER 0\nCELLSIZE 1\nNODATA_VALUE -9999\n-9999 5\n");
  EXPECT_TRUE(n.isNodataAt(0, 0));
  EXPECT_EQ(n.at(1, 0), 5);
}

TEST(AscGrid, ShapeErrorsCarryLines) {
  try {
    parseAscGrid("ncols 3\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n1 2 3\n4 5\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
  }
  EXPECT_THROW(parseAscGrid("ncols 2\nxllcorner 0\n"), ParseError);
}

TEST(AscGrid, ThroughCoverageJsonEqualsDirectParse) {
  const std::string text = fixture("flood_small.asc");
  const Raster direct = parseAscGrid(text);
  EXPECT_EQ(parseCoverageJson(writeCoverageJson(direct)), direct);
  EXPECT_EQ(parseAscGrid(writeAscGrid(direct)), direct);
}

TEST(HexWkb, RoundTripAndDeterminism) {
  EXPECT_EQ(parseRasterHexWkb(writeRasterHexWkb(A())), A());
  const Raster one(0, 0, 1, 1, 1, 1, {0});
  const std::string hex = writeRasterHexWkb(one);
  EXPECT_EQ(hex, writeRasterHexWkb(one));
  EXPECT_EQ(hex.substr(0, 8), "00000100");
  // 2+2+8*4+2+2+8 header bytes plus one value
  EXPECT_EQ(hex.size(), 2u * (48 + 8));
  EXPECT_NE(writeRasterHexWkb(A()), writeRasterHexWkb(Raster(0, 0, 1, 1, 2, 2, {1, 2, 3, 5})));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    Raster r = randomRaster(rng);
    Raster back = parseRasterHexWkb(writeRasterHexWkb(r));
    EXPECT_TRUE(rasterValEq(back, r));
    EXPECT_EQ(writeRasterHexWkb(back), writeRasterHexWkb(r));
  }
}

TEST(HexWkb, ReadErrors) {
  EXPECT_THROW(parseRasterHexWkb("00"), ParseError);
  EXPECT_THROW(parseRasterHexWkb("ZZ"), ParseError);
  std::string hex = writeRasterHexWkb(A());
  hex[1] = '1';  // version 1
  EXPECT_THROW(parseRasterHexWkb(hex), ParseError);
}
