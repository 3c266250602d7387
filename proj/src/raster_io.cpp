#include "rastergraph/raster_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "rastergraph/error.hpp"

namespace rastergraph::raster {

using nlohmann::json;

namespace {

constexpr const char* kGridMember = "geo2:grid";
constexpr const char* kNodataMember = "geo2:nodata";
constexpr const char* kScaleKindMember = "geo2:scaleKind";

[[noreturn]] void structural(const std::string& message) {
  throw ValidationError("CoverageJSON: " + message);
}

const json& member(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) structural("missing \"" + std::string(name) + "\" in " + where);
  return obj.at(name);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) structural(what + " must be a number");
  return v.get<double>();
}

struct Axis {
  std::vector<double> centers;  // as listed
  std::optional<double> spacing;
};

Axis readAxis(const json& axes, const char* name) {
  const json& a = member(axes, name, "domain.axes");
  Axis axis;
  if (a.contains("values")) {
    const json& vals = a.at("values");
    if (!vals.is_array() || vals.empty()) structural(std::string("axis ") + name + " needs a non-empty values array");
    for (const json& v : vals) axis.centers.push_back(number(v, std::string("axis ") + name + " value"));
  } else if (a.contains("start") && a.contains("stop") && a.contains("num")) {
    const double start = number(a.at("start"), "axis start");
    const double stop = number(a.at("stop"), "axis stop");
    const json& num = a.at("num");
    if (!num.is_number_integer() || num.get<long long>() < 1) structural("axis num must be a positive integer");
    const auto n = num.get<std::size_t>();
    if (n == 1) {
      if (start != stop) structural("axis with num 1 needs start == stop");
      axis.centers.push_back(start);
    } else {
      const double step = (stop - start) / static_cast<double>(n - 1);
      for (std::size_t k = 0; k < n; ++k) axis.centers.push_back(start + step * static_cast<double>(k));
      axis.spacing = std::abs(step);
    }
  } else {
    structural(std::string("axis ") + name + " needs values or start/stop/num");
  }
  return axis;
}

// Uniform spacing of the listed centres (absolute value) or an error.
double spacingOf(const Axis& axis, const char* name) {
  const auto& c = axis.centers;
  if (c.size() < 2) structural(std::string("axis ") + name + " has a single value; the cell size is unknown");
  const double step = (c.back() - c.front()) / static_cast<double>(c.size() - 1);
  if (!(step != 0) || !std::isfinite(step)) structural(std::string("axis ") + name + " values must be distinct");
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double d = c[k] - c[k - 1];
    if (std::abs(d - step) > 1e-9 * std::abs(step))
      throw ValidationError(std::string("CoverageJSON: axis ") + name + " is not uniformly spaced");
  }
  return std::abs(step);
}

const json* findRange(const json& doc, std::string& key) {
  const json* ranges = nullptr;
  if (doc.contains("ranges")) ranges = &doc.at("ranges");
  else if (doc.contains("observedProperty") && doc.at("observedProperty").is_object() &&
           doc.at("observedProperty").contains("ranges"))
    ranges = &doc.at("observedProperty").at("ranges");
  if (!ranges) structural("missing \"ranges\"");
  if (!ranges->is_object() || ranges->size() != 1) structural("exactly one range is supported");
  key = ranges->begin().key();
  return &ranges->begin().value();
}

std::string labelText(const json& label) {
  if (label.is_string()) return label.get<std::string>();
  if (label.is_object() && !label.empty()) {
    if (label.contains("en") && label.at("en").is_string()) return label.at("en").get<std::string>();
    if (label.begin()->is_string()) return label.begin()->get<std::string>();
  }
  return {};
}

Scale readScale(const json& doc, const std::string& rangeKey) {
  Scale scale;
  const json* param = nullptr;
  if (doc.contains("parameters") && doc.at("parameters").is_object()) {
    const json& params = doc.at("parameters");
    if (params.contains(rangeKey)) param = &params.at(rangeKey);
    else if (params.size() == 1) param = &params.begin().value();
  }
  if (param) {
    if (param->contains("unit")) {
      const json& unit = param->at("unit");
      if (unit.contains("symbol")) {
        const json& sym = unit.at("symbol");
        scale.unitLabel = sym.is_object() && sym.contains("value") ? labelText(sym.at("value")) : labelText(sym);
      }
      if (scale.unitLabel.empty() && unit.contains("label")) scale.unitLabel = labelText(unit.at("label"));
    }
    if (scale.unitLabel.empty() && param->contains("observedProperty") &&
        param->at("observedProperty").contains("label"))
      scale.unitLabel = labelText(param->at("observedProperty").at("label"));
    if (param->contains(kNodataMember)) {
      const json& nd = param->at(kNodataMember);
      scale.nodata = nd.is_null() ? std::numeric_limits<double>::quiet_NaN() : number(nd, kNodataMember);
    }
    if (param->contains(kScaleKindMember)) {
      const json& kind = param->at(kScaleKindMember);
      if (!kind.is_string()) structural("geo2:scaleKind must be a string");
      scale.kind = parseScaleKind(kind.get<std::string>());
    }
  } else {
    const json* op = doc.contains("observedProperty") ? &doc.at("observedProperty") : nullptr;
    if (op && op->contains("label")) scale.unitLabel = labelText(op->at("label"));
    if (scale.unitLabel.empty()) scale.unitLabel = rangeKey;
  }
  return scale;
}

}  // namespace

Raster parseCoverageJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("CoverageJSON: ") + e.what());
  }
  if (!doc.is_object()) structural("document must be an object");
  if (member(doc, "type", "document") != "Coverage") structural("type must be \"Coverage\"");
  const json& domain = member(doc, "domain", "document");
  if (member(domain, "domainType", "domain") != "Grid") structural("domainType must be \"Grid\"");
  const json& axes = member(domain, "axes", "domain");
  const Axis xAxis = readAxis(axes, "x");
  const Axis yAxis = readAxis(axes, "y");

  std::string rangeKey;
  const json& range = *findRange(doc, rangeKey);
  if (member(range, "type", "range") != "NdArray") structural("range type must be \"NdArray\"");
  std::vector<std::string> axisNames{"y", "x"};
  if (range.contains("axisNames")) {
    try {
      axisNames = range.at("axisNames").get<std::vector<std::string>>();
    } catch (const json::exception&) {
      structural("axisNames must be a list of strings");
    }
  }
  const bool yFirst = axisNames == std::vector<std::string>{"y", "x"};
  if (!yFirst && axisNames != std::vector<std::string>{"x", "y"})
    structural("axisNames must be [\"y\",\"x\"] or [\"x\",\"y\"]");

  const std::size_t nCols = xAxis.centers.size();
  const std::size_t nRows = yAxis.centers.size();
  const json& values = member(range, "values", "range");
  if (!values.is_array()) structural("range values must be an array");
  if (range.contains("shape")) {
    std::vector<std::size_t> shape;
    try {
      shape = range.at("shape").get<std::vector<std::size_t>>();
    } catch (const json::exception&) {
      structural("shape must be a list of non-negative integers");
    }
    const std::vector<std::size_t> expected = yFirst ? std::vector{nRows, nCols} : std::vector{nCols, nRows};
    if (shape.size() != 2 || shape != expected) {
      std::ostringstream msg;
      msg << "shape mismatch: axes have " << nCols << " x values and " << nRows << " y values, shape is [";
      for (std::size_t k = 0; k < shape.size(); ++k) msg << (k ? "," : "") << shape[k];
      msg << "]";
      throw ValidationError("CoverageJSON: " + msg.str());
    }
  }
  if (values.size() != nCols * nRows)
    throw ValidationError("CoverageJSON: shape mismatch: " + std::to_string(values.size()) +
                          " range values for a " + std::to_string(nCols) + "x" + std::to_string(nRows) + " grid");

  Scale scale = readScale(doc, rangeKey);

  double originX = 0, originY = 0, cellWidth = 0, cellHeight = 0;
  if (domain.contains(kGridMember)) {
    const json& g = domain.at(kGridMember);
    originX = number(member(g, "originX", kGridMember), "originX");
    originY = number(member(g, "originY", kGridMember), "originY");
    cellWidth = number(member(g, "cellWidth", kGridMember), "cellWidth");
    cellHeight = number(member(g, "cellHeight", kGridMember), "cellHeight");
  } else {
    cellWidth = xAxis.spacing ? *xAxis.spacing : spacingOf(xAxis, "x");
    cellHeight = yAxis.spacing ? *yAxis.spacing : spacingOf(yAxis, "y");
    originX = std::min(xAxis.centers.front(), xAxis.centers.back()) - cellWidth / 2;
    originY = std::min(yAxis.centers.front(), yAxis.centers.back()) - cellHeight / 2;
  }

  const bool xAscending = nCols < 2 || xAxis.centers.back() > xAxis.centers.front();
  const bool yAscending = nRows < 2 || yAxis.centers.back() > yAxis.centers.front();
  std::vector<double> cells(nCols * nRows);
  for (std::size_t a = 0; a < nRows; ++a) {
    for (std::size_t b = 0; b < nCols; ++b) {
      const std::size_t src = yFirst ? a * nCols + b : b * nRows + a;
      const json& v = values[src];
      double value;
      if (v.is_null()) value = scale.nodata;
      else value = number(v, "range value");
      const std::size_t i = xAscending ? b : nCols - 1 - b;
      const std::size_t j = yAscending ? a : nRows - 1 - a;
      cells[j * nCols + i] = value;
    }
  }
  return Raster(originX, originY, cellWidth, cellHeight, nCols, nRows, std::move(cells), std::move(scale));
}

std::string writeCoverageJson(const Raster& r) {
  json xs = json::array(), ys = json::array();
  for (std::size_t i = 0; i < r.nCols(); ++i) xs.push_back(r.cellCenter(i, 0).x);
  for (std::size_t j = 0; j < r.nRows(); ++j) ys.push_back(r.cellCenter(0, j).y);
  json values = json::array();
  for (double v : r.values()) {
    if (r.scale().isNodata(v)) values.push_back(nullptr);
    else values.push_back(v);
  }
  const std::string key = "values";
  json param = {{"type", "Parameter"},
                {"observedProperty", {{"label", {{"en", r.scale().unitLabel}}}}},
                {"unit", {{"symbol", r.scale().unitLabel}}},
                {kScaleKindMember, std::string(scaleKindName(r.scale().kind))}};
  if (std::isnan(r.nodata())) param[kNodataMember] = nullptr;
  else param[kNodataMember] = r.nodata();

  json doc = {
      {"type", "Coverage"},
      {"domain",
       {{"type", "Domain"},
        {"domainType", "Grid"},
        {"axes", {{"x", {{"values", xs}}}, {"y", {{"values", ys}}}}},
        {kGridMember,
         {{"originX", r.originX()},
          {"originY", r.originY()},
          {"cellWidth", r.cellWidth()},
          {"cellHeight", r.cellHeight()}}}}},
      {"parameters", {{key, param}}},
      {"ranges",
       {{key,
         {{"type", "NdArray"},
          {"dataType", "float"},
          {"axisNames", {"y", "x"}},
          {"shape", {r.nRows(), r.nCols()}},
          {"values", values}}}}}};
  return doc.dump();
}

// ---- ESRI ASCII grid ------------------------------------------------------------

namespace {

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 0;

  bool next(std::string_view& out) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      out = text.substr(pos, end - pos);
      pos = end + 1;
      ++line;
      if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
      if (out.find_first_not_of(" \t") != std::string_view::npos) return true;
    }
    return false;
  }
};

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == ',')) ++k;
    std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != ',') ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

std::optional<double> parseNumber(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void appendShortest(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

Raster parseAscGrid(std::string_view text) {
  LineReader reader{text};
  std::map<std::string, double> header;
  std::string_view line;
  bool haveLine = false;
  while ((haveLine = reader.next(line))) {
    auto toks = tokens(line);
    if (toks.empty() || !std::isalpha(static_cast<unsigned char>(toks[0][0]))) break;
    if (toks.size() != 2)
      throw ParseError("ASC header line must be '<key> <value>'", reader.line);
    const std::string key = lower(toks[0]);
    static const char* known[] = {"ncols", "nrows", "xllcorner", "yllcorner", "xllcenter",
                                  "yllcenter", "cellsize", "nodata_value"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ParseError("unknown ASC header key '" + std::string(toks[0]) + "'", reader.line);
    if (header.count(key)) throw ParseError("duplicate ASC header key '" + key + "'", reader.line);
    auto v = parseNumber(toks[1]);
    if (!v) throw ParseError("bad number '" + std::string(toks[1]) + "'", reader.line);
    header[key] = *v;
  }
  auto require = [&](const char* key) {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError(std::string("ASC header lacks ") + key, reader.line);
    return it->second;
  };
  const double ncolsD = require("ncols"), nrowsD = require("nrows");
  if (ncolsD < 1 || nrowsD < 1 || ncolsD != std::floor(ncolsD) || nrowsD != std::floor(nrowsD))
    throw ParseError("ncols and nrows must be positive integers");
  const auto nCols = static_cast<std::size_t>(ncolsD), nRows = static_cast<std::size_t>(nrowsD);
  const double cellsize = require("cellsize");
  double originX, originY;
  if (header.count("xllcorner")) originX = header["xllcorner"];
  else if (header.count("xllcenter")) originX = header["xllcenter"] - cellsize / 2;
  else throw ParseError("ASC header lacks xllcorner");
  if (header.count("yllcorner")) originY = header["yllcorner"];
  else if (header.count("yllcenter")) originY = header["yllcenter"] - cellsize / 2;
  else throw ParseError("ASC header lacks yllcorner");
  Scale scale;
  if (header.count("nodata_value")) scale.nodata = header["nodata_value"];

  std::vector<double> cells(nCols * nRows);
  for (std::size_t row = 0; row < nRows; ++row) {
    if (!haveLine) throw ParseError("expected " + std::to_string(nRows) + " data rows, found " + std::to_string(row), reader.line);
    auto toks = tokens(line);
    if (toks.size() != nCols)
      throw ParseError("row has " + std::to_string(toks.size()) + " values, expected " + std::to_string(nCols),
                       reader.line);
    const std::size_t j = nRows - 1 - row;
    for (std::size_t i = 0; i < nCols; ++i) {
      auto v = parseNumber(toks[i]);
      if (!v) throw ParseError("bad number '" + std::string(toks[i]) + "'", reader.line);
      cells[j * nCols + i] = *v;
    }
    haveLine = reader.next(line);
  }
  if (haveLine) throw ParseError("more data rows than nrows", reader.line);
  try {
    return Raster(originX, originY, cellsize, cellsize, nCols, nRows, std::move(cells), std::move(scale));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("ASC: ") + e.what());
  }
}

std::string writeAscGrid(const Raster& r) {
  if (r.cellWidth() != r.cellHeight()) throw ValidationError("ASC grids need square cells");
  std::string out;
  auto field = [&](const char* key, double v) {
    out += key;
    out += ' ';
    appendShortest(out, v);
    out += '\n';
  };
  field("ncols", static_cast<double>(r.nCols()));
  field("nrows", static_cast<double>(r.nRows()));
  field("xllcorner", r.originX());
  field("yllcorner", r.originY());
  field("cellsize", r.cellWidth());
  if (std::isnan(r.nodata())) throw ValidationError("ASC cannot encode a NaN NODATA value");
  field("NODATA_value", r.nodata());
  for (std::size_t row = 0; row < r.nRows(); ++row) {
    const std::size_t j = r.nRows() - 1 - row;
    for (std::size_t i = 0; i < r.nCols(); ++i) {
      if (i) out += ' ';
      appendShortest(out, r.at(i, j));
    }
    out += '\n';
  }
  return out;
}

// ---- hex WKB ----------------------------------------------------------------------

namespace {

void putU16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v & 0xff));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}

void putF64(std::vector<std::uint8_t>& b, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int k = 0; k < 8; ++k) b.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
}

struct ByteReader {
  const std::vector<std::uint8_t>& b;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > b.size()) throw ParseError("raster WKB is truncated");
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(b[pos] | (b[pos + 1] << 8));
    pos += 2;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[pos + k]) << (8 * k);
    pos += 8;
    return std::bit_cast<double>(bits);
  }
};

}  // namespace

std::string writeRasterHexWkb(const Raster& r) {
  if (r.nCols() > 0xffff || r.nRows() > 0xffff)
    throw ValidationError("raster WKB supports at most 65535 columns and rows");
  std::vector<std::uint8_t> b;
  b.reserve(61 + 8 * r.size());
  putU16(b, 0);
  putU16(b, 1);
  putF64(b, r.cellWidth());
  putF64(b, r.cellHeight());
  putF64(b, r.originX());
  putF64(b, r.originY());
  putU16(b, static_cast<std::uint16_t>(r.nCols()));
  putU16(b, static_cast<std::uint16_t>(r.nRows()));
  putF64(b, r.nodata());
  for (double v : r.values()) putF64(b, v);
  static const char* digits = "0123456789ABCDEF";
  std::string out;
  out.reserve(b.size() * 2);
  for (std::uint8_t byte : b) {
    out += digits[byte >> 4];
    out += digits[byte & 0xf];
  }
  return out;
}

Raster parseRasterHexWkb(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParseError("raster WKB hex has an odd number of digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::vector<std::uint8_t> b(hex.size() / 2);
  for (std::size_t k = 0; k < b.size(); ++k) {
    const int hi = nibble(hex[2 * k]), lo = nibble(hex[2 * k + 1]);
    if (hi < 0 || lo < 0) throw ParseError("raster WKB contains a non-hex character");
    b[k] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  ByteReader in{b};
  if (in.u16() != 0) throw ParseError("unsupported raster WKB version");
  if (in.u16() != 1) throw ParseError("raster WKB must have exactly one band");
  const double cw = in.f64(), ch = in.f64(), ox = in.f64(), oy = in.f64();
  const std::size_t nCols = in.u16(), nRows = in.u16();
  Scale scale;
  scale.nodata = in.f64();
  const std::size_t n = nCols * nRows;
  if (b.size() - in.pos != 8 * n)
    throw ParseError("raster WKB length does not match its " + std::to_string(nCols) + "x" +
                     std::to_string(nRows) + " grid");
  std::vector<double> values(n);
  for (double& v : values) v = in.f64();
  try {
    return Raster(ox, oy, cw, ch, nCols, nRows, std::move(values), std::move(scale));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("raster WKB: ") + e.what());
  }
}

}  // namespace rastergraph::raster
