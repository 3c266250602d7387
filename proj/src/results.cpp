#include "rastergraph/results.hpp"

#include <json.hpp>

namespace rastergraph::eval {

std::string toTsv(const ResultTable& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k) out += '\t';
    out += "?" + table.columns[k];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += '\t';
      if (row[k]) out += row[k]->toNTriples();
    }
    out += '\n';
  }
  return out;
}

std::string toJson(const ResultTable& table) {
  nlohmann::ordered_json doc;
  doc["head"]["vars"] = table.columns;
  auto bindings = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k]) continue;
      const rdf::Term& t = *row[k];
      nlohmann::ordered_json cell;
      if (t.isIri()) {
        cell["type"] = "uri";
        cell["value"] = t.value();
      } else if (t.isBlank()) {
        cell["type"] = "bnode";
        cell["value"] = t.value();
      } else {
        cell["type"] = "literal";
        cell["value"] = t.value();
        if (!t.language().empty()) cell["xml:lang"] = t.language();
        else if (!t.datatype().empty()) cell["datatype"] = t.datatype();
      }
      obj[table.columns[k]] = std::move(cell);
    }
    bindings.push_back(std::move(obj));
  }
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump(2) + "\n";
}

}  // namespace rastergraph::eval
