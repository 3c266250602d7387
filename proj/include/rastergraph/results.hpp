#pragma once

#include <string>

#include "rastergraph/evaluator.hpp"

namespace rastergraph::eval {

/// Tab-separated: a header of ?names, then one line per row with N-Triples
/// cells. Unbound cells are empty.
std::string toTsv(const ResultTable& table);

/// SPARQL 1.1 query results JSON. Unbound cells are omitted from a row.
std::string toJson(const ResultTable& table);

}  // namespace rastergraph::eval
