#pragma once

#include <map>
#include <string>
#include <string_view>

#include "rastergraph/rdf.hpp"

namespace rastergraph::rdf {

/// Parses N-Triples extended with `@prefix p: <iri> .` declarations, prefixed
/// names, the `a` keyword, `;` and `,` continuation lists, typed and
/// language-tagged literals, and bare numeric/boolean literals. Blank-node
/// labels are scoped to one document.
///
/// Throws ParseError (with line and column) on malformed input and
/// ValidationError for statements with a literal subject.
Graph parseRdfDocument(std::string_view text);

/// Parses into an existing graph; returns the number of new triples.
std::size_t parseRdfDocumentInto(std::string_view text, Graph& graph);

/// One N-Triples line per triple, in insertion order.
std::string toNTriples(const Graph& graph);

/// Prefixes understood by the query language and RDF reader without a
/// declaration: geo, geof, geo2, ex, ear, rdf, rdfs, xsd, uom, om.
const std::map<std::string, std::string>& defaultPrefixes();

}  // namespace rastergraph::rdf
