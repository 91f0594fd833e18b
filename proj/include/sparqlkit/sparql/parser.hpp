#pragma once

#include <string_view>

#include "sparqlkit/sparql/ast.hpp"

namespace sparqlkit::sparql {

/// Parses the supported SPARQL subset: SELECT/ASK, DISTINCT, COUNT with
/// optional alias, triple blocks (with `;` and `,` abbreviations), FILTER,
/// OPTIONAL, UNION, nested groups, ORDER BY, LIMIT and OFFSET. PREFIX and
/// BASE declarations are accepted and dropped. Keywords are
/// case-insensitive.
///
/// Throws LexError, SyntaxError, or UnsupportedFeature for constructs
/// outside the subset (CONSTRUCT, property paths, blank nodes, ...).
QueryAst parse(std::string_view query_text);

/// Same as parse() but starting from already lexed tokens.
QueryAst parse_tokens(const std::vector<Token>& tokens);

}  // namespace sparqlkit::sparql
