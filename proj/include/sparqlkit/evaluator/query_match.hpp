#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "sparqlkit/sparql/ast.hpp"

namespace sparqlkit::evaluator {

enum class QmMode {
  /// Token sequences with keywords lowercased.
  TextCanonical,
  /// Abbreviation-expanded ASTs, each triple block compared as a set.
  Ast,
  /// As Ast, up to a consistent one-to-one renaming of variables.
  AstAlphaRenamed,
};

const char* to_string(QmMode mode);
/// "text", "ast" or "alpha" (also the full enumerator names). Throws ConfigError.
QmMode qm_mode_from_string(std::string_view name);

/// Expands abbreviations and sorts and dedupes the triples of every block,
/// so that two ASTs compare equal iff they match in Ast mode.
sparql::QueryAst normalize_for_match(sparql::QueryAst ast);

/// Calls `visit` on every variable name in the query: projection, COUNT,
/// triples, FILTER and ORDER BY expressions. Renaming through the reference
/// renames the variable everywhere.
void for_each_variable(sparql::QueryAst& ast,
                       const std::function<void(std::string&)>& visit);

/// True if some bijection between the variables of `a` and `b` makes the
/// normalized ASTs equal.
bool alpha_equivalent(const sparql::QueryAst& a, const sparql::QueryAst& b);

/// Parses a gold query, turning any parse failure into GoldUnparsable.
sparql::QueryAst parse_gold(std::string_view gold);

/// Query Match. An unparsable prediction never matches. Throws
/// GoldUnparsable when `gold` does not parse (does not lex, in text mode).
bool query_match(std::string_view pred, std::string_view gold,
                 QmMode mode = QmMode::Ast);

}  // namespace sparqlkit::evaluator
