#pragma once

#include <string>

#include "sparqlkit/sparql/ast.hpp"

namespace sparqlkit::sparql {

enum class Style {
  /// Lowercase keywords, single spaces between all tokens, `?` sigils. This
  /// form is the comparison surface for query match and the target text of
  /// every pretraining pair.
  Canonical,
  /// As canonical, but without spaces just inside brackets or before
  /// separators, and with the original variable sigils.
  Compact,
};

std::string serialize(const QueryAst& ast, Style style = Style::Canonical);

/// Canonical serialization of the parse of `query_text`.
std::string canonicalize(std::string_view query_text);

}  // namespace sparqlkit::sparql
