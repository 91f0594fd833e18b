#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sparqlkit/sparql/ast.hpp"

namespace sparqlkit::sparql {

/// Location of one triple inside a query's pattern tree.
///
/// Steps are consumed from the WHERE group downward: an item index, then for
/// a UNION item the branch index, and finally the triple index once the item
/// is a triple block.
struct TriplePath {
  std::vector<std::uint32_t> steps;

  std::string to_string() const;
  friend bool operator==(const TriplePath&, const TriplePath&) = default;
  friend auto operator<=>(const TriplePath&, const TriplePath&) = default;
};

struct LocatedTriple {
  TriplePath path;
  TriplePattern triple;
};

/// Clears every `;`/`,` abbreviation flag. The triples themselves are
/// already stored in full, so the triple multiset is unchanged.
QueryAst expand_abbreviations(QueryAst ast);

/// True if any triple in the tree is flagged as abbreviated.
bool has_abbreviations(const QueryAst& ast);

/// All triples in depth-first, left-to-right order.
std::vector<LocatedTriple> extract_triples(const QueryAst& ast);

/// Replaces the triple at `path`. Abbreviation flags that no longer hold
/// after the replacement are dropped. Throws InvalidPath.
QueryAst rewrite_triple(QueryAst ast, const TriplePath& path,
                        const TriplePattern& replacement);

/// Visits every triple block in depth-first, left-to-right order.
void for_each_block(const PatternGroup& group,
                    const std::function<void(const TripleBlock&)>& visit);
void for_each_block(PatternGroup& group,
                    const std::function<void(TripleBlock&)>& visit);

}  // namespace sparqlkit::sparql
