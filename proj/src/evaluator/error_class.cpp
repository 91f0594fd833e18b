#include "sparqlkit/evaluator/error_class.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "sparqlkit/error.hpp"
#include "sparqlkit/evaluator/matching.hpp"
#include "sparqlkit/evaluator/query_match.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/triples.hpp"
#include "sparqlkit/util/strings.hpp"

namespace sparqlkit::evaluator {

using namespace sparqlkit::sparql;

const char* to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::Correct: return "correct";
    case ErrorClass::TripletFlip: return "triplet_flip";
    case ErrorClass::TripletOther: return "triplet_other";
    case ErrorClass::Structural: return "structural";
    case ErrorClass::Unparsable: return "unparsable";
  }
  return "?";
}

ErrorClass error_class_from_string(std::string_view name) {
  const auto lower = util::to_lower(name);
  for (auto c : kAllErrorClasses) {
    if (lower == to_string(c)) return c;
  }
  throw ConfigError("unknown error class '" + std::string(name) + "'");
}

QueryAst skeleton(const QueryAst& normalized) {
  QueryAst out = normalized;
  const TriplePattern placeholder{Term::variable("#"), Term::variable("#"),
                                  Term::variable("#")};
  for_each_block(out.where, [&](TripleBlock& block) {
    for (auto& t : block.triples) t = placeholder;
  });
  return out;
}

namespace {

std::array<Term, 3> sorted_terms(const TriplePattern& t) {
  std::array<Term, 3> terms{t.subject, t.predicate, t.object};
  std::sort(terms.begin(), terms.end());
  return terms;
}

bool rearrangement_matching(const TripleBlock& pred, const TripleBlock& gold) {
  BipartiteGraph edges(pred.triples.size(),
                       std::vector<bool>(gold.triples.size(), false));
  for (std::size_t i = 0; i < pred.triples.size(); ++i) {
    const auto p = sorted_terms(pred.triples[i]);
    for (std::size_t j = 0; j < gold.triples.size(); ++j) {
      edges[i][j] = p == sorted_terms(gold.triples[j]);
    }
  }
  return has_perfect_matching(edges, gold.triples.size());
}

}  // namespace

ErrorClass classify_error(std::string_view pred, std::string_view gold) {
  const QueryAst gold_ast = normalize_for_match(parse_gold(gold));
  QueryAst pred_ast;
  try {
    pred_ast = normalize_for_match(parse(pred));
  } catch (const Error&) {
    return ErrorClass::Unparsable;
  }
  if (pred_ast == gold_ast) return ErrorClass::Correct;
  if (skeleton(pred_ast) != skeleton(gold_ast)) return ErrorClass::Structural;

  std::vector<const TripleBlock*> pred_blocks;
  std::vector<const TripleBlock*> gold_blocks;
  for_each_block(std::as_const(pred_ast).where,
                 [&](const TripleBlock& b) { pred_blocks.push_back(&b); });
  for_each_block(std::as_const(gold_ast).where,
                 [&](const TripleBlock& b) { gold_blocks.push_back(&b); });
  // Equal skeletons: same block count and sizes, same non-triple parts. Any
  // perfect matching therefore contains a non-identity rearrangement,
  // since an all-identity one would make the ASTs equal.
  for (std::size_t b = 0; b < pred_blocks.size(); ++b) {
    if (!rearrangement_matching(*pred_blocks[b], *gold_blocks[b])) {
      return ErrorClass::TripletOther;
    }
  }
  return ErrorClass::TripletFlip;
}

}  // namespace sparqlkit::evaluator
