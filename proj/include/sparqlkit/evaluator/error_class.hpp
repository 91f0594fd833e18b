#pragma once

#include <array>
#include <string_view>

#include "sparqlkit/sparql/ast.hpp"

namespace sparqlkit::evaluator {

enum class ErrorClass { Correct, TripletFlip, TripletOther, Structural, Unparsable };

inline constexpr std::array<ErrorClass, 5> kAllErrorClasses = {
    ErrorClass::Correct, ErrorClass::TripletFlip, ErrorClass::TripletOther,
    ErrorClass::Structural, ErrorClass::Unparsable};

const char* to_string(ErrorClass c);  // "correct", "triplet_flip", ...
/// Throws ConfigError.
ErrorClass error_class_from_string(std::string_view name);

/// TripletFlip and TripletOther together form the triplet errors.
inline bool is_triplet_error(ErrorClass c) {
  return c == ErrorClass::TripletFlip || c == ErrorClass::TripletOther;
}

/// The query with every triple pattern replaced by one placeholder, after
/// match normalization. Everything else is kept as is.
sparql::QueryAst skeleton(const sparql::QueryAst& normalized);

/// Decision procedure over a prediction and its gold query:
///  1. pred does not parse: Unparsable
///  2. AST query match: Correct
///  3. skeletons differ: Structural
///  4. triples of each block admit a perfect matching in which every pred
///     triple is a rearrangement of its gold partner: TripletFlip
///  5. otherwise: TripletOther
/// Throws GoldUnparsable.
ErrorClass classify_error(std::string_view pred, std::string_view gold);

}  // namespace sparqlkit::evaluator
