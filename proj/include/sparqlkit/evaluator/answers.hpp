#pragma once

#include <set>
#include <string>
#include <variant>

#include "json.hpp"

namespace sparqlkit::evaluator {

/// Answers of one query: a set of bound values (SELECT) or a boolean (ASK).
struct AnswerSet {
  std::variant<std::set<std::string>, bool> value = std::set<std::string>{};

  static AnswerSet of(std::set<std::string> values) { return AnswerSet{std::move(values)}; }
  static AnswerSet boolean(bool b) { return AnswerSet{b}; }

  bool is_boolean() const { return std::holds_alternative<bool>(value); }
  const std::set<std::string>* values() const {
    return std::get_if<std::set<std::string>>(&value);
  }

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

/// Flattens a SPARQL JSON results document: every value bound to a
/// projected variable in any row joins the set; ASK documents become a
/// boolean. Throws EndpointError for documents of neither shape.
AnswerSet answers_from_results(const nlohmann::json& document);

/// JSON array of strings, or a boolean; the dataset/record encoding.
AnswerSet answers_from_json(const nlohmann::json& value);
nlohmann::json to_json(const AnswerSet& answers);

struct F1Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct F1Options {
  /// Score when both answer sets are empty. 1 follows the usual QALD
  /// macro-F1 practice; strict evaluation uses 0.
  double both_empty_score = 1.0;
};

F1Score answer_f1(const AnswerSet& predicted, const AnswerSet& gold,
                  const F1Options& options = {});

}  // namespace sparqlkit::evaluator
